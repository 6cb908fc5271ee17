// Copyright 2026 The qrep Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>

#include "qrep/timeline.hpp"

namespace qrep {

LineTopology LineTopology::with_repeaters(const std::vector<Rational>& repeaters) {
  LineTopology t;
  t.positions.push_back(Rational(0));
  t.positions.insert(t.positions.end(), repeaters.begin(), repeaters.end());
  t.positions.push_back(Rational(1));
  t.validate();
  return t;
}

Rational LineTopology::distance(int a, int b) const {
  return abs(positions.at(static_cast<std::size_t>(a)) - positions.at(static_cast<std::size_t>(b)));
}

Rational LineTopology::offset(int node) const {
  if (notify_offsets.empty()) return Rational(0);
  return notify_offsets.at(static_cast<std::size_t>(node));
}

std::string LineTopology::node_name(int node) const {
  if (node == 0) return "A";
  if (node == node_b()) return "B";
  return "C" + std::to_string(node);
}

void LineTopology::validate(bool unit_length) const {
  if (positions.size() < 2) throw TimelineError("topology needs the two end nodes");
  if (positions.front() != Rational(0)) throw TimelineError("first node must sit at position 0");
  if (unit_length && positions.back() != Rational(1)) throw TimelineError("last node must sit at position 1");
  for (std::size_t i = 1; i < positions.size(); ++i) {
    if (!(positions[i - 1] < positions[i])) {
      throw TimelineError("positions must be strictly increasing (" + positions[i - 1].str() + " then " +
                          positions[i].str() + ")");
    }
  }
  if (!notify_offsets.empty()) {
    if (notify_offsets.size() != positions.size()) throw TimelineError("one notify offset per node required");
    for (const auto& o : notify_offsets) {
      if (o < Rational(0)) throw TimelineError("notify offsets must be nonnegative");
    }
  }
}

std::string_view to_string(EventKind kind) {
  switch (kind) {
    case EventKind::photon_transit:
      return "photon_transit";
    case EventKind::classical_message:
      return "classical_message";
    case EventKind::entanglement_confirm:
      return "entanglement_confirm";
    case EventKind::local_op:
      return "local_op";
    case EventKind::wait:
      return "wait";
  }
  return "unknown";
}

EventGraph::EventGraph(LineTopology topology) : topology_(std::move(topology)) { topology_.validate(false); }

int EventGraph::add(EventKind kind, int from, int to, Rational duration, std::vector<int> deps, std::string label) {
  const int nodes = static_cast<int>(topology_.positions.size());
  if (from < 0 || from >= nodes || to < 0 || to >= nodes) throw TimelineError("event node index out of range");
  const int id = static_cast<int>(events_.size());
  for (int d : deps) {
    if (d < 0 || d >= id) throw TimelineError("event dependency must refer to an earlier event");
  }
  Event e;
  e.id = id;
  e.kind = kind;
  e.from = from;
  e.to = to;
  e.release = topology_.offset(from);
  e.duration = duration;
  e.depends_on = std::move(deps);
  e.label = std::move(label);
  events_.push_back(std::move(e));
  return id;
}

int EventGraph::photon(int source, int target, std::vector<Payload> payload, std::vector<int> deps) {
  if (source == target) throw TimelineError("entanglement generation needs two distinct nodes");
  int id = add(EventKind::photon_transit, source, target, topology_.distance(source, target), std::move(deps), "photons");
  events_.back().payload = std::move(payload);
  return id;
}

int EventGraph::message(int from, int to, std::vector<int> deps, std::string label, bool carries_confirm) {
  int id = add(EventKind::classical_message, from, to, topology_.distance(from, to), std::move(deps), std::move(label));
  events_.back().carries_confirm = carries_confirm;
  return id;
}

int EventGraph::confirm(int from, int to, std::vector<int> deps) {
  return add(EventKind::entanglement_confirm, from, to, topology_.distance(from, to), std::move(deps), "confirm");
}

int EventGraph::local_op(int node, std::vector<int> deps, std::string label) {
  return add(EventKind::local_op, node, node, Rational(0), std::move(deps), std::move(label));
}

int EventGraph::wait(int node, const Rational& duration, std::vector<int> deps) {
  if (duration < Rational(0)) throw TimelineError("wait duration must be nonnegative");
  return add(EventKind::wait, node, node, duration, std::move(deps), "wait");
}

Schedule EventGraph::schedule(std::string variant) const {
  Schedule s;
  s.variant = std::move(variant);
  s.topology = topology_;
  s.events = events_;
  s.completion = Rational(0);
  for (auto& e : s.events) {
    Rational start = e.release;
    for (int d : e.depends_on) start = max(start, s.events[static_cast<std::size_t>(d)].end);
    e.start = start;
    e.end = start + e.duration;
    s.completion = max(s.completion, e.end);
  }
  return s;
}

EntLink ent_gen(EventGraph& graph, int a, int b, int photon_source, std::vector<Payload> payload) {
  if (a == b) throw TimelineError("entanglement generation needs two distinct nodes");
  if (photon_source != a && photon_source != b) throw TimelineError("photon source must be one of the pair");
  EntLink link;
  link.source = photon_source;
  link.receiver = photon_source == a ? b : a;
  link.photon = graph.photon(link.source, link.receiver, std::move(payload));
  return link;
}

std::vector<int> critical_path(const Schedule& schedule) {
  std::vector<int> path;
  if (schedule.events.empty()) return path;
  // Last event finishing at the completion time.
  int cur = -1;
  for (const auto& e : schedule.events) {
    if (e.end == schedule.completion && e.duration > Rational(0)) cur = e.id;
  }
  while (cur >= 0) {
    const Event& e = schedule.events[static_cast<std::size_t>(cur)];
    if (e.duration > Rational(0)) path.push_back(cur);
    int next = -1;
    for (int d : e.depends_on) {
      const Event& dep = schedule.events[static_cast<std::size_t>(d)];
      if (dep.end == e.start && (next < 0 || dep.duration > Rational(0))) next = d;
    }
    cur = next;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace qrep
