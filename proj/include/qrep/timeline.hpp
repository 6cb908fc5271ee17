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

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qrep/rational.hpp"

namespace qrep {

class TimelineError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Nodes on a line: A at index 0, repeaters 1..n, B at index n+1.
/// Positions are fractions of L; times come out in units of L/c.
struct LineTopology {
  std::vector<Rational> positions;
  /// Per-node delay before a node learns that the protocol started.
  std::vector<Rational> notify_offsets;

  static LineTopology with_repeaters(const std::vector<Rational>& repeaters);

  int repeaters() const { return static_cast<int>(positions.size()) - 2; }
  int node_b() const { return static_cast<int>(positions.size()) - 1; }
  Rational distance(int a, int b) const;
  Rational offset(int node) const;
  std::string node_name(int node) const;
  /// Strictly increasing from 0; when `unit_length`, ends at 1.
  void validate(bool unit_length = true) const;
};

enum class EventKind { photon_transit, classical_message, entanglement_confirm, local_op, wait };

std::string_view to_string(EventKind kind);

/// What an entanglement link is consumed for; priced by cost_report.
enum class Payload { qudit_a, qudit_b, control, group, clifford, bit };

struct Event {
  int id = 0;
  EventKind kind = EventKind::local_op;
  int from = 0;
  int to = 0;
  Rational release;
  Rational duration;
  std::vector<int> depends_on;
  std::string label;
  bool carries_confirm = false;
  std::vector<Payload> payload;  // photon events only
  Rational start;
  Rational end;
};

struct Schedule {
  std::string variant;
  LineTopology topology;
  std::vector<Event> events;
  Rational completion;
};

/// Builds an event DAG. Event ids are assigned in insertion order and
/// dependencies must refer to earlier events.
class EventGraph {
 public:
  explicit EventGraph(LineTopology topology);

  int photon(int source, int target, std::vector<Payload> payload, std::vector<int> deps = {});
  int message(int from, int to, std::vector<int> deps, std::string label, bool carries_confirm = false);
  int confirm(int from, int to, std::vector<int> deps);
  int local_op(int node, std::vector<int> deps, std::string label);
  int wait(int node, const Rational& duration, std::vector<int> deps);

  const LineTopology& topology() const { return topology_; }
  Schedule schedule(std::string variant) const;

 private:
  int add(EventKind kind, int from, int to, Rational duration, std::vector<int> deps, std::string label);

  LineTopology topology_;
  std::vector<Event> events_;
};

/// First half of entanglement generation: photons from `source` to the other
/// node. The confirmation travels back and is either merged into a message by
/// the caller or added with EventGraph::confirm.
struct EntLink {
  int photon = -1;
  int source = 0;
  int receiver = 0;
};

EntLink ent_gen(EventGraph& graph, int a, int b, int photon_source, std::vector<Payload> payload);

/// Catalog variant such as P3.2(1/5,3/5). P9 stores its repeater count in `stub_n`.
struct ProtocolVariant {
  std::string family;
  std::vector<Rational> positions;
  int stub_n = -1;

  std::string name() const;
  bool operator==(const ProtocolVariant&) const = default;
};

const std::vector<std::string>& variant_catalog();
/// Repeaters required by a family; P9 returns -1 (taken from stub_n).
int family_repeaters(const std::string& family);
std::vector<Rational> default_positions(const std::string& family);

/// Accepts "P3.2(1/5,3/5)", "3.2", "P1", "P9(n=1)"; omitted positions take defaults.
ProtocolVariant parse_variant(std::string_view text);
/// Canonical family name for "3.2", "p3.2" or "P3.2".
std::string normalize_family(std::string_view text);

Schedule build_schedule(const ProtocolVariant& variant, const LineTopology& topology);
Schedule build_schedule(const ProtocolVariant& variant);

/// Round-trip relay: both inputs are teleported hop by hop to node `middle`,
/// processed there and returned along the same chain.
Schedule build_relay_roundtrip(const LineTopology& topology, int middle, std::string variant = "relay");
/// One-way hop-by-hop teleportation from A to B.
Schedule build_one_way_relay(const LineTopology& topology);

Rational schedule_formula_p32(const Rational& x1, const Rational& x2);
/// Case analysis over the three regions of the P2.2 objective.
Rational schedule_formula_p22(const Rational& x1, const Rational& x2);
/// Region label 1, 2 or 3 used by schedule_formula_p22.
int p22_region(const Rational& x1, const Rational& x2);

/// Longest dependency chain realizing the completion time; zero-duration
/// events are omitted.
std::vector<int> critical_path(const Schedule& schedule);

struct CostParams {
  int d_a = 2;
  int d_b = 2;
  int n_terms = 2;
  int group_order = 4;
  int redundancy = 1;

  bool operator==(const CostParams&) const = default;
};

struct LinkCost {
  int a = 0;
  int b = 0;
  double ebits = 0.0;
};

struct CostReport {
  Rational total_time;
  double ebits = 0.0;
  double cbits = 0.0;
  std::vector<LinkCost> entanglement_links;
};

CostReport cost_report(const Schedule& schedule, const CostParams& params);
CostReport cost_report(const ProtocolVariant& variant, const CostParams& params);

/// Static spacetime diagram, byte-identical for identical input.
std::string emit_spacetime_svg(const Schedule& schedule);

}  // namespace qrep
