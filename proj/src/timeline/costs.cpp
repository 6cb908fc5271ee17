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
#include <cmath>

#include "qrep/timeline.hpp"

namespace qrep {
namespace {

double log2_of(int v, const char* what) {
  if (v < 1) throw TimelineError(std::string("missing parameter: ") + what + " must be at least 1");
  return std::log2(static_cast<double>(v));
}

double price(Payload p, const CostParams& c) {
  switch (p) {
    case Payload::qudit_a:
      return log2_of(c.d_a, "d_A");
    case Payload::qudit_b:
      return log2_of(c.d_b, "d_B");
    case Payload::control:
      return log2_of(c.n_terms, "N");
    case Payload::group:
      return log2_of(c.group_order, "|G|");
    case Payload::clifford:
      return 2.0 * log2_of(c.d_a, "d_A");
    case Payload::bit:
      return 1.0;
  }
  return 0.0;
}

}  // namespace

CostReport cost_report(const Schedule& schedule, const CostParams& params) {
  if (params.redundancy < 1) throw TimelineError("redundancy must be at least 1");
  CostReport r;
  r.total_time = schedule.completion;
  for (const auto& e : schedule.events) {
    if (e.kind != EventKind::photon_transit) continue;
    LinkCost link;
    link.a = std::min(e.from, e.to);
    link.b = std::max(e.from, e.to);
    for (Payload p : e.payload) link.ebits += price(p, params);
    link.ebits *= params.redundancy;
    r.ebits += link.ebits;
    r.entanglement_links.push_back(link);
  }
  r.cbits = 2.0 * r.ebits;
  return r;
}

CostReport cost_report(const ProtocolVariant& variant, const CostParams& params) {
  return cost_report(build_schedule(variant), params);
}

}  // namespace qrep
