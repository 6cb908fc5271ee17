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
#include <set>

#include "qrep/circuits.hpp"

namespace qrep {

double ResourceLog::cbits() const {
  double s = 0.0;
  for (const auto& m : messages) s += m.cbits;
  return s;
}

int ResourceLog::rounds() const {
  std::vector<int> depth(messages.size(), 1);
  int best = 0;
  for (std::size_t i = 0; i < messages.size(); ++i) {
    for (int d : messages[i].depends_on) {
      if (d < 0 || static_cast<std::size_t>(d) >= i) throw ProtocolError("message dependency must point backwards");
      depth[i] = std::max(depth[i], depth[static_cast<std::size_t>(d)] + 1);
    }
    best = std::max(best, depth[i]);
  }
  return best;
}

bool ResourceLog::single_parallel_round() const {
  if (rounds() != 1) return false;
  std::set<std::pair<std::string, std::string>> dirs;
  for (const auto& m : messages) dirs.insert({m.from, m.to});
  for (const auto& [from, to] : dirs) {
    if (!dirs.contains({to, from})) return false;
  }
  return !dirs.empty();
}

ExactnessReport verify_exactness(const ProtocolRun& run, const ComplexMatrix& u, const QuditState& input) {
  if (static_cast<std::size_t>(u.rows()) != input.size() || u.rows() != u.cols()) {
    throw DimensionError("unitary does not match input dimension");
  }
  QuditState expected(input.dims, u * input.amplitudes);
  double norm = expected.norm();
  if (norm > 0.0) expected.amplitudes /= norm;

  ExactnessReport rep;
  double total = 0.0;
  for (std::size_t i = 0; i < run.branches.size(); ++i) {
    const Branch& b = run.branches[i];
    total += b.probability;
    double ov = b.output.dims == expected.dims ? overlap(b.output, expected) : 0.0;
    rep.overlaps.push_back(ov);
    if (ov < rep.min_overlap) {
      rep.min_overlap = ov;
      rep.worst_branch = static_cast<int>(i);
    }
  }
  if (run.branches.empty()) rep.min_overlap = 0.0;
  rep.probability_deviation = std::abs(total - 1.0);
  rep.pass = !run.branches.empty() && rep.min_overlap >= 1.0 - kExactnessTol &&
             rep.probability_deviation <= kExactnessTol;
  return rep;
}

}  // namespace qrep
