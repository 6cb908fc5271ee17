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

#include <cmath>
#include <string>

#include "branching.hpp"
#include "qrep/circuits.hpp"

namespace qrep {

using detail::Path;
using detail::Register;
using detail::require_input;
using detail::to_branches;

ProtocolRun run_protocol1(const ComplexMatrix& u, const QuditState& input, int d_a, int d_b) {
  require_input(input, d_a, d_b);
  if (u.rows() != d_a * d_b || u.cols() != d_a * d_b) throw DimensionError("unitary size does not match d_A * d_B");
  if (d_a < 2) throw DimensionError("protocol 1 needs d_A >= 2");
  ScopedDimensionCap cap(kCircuitDimensionCap);

  // A's system travels to B over (a1, a2), is acted on, and returns over (b1, b2).
  Register reg(input, {"A", "B"});
  reg.add(max_entangled(d_a), {"a1", "a2"});
  std::vector<Path> paths = detail::measure_paths({Path{reg}}, {"A", "a1"}, bell_basis(d_a));
  for (auto& p : paths) {
    int o = p.outcomes.back();
    p.reg.apply(pauli_power(d_a, o % d_a, o / d_a), {"a2"});
    p.reg.apply(u, {"a2", "B"});
    p.reg.add(max_entangled(d_a), {"b1", "b2"});
  }
  paths = detail::measure_paths(paths, {"a2", "b1"}, bell_basis(d_a));
  for (auto& p : paths) {
    int o = p.outcomes.back();
    p.reg.apply(pauli_power(d_a, o % d_a, o / d_a), {"b2"});
  }

  ProtocolRun run;
  run.protocol_id = "P1";
  run.branches = to_branches(paths, {"b2", "B"});
  const double bits = 2.0 * std::log2(static_cast<double>(d_a));
  run.resources.ebits = bits;
  run.resources.messages = {{"A", "B", bits, {}, "bell outcome"}, {"B", "A", bits, {0}, "bell outcome"}};
  return run;
}

ProtocolRun run_protocol7_clifford(const ComplexMatrix& u, const QuditState& input, int d) {
  if (!is_prime(d)) throw ProtocolError("protocol 7 needs prime d, got " + std::to_string(d));
  require_input(input, d, d);
  if (!is_clifford(u, 1, 1, d)) throw ProtocolError("protocol 7 refused: U does not map Pauli generators to Paulis");
  ScopedDimensionCap cap(kCircuitDimensionCap);

  // Resource (1/d) sum_{jk} |j>_a U(|j>_A2 |k>_B2) |k>_b.
  Register reg(input, {"A", "B"});
  reg.add(max_entangled(d), {"a", "A2"});
  reg.add(max_entangled(d), {"b", "B2"});
  reg.apply(u, {"A2", "B2"});

  std::vector<Path> paths = detail::measure_paths({Path{reg}}, {"A", "a"}, bell_basis(d));
  paths = detail::measure_paths(paths, {"B", "b"}, bell_basis(d));
  for (auto& p : paths) {
    int oa = p.outcomes[0];
    int ob = p.outcomes[1];
    ComplexMatrix m = kron_le(pauli_power(d, oa % d, oa / d), pauli_power(d, ob % d, ob / d));
    ComplexMatrix q = u * m.adjoint() * u.adjoint();
    auto coeffs = pauli_coefficients(q, 2, d);
    int hit = -1;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      if (std::abs(coeffs[i]) > 0.5) hit = static_cast<int>(i);
    }
    if (hit < 0) throw ProtocolError("conjugated Pauli has no dominant component");
    std::vector<int> jk(4);
    int rem = hit;
    for (auto& v : jk) {
      v = rem % d;
      rem /= d;
    }
    p.reg.apply(pauli_power(d, jk[0], jk[1]).adjoint(), {"A2"});
    p.reg.apply(pauli_power(d, jk[2], jk[3]).adjoint(), {"B2"});
  }

  ProtocolRun run;
  run.protocol_id = "P7";
  run.branches = to_branches(paths, {"A2", "B2"});
  const double bits = 2.0 * std::log2(static_cast<double>(d));
  run.resources.ebits = bits;
  run.resources.messages = {{"A", "B", bits, {}, "bell outcome"}, {"B", "A", bits, {}, "bell outcome"}};
  return run;
}

}  // namespace qrep
