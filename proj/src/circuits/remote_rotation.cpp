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
#include <numbers>
#include <numeric>
#include <string>

#include "branching.hpp"
#include "qrep/circuits.hpp"

namespace qrep {

using detail::Path;
using detail::Register;
using detail::to_branches;

ComplexMatrix remote_rotation(double theta) {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = std::polar(1.0, theta);
  m(1, 1) = std::polar(1.0, -theta);
  return m;
}

ProtocolRun run_protocol8(double theta, const QuditState& input) {
  if (input.dims != std::vector<int>{2}) throw DimensionError("protocol 8 input must be one qubit");
  // B holds the qubit; A holds theta.
  Register reg(input, {"B"});
  reg.add(max_entangled(2), {"a", "b"});
  ComplexMatrix cnot = detail::controlled({ComplexMatrix::Identity(2, 2), gen_pauli_x(2)});
  reg.apply(cnot, {"B", "b"});
  std::vector<Path> paths = detail::measure_paths({Path{reg}}, {"b"});
  for (auto& p : paths) {
    p.reg.apply(pauli_power(2, p.outcomes.back(), 0), {"a"});
    p.reg.apply(remote_rotation(theta), {"a"});
  }
  paths = detail::measure_paths(paths, {"a"}, fourier(2));
  for (auto& p : paths) p.reg.apply(pauli_power(2, 0, p.outcomes.back()), {"B"});

  ProtocolRun run;
  run.protocol_id = "P8";
  run.branches = to_branches(paths, {"B"});
  run.resources.ebits = 1.0;
  run.resources.messages = {{"B", "A", 1.0, {}, "parity outcome"}, {"A", "B", 1.0, {0}, "x-basis outcome"}};
  return run;
}

ProtocolRun run_protocol8_ladder(int q, int n, const QuditState& input) {
  if (q % 2 == 0) throw ProtocolError("ladder needs odd q");
  if (n < 1) throw ProtocolError("ladder needs N >= 1");
  if (n > 30) throw ProtocolError("ladder depth above 30 is not supported");
  if (input.dims != std::vector<int>{2}) throw DimensionError("ladder input must be one qubit");
  const double theta = q * std::numbers::pi / std::ldexp(1.0, n);

  std::vector<Path> done;
  std::vector<Path> active{Path{Register(input, {"q"})}};
  for (int k = 1; k <= n && !active.empty(); ++k) {
    const double phi = std::ldexp(theta, k - 1);
    QuditState resource = apply_on(max_entangled(2), remote_rotation(phi), {0});
    for (auto& p : active) {
      p.reg.add(resource, {"a", "b"});
      p.steps = k;
    }
    std::vector<Path> next;
    for (auto& p : detail::measure_paths(active, {"q", "a"}, bell_basis(2))) {
      int o = p.outcomes.back();
      p.reg.apply(pauli_power(2, o % 2, o / 2), {"b"});
      p.reg.reset(p.reg.state(), {"q"});
      // X component set: the rotation came out inverted and must be undone next step.
      if (o % 2 == 0 || k == n) {
        done.push_back(std::move(p));
      } else {
        next.push_back(std::move(p));
      }
    }
    active = std::move(next);
  }

  ProtocolRun run;
  run.protocol_id = "P8.ladder";
  run.branches = to_branches(done, {"q"});
  run.resources.ebits = static_cast<double>(n);
  for (int k = 0; k < n; ++k) {
    Message m{k % 2 == 0 ? "A" : "B", k % 2 == 0 ? "B" : "A", 2.0, {}, "bell outcome"};
    if (k > 0) m.depends_on = {k - 1};
    run.resources.messages.push_back(m);
  }
  return run;
}

}  // namespace qrep
