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
#include <string>
#include <vector>

#include "qrep/circuits.hpp"
#include "qrep/random.hpp"

namespace qrep {

/// A protocol run on one admissible (U, input) pair, with its oracle report.
struct ProtocolCase {
  std::string protocol;
  int d_a = 0;
  int d_b = 0;
  ComplexMatrix u;
  QuditState input;
  ProtocolRun run;
  ExactnessReport report;
};

/// Protocol ids: P1..P8 and "P8.ladder(q,N)".
const std::vector<std::string>& protocol_ids();

/// Whether random admissible instances exist at these local dimensions.
bool protocol_supports(const std::string& protocol, int d_a, int d_b);

/// Draws a random admissible instance and runs the protocol on it:
///   P1, P4: Haar U.
///   P2: computational-basis controls with Haar targets.
///   P3: Haar U with the full Pauli expansion when d_A d_B <= 6, otherwise a
///       controlled-circulant U expanded over <Z> x <X>.
///   P5: controls with targets from a rotated cyclic representation.
///   P6: controls with phased generalized-Pauli targets.
///   P7: random two-qudit Clifford word, d_A = d_B prime.
///   P8 and ladder: random qubit input, d_A = d_B = 2.
ProtocolCase run_random_case(const std::string& protocol, int d_a, int d_b, Rng& rng);

/// Runs a protocol on a caller-supplied unitary (P1, P3, P4, P5, P7).
ProtocolCase run_fixed_case(const std::string& protocol, const ComplexMatrix& u, int d_a, int d_b,
                            const QuditState& input);

/// Random two-qudit Clifford as a word in F, phase and SUM gates.
ComplexMatrix random_clifford(int d, Rng& rng, int length = 24);

/// Blocks V_a when U = sum_a |a><a| (x) V_a on the computational basis of A.
std::optional<std::vector<ComplexMatrix>> control_blocks(const ComplexMatrix& u, int d_a, int d_b);

/// Named gates: cnot, cz, swap, sum3, iswap.
ComplexMatrix named_gate(const std::string& name, int* d_a = nullptr, int* d_b = nullptr);

}  // namespace qrep
