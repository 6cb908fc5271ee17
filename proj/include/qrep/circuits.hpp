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
#include <vector>

#include "qrep/group_forms.hpp"
#include "qrep/qudit.hpp"

namespace qrep {

class ProtocolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Working-register cap used while ancillas are attached.
inline constexpr std::size_t kCircuitDimensionCap = std::size_t{1} << 16;

struct Message {
  std::string from;
  std::string to;
  double cbits = 0.0;
  std::vector<int> depends_on;  // indices into ResourceLog::messages
  std::string label;
};

struct ResourceLog {
  double ebits = 0.0;
  std::vector<Message> messages;

  double cbits() const;
  /// Longest chain of dependent messages.
  int rounds() const;
  /// One round carrying messages in both directions.
  bool single_parallel_round() const;
};

struct Branch {
  std::vector<int> outcomes;
  double probability = 0.0;
  QuditState output;
  int steps = 0;
};

struct ProtocolRun {
  std::string protocol_id;
  std::vector<Branch> branches;
  ResourceLog resources;
};

ProtocolRun run_protocol1(const ComplexMatrix& u, const QuditState& input, int d_a, int d_b);
ProtocolRun run_protocol2(const ControlledForm& form, const QuditState& input);
/// `circulant_override` replaces the derived gate; used for negative controls.
ProtocolRun run_protocol3(const DoubleGroupExpansion& exp, const QuditState& input,
                          const std::optional<ComplexMatrix>& circulant_override = std::nullopt);
ProtocolRun run_protocol4(const SingleGroupExpansion& exp, const QuditState& input);
/// Requires exp.fast_flag; see check_fast_form.
ProtocolRun run_protocol5(const DoubleGroupExpansion& exp, const QuditState& input);
/// Targets must equal lambda_j R(g_j) for elements of `rep`.
ProtocolRun run_protocol6(const ControlledForm& form, const ProjectiveRep& rep, const QuditState& input);
/// One qudit per side, prime d.
ProtocolRun run_protocol7_clifford(const ComplexMatrix& u, const QuditState& input, int d);
ProtocolRun run_protocol8(double theta, const QuditState& input);
/// theta = q pi / 2^n with q odd.
ProtocolRun run_protocol8_ladder(int q, int n, const QuditState& input);

/// diag(e^{i theta}, e^{-i theta}).
ComplexMatrix remote_rotation(double theta);

/// True when every branch of the one-round double-group circuit is locally
/// correctable and the branch oracle passes on 20 seeded inputs.
bool check_fast_form(const DoubleGroupExpansion& exp);

/// Splits q = K_A (x) K_B with both factors unitary up to scale.
std::optional<std::pair<ComplexMatrix, ComplexMatrix>> factor_product(const ComplexMatrix& q, int d_a, int d_b,
                                                                      double tol = 1e-9);

struct ExactnessReport {
  std::vector<double> overlaps;
  double min_overlap = 1.0;
  int worst_branch = -1;
  double probability_deviation = 0.0;
  bool pass = false;
};

inline constexpr double kExactnessTol = 1e-9;

ExactnessReport verify_exactness(const ProtocolRun& run, const ComplexMatrix& u, const QuditState& input);

}  // namespace qrep
