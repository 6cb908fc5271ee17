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

#include <complex>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace qrep {

using cplx = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Raised for any dimension or index mismatch in the linear-algebra layer.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Largest composite dimension accepted by QuditState unless a wider cap is
/// in scope.
inline constexpr std::size_t kDefaultDimensionCap = 4096;

/// Cap in effect on the calling thread.
std::size_t dimension_cap();

/// Raises or lowers the cap on the calling thread for the guard's lifetime.
class ScopedDimensionCap {
 public:
  explicit ScopedDimensionCap(std::size_t cap);
  ~ScopedDimensionCap();
  ScopedDimensionCap(const ScopedDimensionCap&) = delete;
  ScopedDimensionCap& operator=(const ScopedDimensionCap&) = delete;

 private:
  std::size_t previous_;
};

/// State vector over subsystems with dimensions `dims`.
/// Subsystem 0 is the least significant digit of the basis index.
struct QuditState {
  std::vector<int> dims;
  ComplexVector amplitudes;

  QuditState() = default;
  QuditState(std::vector<int> dims, ComplexVector amplitudes);

  static QuditState basis(std::vector<int> dims, const std::vector<int>& digits);

  std::size_t size() const { return static_cast<std::size_t>(amplitudes.size()); }
  int num_subsystems() const { return static_cast<int>(dims.size()); }
  double norm() const { return amplitudes.norm(); }
};

struct MeasurementBranch {
  int outcome = 0;
  double probability = 0.0;
  QuditState post_state;
};

std::size_t total_dimension(const std::vector<int>& dims);

ComplexMatrix gen_pauli_x(int n);
ComplexMatrix gen_pauli_z(int n);
/// Unitary with F X F^dagger = Z; entries e^{-2 pi i jk/N}/sqrt(N).
ComplexMatrix fourier(int n);
/// X^j Z^k on dimension d, exponents taken mod d.
ComplexMatrix pauli_power(int d, int j, int k);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
/// Operator on (sub0, sub1) ordered little-endian: sub0 varies fastest, so the
/// matrix is kron(op1, op0).
ComplexMatrix kron_le(const ComplexMatrix& op0, const ComplexMatrix& op1);

double max_abs(const ComplexMatrix& m);
bool is_unitary(const ComplexMatrix& m, double tol = 1e-9);

/// Product state with `a` occupying the low subsystems.
QuditState tensor(const QuditState& a, const QuditState& b);
/// (1/sqrt d) sum_j |j>|j>.
QuditState max_entangled(int d);

QuditState apply_on(const QuditState& state, const ComplexMatrix& op, const std::vector<int>& targets);

/// Measurement of one subsystem in the basis given by the columns of `basis`
/// (computational basis when absent). Every outcome is returned, including
/// zero-probability ones, whose post_state is left as the zero vector.
std::vector<MeasurementBranch> measure(const QuditState& state, int target,
                                       const std::optional<ComplexMatrix>& basis = std::nullopt);

/// Joint measurement of several subsystems; outcome index is little-endian
/// over the target list.
std::vector<MeasurementBranch> measure_joint(const QuditState& state, const std::vector<int>& targets,
                                             const std::optional<ComplexMatrix>& basis = std::nullopt);

/// Reorders subsystems so that new subsystem i is old subsystem order[i].
QuditState permute(const QuditState& state, const std::vector<int>& order);

/// Columns (X^j Z^k (x) I)|Phi>, column index j + d*k.
ComplexMatrix bell_basis(int d);

/// Teleports a single d-dimensional subsystem through a fresh pair and applies
/// the generalized-Pauli correction; returns all d^2 branches.
std::vector<MeasurementBranch> teleport(int d, const QuditState& input);

/// |<a|b>| >= 1 - tol for normalized inputs.
bool equal_up_to_phase(const QuditState& a, const QuditState& b, double tol = 1e-9);
double overlap(const QuditState& a, const QuditState& b);

/// Reduced density operator on the listed subsystems.
ComplexMatrix reduced_density(const QuditState& state, const std::vector<int>& keep);

}  // namespace qrep
