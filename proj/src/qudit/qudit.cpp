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

#include "qrep/qudit.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace qrep {
namespace {

thread_local std::size_t g_dimension_cap = kDefaultDimensionCap;

void require_dim(int n) {
  if (n < 1) throw DimensionError("invalid dimension " + std::to_string(n));
}

std::vector<std::size_t> strides_of(const std::vector<int>& dims) {
  std::vector<std::size_t> s(dims.size());
  std::size_t acc = 1;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    s[i] = acc;
    acc *= static_cast<std::size_t>(dims[i]);
  }
  return s;
}

void check_targets(const std::vector<int>& dims, const std::vector<int>& targets) {
  std::vector<bool> seen(dims.size(), false);
  for (int t : targets) {
    if (t < 0 || t >= static_cast<int>(dims.size())) {
      throw DimensionError("target index " + std::to_string(t) + " out of range");
    }
    if (seen[static_cast<std::size_t>(t)]) throw DimensionError("repeated target index " + std::to_string(t));
    seen[static_cast<std::size_t>(t)] = true;
  }
}

// Offsets of every target-digit combination (little-endian over targets) and
// the base indices where all target digits are zero.
struct Split {
  std::vector<std::size_t> target_offsets;
  std::vector<std::size_t> bases;
};

Split split_indices(const std::vector<int>& dims, const std::vector<int>& targets) {
  auto strides = strides_of(dims);
  Split sp;
  std::size_t tdim = 1;
  for (int t : targets) tdim *= static_cast<std::size_t>(dims[static_cast<std::size_t>(t)]);
  sp.target_offsets.resize(tdim);
  for (std::size_t m = 0; m < tdim; ++m) {
    std::size_t rem = m;
    std::size_t off = 0;
    for (int t : targets) {
      auto d = static_cast<std::size_t>(dims[static_cast<std::size_t>(t)]);
      off += (rem % d) * strides[static_cast<std::size_t>(t)];
      rem /= d;
    }
    sp.target_offsets[m] = off;
  }
  std::vector<bool> is_target(dims.size(), false);
  for (int t : targets) is_target[static_cast<std::size_t>(t)] = true;
  std::size_t total = total_dimension(dims);
  sp.bases.reserve(total / tdim);
  for (std::size_t idx = 0; idx < total; ++idx) {
    bool zero = true;
    for (std::size_t i = 0; i < dims.size() && zero; ++i) {
      if (is_target[i] && (idx / strides[i]) % static_cast<std::size_t>(dims[i]) != 0) zero = false;
    }
    if (zero) sp.bases.push_back(idx);
  }
  return sp;
}

}  // namespace

std::size_t dimension_cap() { return g_dimension_cap; }

ScopedDimensionCap::ScopedDimensionCap(std::size_t cap) : previous_(g_dimension_cap) { g_dimension_cap = cap; }

ScopedDimensionCap::~ScopedDimensionCap() { g_dimension_cap = previous_; }

std::size_t total_dimension(const std::vector<int>& dims) {
  std::size_t t = 1;
  for (int d : dims) {
    require_dim(d);
    t *= static_cast<std::size_t>(d);
    if (t > g_dimension_cap) {
      throw DimensionError("composite dimension exceeds cap " + std::to_string(g_dimension_cap));
    }
  }
  return t;
}

QuditState::QuditState(std::vector<int> d, ComplexVector a) : dims(std::move(d)), amplitudes(std::move(a)) {
  if (static_cast<std::size_t>(amplitudes.size()) != total_dimension(dims)) {
    throw DimensionError("amplitude count does not match dims");
  }
}

QuditState QuditState::basis(std::vector<int> dims, const std::vector<int>& digits) {
  if (digits.size() != dims.size()) throw DimensionError("digit count does not match dims");
  ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(total_dimension(dims)));
  auto strides = strides_of(dims);
  std::size_t idx = 0;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (digits[i] < 0 || digits[i] >= dims[i]) throw DimensionError("basis digit out of range");
    idx += static_cast<std::size_t>(digits[i]) * strides[i];
  }
  v(static_cast<Eigen::Index>(idx)) = 1.0;
  return QuditState(std::move(dims), std::move(v));
}

ComplexMatrix gen_pauli_x(int n) {
  require_dim(n);
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  for (int k = 0; k < n; ++k) m((k - 1 + n) % n, k) = 1.0;
  return m;
}

ComplexMatrix gen_pauli_z(int n) {
  require_dim(n);
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  for (int k = 0; k < n; ++k) m(k, k) = std::polar(1.0, 2.0 * std::numbers::pi * k / n);
  return m;
}

ComplexMatrix fourier(int n) {
  require_dim(n);
  ComplexMatrix m(n, n);
  const double s = 1.0 / std::sqrt(static_cast<double>(n));
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      m(j, k) = std::polar(s, -2.0 * std::numbers::pi * static_cast<double>((j * k) % n) / n);
    }
  }
  return m;
}

ComplexMatrix pauli_power(int d, int j, int k) {
  require_dim(d);
  j = ((j % d) + d) % d;
  k = ((k % d) + d) % d;
  // X^j Z^k |m> = e^{2 pi i k m/d} |m - j>
  ComplexMatrix m = ComplexMatrix::Zero(d, d);
  for (int col = 0; col < d; ++col) {
    m(((col - j) % d + d) % d, col) = std::polar(1.0, 2.0 * std::numbers::pi * ((k * col) % d) / d);
  }
  return m;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return r;
}

ComplexMatrix kron_le(const ComplexMatrix& op0, const ComplexMatrix& op1) { return kron(op1, op0); }

double max_abs(const ComplexMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

bool is_unitary(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return max_abs(m.adjoint() * m - ComplexMatrix::Identity(m.rows(), m.cols())) <= tol;
}

QuditState tensor(const QuditState& a, const QuditState& b) {
  std::vector<int> dims = a.dims;
  dims.insert(dims.end(), b.dims.begin(), b.dims.end());
  ComplexVector v(static_cast<Eigen::Index>(total_dimension(dims)));
  const auto na = a.amplitudes.size();
  for (Eigen::Index j = 0; j < b.amplitudes.size(); ++j) v.segment(j * na, na) = b.amplitudes(j) * a.amplitudes;
  return QuditState(std::move(dims), std::move(v));
}

QuditState max_entangled(int d) {
  require_dim(d);
  ComplexVector v = ComplexVector::Zero(d * d);
  for (int j = 0; j < d; ++j) v(j + d * j) = 1.0 / std::sqrt(static_cast<double>(d));
  return QuditState({d, d}, std::move(v));
}

QuditState apply_on(const QuditState& state, const ComplexMatrix& op, const std::vector<int>& targets) {
  check_targets(state.dims, targets);
  std::size_t tdim = 1;
  for (int t : targets) tdim *= static_cast<std::size_t>(state.dims[static_cast<std::size_t>(t)]);
  if (static_cast<std::size_t>(op.rows()) != tdim || static_cast<std::size_t>(op.cols()) != tdim) {
    throw DimensionError("operator dimension does not match targets");
  }
  auto sp = split_indices(state.dims, targets);
  QuditState out = state;
  ComplexVector buf(static_cast<Eigen::Index>(tdim));
  for (std::size_t base : sp.bases) {
    for (std::size_t m = 0; m < tdim; ++m) buf(static_cast<Eigen::Index>(m)) = state.amplitudes(static_cast<Eigen::Index>(base + sp.target_offsets[m]));
    ComplexVector r = op * buf;
    for (std::size_t m = 0; m < tdim; ++m) out.amplitudes(static_cast<Eigen::Index>(base + sp.target_offsets[m])) = r(static_cast<Eigen::Index>(m));
  }
  return out;
}

std::vector<MeasurementBranch> measure_joint(const QuditState& state, const std::vector<int>& targets,
                                             const std::optional<ComplexMatrix>& basis) {
  check_targets(state.dims, targets);
  if (targets.empty()) throw DimensionError("measurement needs at least one target");
  std::size_t tdim = 1;
  for (int t : targets) tdim *= static_cast<std::size_t>(state.dims[static_cast<std::size_t>(t)]);
  if (basis && (static_cast<std::size_t>(basis->rows()) != tdim || static_cast<std::size_t>(basis->cols()) != tdim)) {
    throw DimensionError("measurement basis dimension mismatch");
  }
  QuditState rotated = basis ? apply_on(state, basis->adjoint(), targets) : state;

  std::vector<int> rest_dims;
  std::vector<int> rest_index;
  std::vector<bool> is_target(state.dims.size(), false);
  for (int t : targets) is_target[static_cast<std::size_t>(t)] = true;
  for (std::size_t i = 0; i < state.dims.size(); ++i) {
    if (!is_target[i]) {
      rest_dims.push_back(state.dims[i]);
      rest_index.push_back(static_cast<int>(i));
    }
  }
  auto sp = split_indices(state.dims, targets);
  // bases are enumerated in increasing full index, which is increasing
  // little-endian order over the remaining subsystems.
  std::vector<MeasurementBranch> out(tdim);
  for (std::size_t m = 0; m < tdim; ++m) {
    ComplexVector v(static_cast<Eigen::Index>(sp.bases.size()));
    for (std::size_t r = 0; r < sp.bases.size(); ++r) {
      v(static_cast<Eigen::Index>(r)) = rotated.amplitudes(static_cast<Eigen::Index>(sp.bases[r] + sp.target_offsets[m]));
    }
    double p = v.squaredNorm();
    if (p > 0.0) v /= std::sqrt(p);
    out[m].outcome = static_cast<int>(m);
    out[m].probability = p;
    if (rest_dims.empty()) {
      // Fully measured: keep a one-dimensional placeholder carrying the phase.
      out[m].post_state = QuditState({1}, ComplexVector::Constant(1, p > 0.0 ? v(0) : cplx(0.0)));
    } else {
      out[m].post_state = QuditState(rest_dims, std::move(v));
    }
  }
  return out;
}

std::vector<MeasurementBranch> measure(const QuditState& state, int target, const std::optional<ComplexMatrix>& basis) {
  return measure_joint(state, {target}, basis);
}

QuditState permute(const QuditState& state, const std::vector<int>& order) {
  if (order.size() != state.dims.size()) throw DimensionError("permutation size mismatch");
  check_targets(state.dims, order);
  std::vector<int> new_dims(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) new_dims[i] = state.dims[static_cast<std::size_t>(order[i])];
  auto old_strides = strides_of(state.dims);
  std::size_t total = state.size();
  ComplexVector v(static_cast<Eigen::Index>(total));
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rem = idx;
    std::size_t old_idx = 0;
    for (std::size_t i = 0; i < order.size(); ++i) {
      auto d = static_cast<std::size_t>(new_dims[i]);
      old_idx += (rem % d) * old_strides[static_cast<std::size_t>(order[i])];
      rem /= d;
    }
    v(static_cast<Eigen::Index>(idx)) = state.amplitudes(static_cast<Eigen::Index>(old_idx));
  }
  return QuditState(std::move(new_dims), std::move(v));
}

ComplexMatrix bell_basis(int d) {
  require_dim(d);
  ComplexMatrix b(d * d, d * d);
  const QuditState phi = max_entangled(d);
  for (int k = 0; k < d; ++k) {
    for (int j = 0; j < d; ++j) {
      b.col(j + d * k) = apply_on(phi, pauli_power(d, j, k), {0}).amplitudes;
    }
  }
  return b;
}

std::vector<MeasurementBranch> teleport(int d, const QuditState& input) {
  if (d < 2) throw DimensionError("teleport needs d >= 2");
  if (input.dims.size() != 1 || input.dims[0] != d) throw DimensionError("teleport input must be one subsystem of dimension d");
  // subsystems: 0 input, 1 sender half, 2 receiver half
  QuditState s = tensor(input, max_entangled(d));
  std::vector<MeasurementBranch> out;
  for (auto& br : measure_joint(s, {0, 1}, bell_basis(d))) {
    int j = br.outcome % d;
    int k = br.outcome / d;
    br.post_state = apply_on(br.post_state, pauli_power(d, j, k), {0});
    out.push_back(std::move(br));
  }
  return out;
}

double overlap(const QuditState& a, const QuditState& b) {
  if (a.dims != b.dims) throw DimensionError("overlap of states with different dims");
  return std::abs(a.amplitudes.dot(b.amplitudes));
}

bool equal_up_to_phase(const QuditState& a, const QuditState& b, double tol) { return overlap(a, b) >= 1.0 - tol; }

ComplexMatrix reduced_density(const QuditState& state, const std::vector<int>& keep) {
  check_targets(state.dims, keep);
  std::vector<int> traced;
  std::vector<bool> kept(state.dims.size(), false);
  for (int k : keep) kept[static_cast<std::size_t>(k)] = true;
  for (std::size_t i = 0; i < state.dims.size(); ++i) {
    if (!kept[i]) traced.push_back(static_cast<int>(i));
  }
  auto sp = split_indices(state.dims, keep);
  auto n = static_cast<Eigen::Index>(sp.target_offsets.size());
  ComplexMatrix rho = ComplexMatrix::Zero(n, n);
  for (std::size_t base : sp.bases) {
    ComplexVector v(n);
    for (Eigen::Index m = 0; m < n; ++m) v(m) = state.amplitudes(static_cast<Eigen::Index>(base + sp.target_offsets[static_cast<std::size_t>(m)]));
    rho += v * v.adjoint();
  }
  return rho;
}

}  // namespace qrep
