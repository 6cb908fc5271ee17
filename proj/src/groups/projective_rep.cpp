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
#include <string>

#include "qrep/group_forms.hpp"

namespace qrep {

std::vector<int> ProjectiveRep::digits(int f) const {
  std::vector<int> e(radices.size());
  for (std::size_t i = 0; i < radices.size(); ++i) {
    e[i] = f % radices[i];
    f /= radices[i];
  }
  return e;
}

int ProjectiveRep::inverse(int f) const {
  auto e = digits(f);
  int idx = 0;
  for (std::size_t i = radices.size(); i-- > 0;) idx = idx * radices[i] + (radices[i] - e[i]) % radices[i];
  return idx;
}

cplx ProjectiveRep::character(int r, int g) const {
  auto er = digits(r);
  auto eg = digits(g);
  double phase = 0.0;
  for (std::size_t i = 0; i < radices.size(); ++i) {
    phase += static_cast<double>((er[i] * eg[i]) % radices[i]) / radices[i];
  }
  return std::polar(1.0, 2.0 * std::numbers::pi * phase);
}

ComplexMatrix ProjectiveRep::fourier_basis() const {
  ComplexMatrix f(order, order);
  const double s = 1.0 / std::sqrt(static_cast<double>(order));
  for (int g = 0; g < order; ++g) {
    for (int r = 0; r < order; ++r) f(g, r) = std::conj(character(r, g)) * s;
  }
  return f;
}

int ProjectiveRep::find_member(const ComplexMatrix& m, cplx* phase, double tol) const {
  if (m.rows() != dim() || m.cols() != dim()) return -1;
  for (int f = 0; f < order; ++f) {
    const ComplexMatrix& r = matrix(f);
    cplx lambda = (r.adjoint() * m).trace() / static_cast<double>(dim());
    if (std::abs(std::abs(lambda) - 1.0) > tol) continue;
    if (max_abs(m - lambda * r) > tol) continue;
    if (phase) *phase = lambda;
    return f;
  }
  return -1;
}

ProjectiveRep rep_from_generators(const std::vector<int>& radices, const std::vector<ComplexMatrix>& generators) {
  if (radices.empty() || radices.size() != generators.size()) {
    throw FormError("radices and generators must be non-empty and of equal length");
  }
  ProjectiveRep rep;
  rep.radices = radices;
  rep.order = 1;
  for (int r : radices) {
    if (r < 1) throw FormError("group radix must be positive");
    rep.order *= r;
  }
  const auto dim = generators.front().rows();
  for (const auto& g : generators) {
    if (g.rows() != dim || g.cols() != dim) throw FormError("generators must share one square dimension");
    if (!is_unitary(g)) throw FormError("generator is not unitary");
  }
  rep.matrices.reserve(static_cast<std::size_t>(rep.order));
  for (int f = 0; f < rep.order; ++f) {
    auto e = rep.digits(f);
    ComplexMatrix m = ComplexMatrix::Identity(dim, dim);
    for (std::size_t i = 0; i < radices.size(); ++i) {
      for (int p = 0; p < e[i]; ++p) m = m * generators[i];
    }
    rep.matrices.push_back(std::move(m));
  }
  auto n = static_cast<std::size_t>(rep.order);
  rep.mult_table.assign(n, std::vector<int>(n));
  rep.factor_phases.assign(n, std::vector<cplx>(n));
  for (int f = 0; f < rep.order; ++f) {
    auto ef = rep.digits(f);
    for (int g = 0; g < rep.order; ++g) {
      auto eg = rep.digits(g);
      int idx = 0;
      for (std::size_t i = radices.size(); i-- > 0;) idx = idx * radices[i] + (ef[i] + eg[i]) % radices[i];
      rep.mult_table[static_cast<std::size_t>(f)][static_cast<std::size_t>(g)] = idx;
      const ComplexMatrix& fg = rep.matrix(idx);
      cplx num = (fg.adjoint() * rep.matrix(f) * rep.matrix(g)).trace();
      cplx den = (fg.adjoint() * fg).trace();
      rep.factor_phases[static_cast<std::size_t>(f)][static_cast<std::size_t>(g)] = num / den;
    }
  }
  validate_rep(rep);
  return rep;
}

ProjectiveRep pauli_rep(int d) {
  if (d < 2) throw FormError("pauli_rep needs d >= 2");
  return rep_from_generators({d, d}, {gen_pauli_x(d), gen_pauli_z(d)});
}

void validate_rep(const ProjectiveRep& rep, double tol) {
  for (int f = 0; f < rep.order; ++f) {
    for (int g = 0; g < rep.order; ++g) {
      cplx w = rep.omega(f, g);
      if (std::abs(std::abs(w) - 1.0) > 1e-12 + tol) {
        throw FormError("factor phase omega(" + std::to_string(f) + "," + std::to_string(g) + ") is not unimodular");
      }
      if (max_abs(rep.matrix(f) * rep.matrix(g) - w * rep.matrix(rep.mul(f, g))) > tol) {
        throw FormError("M(f)M(g) != omega M(fg) at (" + std::to_string(f) + "," + std::to_string(g) + ")");
      }
    }
  }
}

}  // namespace qrep
