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
#include <sstream>
#include <string>

#include "qrep/group_forms.hpp"

namespace qrep {
namespace {

void require_square(const ComplexMatrix& u, int d_a, int d_b) {
  if (d_a < 1 || d_b < 1) throw DimensionError("invalid subsystem dimension");
  if (u.rows() != d_a * d_b || u.cols() != d_a * d_b) {
    throw DimensionError("unitary size does not match d_A * d_B");
  }
}

std::string fmt_double(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

}  // namespace

ComplexMatrix partial_trace_a(const ComplexMatrix& op, int d_a, int d_b) {
  require_square(op, d_a, d_b);
  ComplexMatrix out = ComplexMatrix::Zero(d_b, d_b);
  for (int b = 0; b < d_b; ++b) {
    for (int bp = 0; bp < d_b; ++bp) {
      cplx s = 0.0;
      for (int a = 0; a < d_a; ++a) s += op(a + d_a * b, a + d_a * bp);
      out(b, bp) = s;
    }
  }
  return out;
}

std::vector<int> ControlledForm::block_of_basis() const {
  std::vector<int> block(static_cast<std::size_t>(d_a), -1);
  for (int j = 0; j < terms(); ++j) {
    for (int k = 0; k < d_a; ++k) {
      if (std::abs(projectors[static_cast<std::size_t>(j)](k, k) - 1.0) < 1e-9) block[static_cast<std::size_t>(k)] = j;
    }
  }
  for (int b : block) {
    if (b < 0) throw FormError("projectors are not computational-basis blocks");
  }
  return block;
}

ComplexMatrix ControlledForm::unitary() const {
  ComplexMatrix u = ComplexMatrix::Zero(d_a * d_b, d_a * d_b);
  for (int j = 0; j < terms(); ++j) u += kron_le(projectors[static_cast<std::size_t>(j)], targets[static_cast<std::size_t>(j)]);
  return u;
}

void validate_controlled(const ControlledForm& form, double tol) {
  if (form.projectors.empty() || form.projectors.size() != form.targets.size()) {
    throw FormError("controlled form needs one target per projector");
  }
  ComplexMatrix sum = ComplexMatrix::Zero(form.d_a, form.d_a);
  for (std::size_t i = 0; i < form.projectors.size(); ++i) {
    const auto& p = form.projectors[i];
    if (p.rows() != form.d_a || p.cols() != form.d_a) throw DimensionError("projector dimension mismatch");
    if (max_abs(p * p - p) > tol || max_abs(p - p.adjoint()) > tol) {
      throw FormError("P_" + std::to_string(i) + " is not a Hermitian projector");
    }
    for (std::size_t j = i + 1; j < form.projectors.size(); ++j) {
      if (max_abs(p * form.projectors[j]) > tol) throw FormError("projectors are not mutually orthogonal");
    }
    const auto& v = form.targets[i];
    if (v.rows() != form.d_b || v.cols() != form.d_b) throw DimensionError("target dimension mismatch");
    if (!is_unitary(v, tol)) throw FormError("target V_" + std::to_string(i) + " is not unitary");
    sum += p;
  }
  if (max_abs(sum - ComplexMatrix::Identity(form.d_a, form.d_a)) > tol) {
    throw FormError("projectors do not sum to the identity");
  }
}

ControlledForm controlled_form(const std::vector<int>& projector_ranks, const std::vector<ComplexMatrix>& targets) {
  if (projector_ranks.empty() || projector_ranks.size() != targets.size()) {
    throw FormError("controlled form needs one rank per target");
  }
  ControlledForm form;
  for (int r : projector_ranks) {
    if (r < 1) throw FormError("projector rank must be >= 1");
    form.d_a += r;
  }
  form.d_b = static_cast<int>(targets.front().rows());
  int offset = 0;
  for (int r : projector_ranks) {
    ComplexMatrix p = ComplexMatrix::Zero(form.d_a, form.d_a);
    for (int k = 0; k < r; ++k) p(offset + k, offset + k) = 1.0;
    offset += r;
    form.projectors.push_back(std::move(p));
  }
  form.targets = targets;
  validate_controlled(form);
  return form;
}

ProjectiveRep DoubleGroupExpansion::combined() const {
  ProjectiveRep rep;
  rep.radices = rep_a.radices;
  rep.radices.insert(rep.radices.end(), rep_b.radices.begin(), rep_b.radices.end());
  const int na = rep_a.order;
  rep.order = order();
  auto n = static_cast<std::size_t>(rep.order);
  rep.matrices.reserve(n);
  for (int f = 0; f < rep.order; ++f) rep.matrices.push_back(kron_le(rep_a.matrix(f % na), rep_b.matrix(f / na)));
  rep.mult_table.assign(n, std::vector<int>(n));
  rep.factor_phases.assign(n, std::vector<cplx>(n));
  for (int f = 0; f < rep.order; ++f) {
    for (int g = 0; g < rep.order; ++g) {
      int x = rep_a.mul(f % na, g % na);
      int y = rep_b.mul(f / na, g / na);
      rep.mult_table[static_cast<std::size_t>(f)][static_cast<std::size_t>(g)] = x + na * y;
      rep.factor_phases[static_cast<std::size_t>(f)][static_cast<std::size_t>(g)] =
          rep_a.omega(f % na, g % na) * rep_b.omega(f / na, g / na);
    }
  }
  return rep;
}

ComplexMatrix DoubleGroupExpansion::unitary() const {
  const int d = d_a() * d_b();
  ComplexMatrix u = ComplexMatrix::Zero(d, d);
  for (int x = 0; x < rep_a.order; ++x) {
    for (int y = 0; y < rep_b.order; ++y) {
      if (std::abs(coeffs(x, y)) <= kCoefficientZero) continue;
      u += coeffs(x, y) * kron_le(rep_a.matrix(x), rep_b.matrix(y));
    }
  }
  return u;
}

int DoubleGroupExpansion::nonzero_terms(double tol) const {
  int n = 0;
  for (Eigen::Index i = 0; i < coeffs.size(); ++i) n += std::abs(coeffs.data()[i]) > tol ? 1 : 0;
  return n;
}

DoubleGroupExpansion expand_on_reps(const ComplexMatrix& u, const ProjectiveRep& rep_a, const ProjectiveRep& rep_b) {
  const int d_a = rep_a.dim();
  const int d_b = rep_b.dim();
  require_square(u, d_a, d_b);
  DoubleGroupExpansion exp;
  exp.rep_a = rep_a;
  exp.rep_b = rep_b;
  exp.coeffs = ComplexMatrix::Zero(rep_a.order, rep_b.order);
  const double norm = static_cast<double>(d_a) * d_b;
  for (int x = 0; x < rep_a.order; ++x) {
    for (int y = 0; y < rep_b.order; ++y) {
      cplx c = (kron_le(rep_a.matrix(x), rep_b.matrix(y)).adjoint() * u).trace() / norm;
      exp.coeffs(x, y) = std::abs(c) <= kCoefficientZero ? cplx(0.0) : c;
    }
  }
  double err = max_abs(exp.unitary() - u);
  if (err > 1e-9) {
    throw FormError("unitary is not spanned by the supplied representations (error " + fmt_double(err) + ")");
  }
  return exp;
}

DoubleGroupExpansion expand_double_group(const ComplexMatrix& u, int d_a, int d_b, bool allow_nonunitary) {
  require_square(u, d_a, d_b);
  if (!allow_nonunitary && !is_unitary(u)) throw FormError("expand_double_group: input is not unitary");
  return expand_on_reps(u, pauli_rep(d_a), pauli_rep(d_b));
}

DoubleGroupExpansion controlled_abelian_expansion(const ControlledForm& form, const ProjectiveRep& rep_b) {
  validate_controlled(form);
  if (rep_b.dim() != form.d_b) throw DimensionError("representation dimension does not match B");
  std::vector<int> elems;
  for (int j = 0; j < form.terms(); ++j) {
    cplx phase;
    int g = rep_b.find_member(form.targets[static_cast<std::size_t>(j)], &phase);
    if (g < 0) throw FormError("target V_" + std::to_string(j) + " is not in the representation");
    if (std::abs(phase - 1.0) > 1e-9) {
      throw FormError("target V_" + std::to_string(j) + " matches its group element only up to a phase");
    }
    elems.push_back(g);
  }
  // Dual-group generators S_i = sum_j chi_{e_i}(g_j) P_j.
  std::vector<ComplexMatrix> gens;
  int stride = 1;
  for (int radix : rep_b.radices) {
    ComplexMatrix s = ComplexMatrix::Zero(form.d_a, form.d_a);
    for (int j = 0; j < form.terms(); ++j) {
      s += rep_b.character(stride, elems[static_cast<std::size_t>(j)]) * form.projectors[static_cast<std::size_t>(j)];
    }
    gens.push_back(std::move(s));
    stride *= radix;
  }
  DoubleGroupExpansion exp;
  exp.rep_a = rep_from_generators(rep_b.radices, gens);
  exp.rep_b = rep_b;
  const int n = rep_b.order;
  exp.coeffs = ComplexMatrix::Zero(n, n);
  for (int r = 0; r < n; ++r) {
    for (int g = 0; g < n; ++g) exp.coeffs(r, g) = std::conj(rep_b.character(r, g)) / static_cast<double>(n);
  }
  double err = max_abs(exp.unitary() - form.unitary());
  if (err > 1e-9) throw FormError("controlled-Abelian rewrite failed (error " + fmt_double(err) + ")");
  return exp;
}

ComplexMatrix SingleGroupExpansion::unitary() const {
  const int d = d_a() * d_b();
  ComplexMatrix u = ComplexMatrix::Zero(d, d);
  for (int f = 0; f < rep_a.order; ++f) u += kron_le(rep_a.matrix(f), w_b[static_cast<std::size_t>(f)]);
  return u;
}

SingleGroupExpansion expand_single_group(const ComplexMatrix& u, int d_a, int d_b) {
  require_square(u, d_a, d_b);
  if (!is_unitary(u)) throw FormError("expand_single_group: input is not unitary");
  SingleGroupExpansion exp;
  exp.rep_a = pauli_rep(d_a);
  const ComplexMatrix id_b = ComplexMatrix::Identity(d_b, d_b);
  for (int f = 0; f < exp.rep_a.order; ++f) {
    ComplexMatrix w = partial_trace_a(kron_le(exp.rep_a.matrix(f).adjoint(), id_b) * u, d_a, d_b) / static_cast<double>(d_a);
    exp.w_b.push_back(std::move(w));
  }
  return exp;
}

ComplexMatrix build_circulant(const DoubleGroupExpansion& exp) {
  ProjectiveRep g = exp.combined();
  const int n = g.order;
  ComplexMatrix c(n, n);
  for (int h = 0; h < n; ++h) {
    for (int k = 0; k < n; ++k) {
      int e = g.sub(k, h);
      c(h, k) = exp.coeff(e) * g.omega(h, e);
    }
  }
  double dev = max_abs(c.adjoint() * c - ComplexMatrix::Identity(n, n));
  if (dev > 1e-9) {
    throw FormError("circulant gate is not unitary (deviation " + fmt_double(dev) +
                    "); the representation is not trace-orthogonal or U is not unitary");
  }
  return c;
}

ComplexMatrix build_single_group_gate(const SingleGroupExpansion& exp) {
  const ProjectiveRep& g = exp.rep_a;
  const int n = g.order;
  const int db = exp.d_b();
  ComplexMatrix m = ComplexMatrix::Zero(n * db, n * db);
  for (int h = 0; h < n; ++h) {
    for (int f = 0; f < n; ++f) {
      int e = g.sub(f, h);
      ComplexMatrix block = g.omega(h, e) * exp.w_b[static_cast<std::size_t>(e)];
      for (int b = 0; b < db; ++b) {
        for (int bp = 0; bp < db; ++bp) m(h + n * b, f + n * bp) = block(b, bp);
      }
    }
  }
  double dev = max_abs(m.adjoint() * m - ComplexMatrix::Identity(n * db, n * db));
  if (dev > 1e-9) throw FormError("single-group gate M is not unitary (deviation " + fmt_double(dev) + ")");
  return m;
}

}  // namespace qrep
