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

#include <string>
#include <vector>

#include "qrep/qudit.hpp"

namespace qrep {

/// Raised when a form, representation or derived gate violates its invariants.
class FormError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr double kCoefficientZero = 1e-10;

/// Projective representation of a finite Abelian group Z_{r0} x Z_{r1} x ...
/// Element index f = e0 + r0*(e1 + r1*(e2 + ...)).
struct ProjectiveRep {
  std::vector<int> radices;
  int order = 0;
  std::vector<std::vector<int>> mult_table;
  std::vector<std::vector<cplx>> factor_phases;
  std::vector<ComplexMatrix> matrices;

  int dim() const { return matrices.empty() ? 0 : static_cast<int>(matrices.front().rows()); }
  int mul(int f, int g) const { return mult_table[static_cast<std::size_t>(f)][static_cast<std::size_t>(g)]; }
  int inverse(int f) const;
  int sub(int f, int g) const { return mul(f, inverse(g)); }
  cplx omega(int f, int g) const { return factor_phases[static_cast<std::size_t>(f)][static_cast<std::size_t>(g)]; }
  const ComplexMatrix& matrix(int f) const { return matrices[static_cast<std::size_t>(f)]; }
  std::vector<int> digits(int f) const;

  /// chi_r(g) = prod_i exp(2 pi i r_i g_i / radix_i).
  cplx character(int r, int g) const;
  /// Column r holds the character basis vector sum_g conj(chi_r(g)) |g> / sqrt(order).
  ComplexMatrix fourier_basis() const;
  /// Index of the element whose matrix equals lambda * m with |lambda| = 1, or -1.
  int find_member(const ComplexMatrix& m, cplx* phase = nullptr, double tol = 1e-9) const;
};

/// Builds M(e) = G_0^{e_0} G_1^{e_1} ... and derives the factor system.
ProjectiveRep rep_from_generators(const std::vector<int>& radices, const std::vector<ComplexMatrix>& generators);

/// Order d^2 representation by X^j Z^k, element j + d*k.
ProjectiveRep pauli_rep(int d);

/// Checks M(f)M(g) = omega(f,g) M(fg) exhaustively; throws FormError.
void validate_rep(const ProjectiveRep& rep, double tol = 1e-9);

struct ControlledForm {
  int d_a = 0;
  int d_b = 0;
  std::vector<ComplexMatrix> projectors;
  std::vector<ComplexMatrix> targets;

  int terms() const { return static_cast<int>(projectors.size()); }
  /// Block index j of computational basis state k on A.
  std::vector<int> block_of_basis() const;
  ComplexMatrix unitary() const;
};

ControlledForm controlled_form(const std::vector<int>& projector_ranks, const std::vector<ComplexMatrix>& targets);
void validate_controlled(const ControlledForm& form, double tol = 1e-9);

/// Expansion over the product group G_A x G_B:
/// U = sum_{x,y} c(x,y) V_A(x) (x) T_B(y). Combined element f = x + |G_A| y.
struct DoubleGroupExpansion {
  ProjectiveRep rep_a;
  ProjectiveRep rep_b;
  ComplexMatrix coeffs;  // |G_A| x |G_B|
  bool fast_flag = false;

  int d_a() const { return rep_a.dim(); }
  int d_b() const { return rep_b.dim(); }
  int order() const { return rep_a.order * rep_b.order; }
  cplx coeff(int f) const { return coeffs(f % rep_a.order, f / rep_a.order); }
  /// Representation of the product group on A (x) B.
  ProjectiveRep combined() const;
  ComplexMatrix unitary() const;
  int nonzero_terms(double tol = kCoefficientZero) const;
};

/// Full generalized-Pauli expansion on both sides.
DoubleGroupExpansion expand_double_group(const ComplexMatrix& u, int d_a, int d_b, bool allow_nonunitary = false);
/// Expansion over caller-supplied representations; throws FormError when the
/// span of V_A (x) T_B does not reproduce U.
DoubleGroupExpansion expand_on_reps(const ComplexMatrix& u, const ProjectiveRep& rep_a, const ProjectiveRep& rep_b);
/// Controlled form with targets R(g_j) of an Abelian representation R,
/// rewritten over the dual group on A times G on B.
DoubleGroupExpansion controlled_abelian_expansion(const ControlledForm& form, const ProjectiveRep& rep_b);

struct SingleGroupExpansion {
  ProjectiveRep rep_a;
  std::vector<ComplexMatrix> w_b;

  int d_a() const { return rep_a.dim(); }
  int d_b() const { return w_b.empty() ? 0 : static_cast<int>(w_b.front().rows()); }
  ComplexMatrix unitary() const;
};

SingleGroupExpansion expand_single_group(const ComplexMatrix& u, int d_a, int d_b);

/// Group-circulant gate C[h,g] = c(g h^-1) omega(h, g h^-1) over the combined group.
ComplexMatrix build_circulant(const DoubleGroupExpansion& exp);

/// Block operator M[h,f] = omega(h, f h^-1) W_B(f h^-1) on (ancilla, B).
ComplexMatrix build_single_group_gate(const SingleGroupExpansion& exp);

bool is_prime(int d);

/// Coefficients tr(P^dagger q)/D over the n-qudit generalized Pauli basis,
/// element index little-endian over (j_0, k_0, j_1, k_1, ...).
std::vector<cplx> pauli_coefficients(const ComplexMatrix& q, int n_qudits, int d);
ComplexMatrix pauli_string(const std::vector<int>& jk, int d);

bool is_clifford(const ComplexMatrix& u, int m, int n, int d);

/// Partial trace over A of a little-endian (A, B) operator.
ComplexMatrix partial_trace_a(const ComplexMatrix& op, int d_a, int d_b);

}  // namespace qrep
