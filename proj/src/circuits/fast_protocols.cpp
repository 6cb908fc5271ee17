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
#include "qrep/random.hpp"

namespace qrep {

using detail::controlled;
using detail::Path;
using detail::Register;
using detail::require_input;
using detail::to_branches;

std::optional<std::pair<ComplexMatrix, ComplexMatrix>> factor_product(const ComplexMatrix& q, int d_a, int d_b,
                                                                      double tol) {
  if (q.rows() != d_a * d_b || q.cols() != d_a * d_b) throw DimensionError("factor_product size mismatch");
  // Realignment R[(a,a'),(b,b')] = Q[(a,b),(a',b')] has rank one for products.
  ComplexMatrix r(d_a * d_a, d_b * d_b);
  for (int a = 0; a < d_a; ++a) {
    for (int ap = 0; ap < d_a; ++ap) {
      for (int b = 0; b < d_b; ++b) {
        for (int bp = 0; bp < d_b; ++bp) r(a + d_a * ap, b + d_b * bp) = q(a + d_a * b, ap + d_a * bp);
      }
    }
  }
  Eigen::JacobiSVD<ComplexMatrix> svd(r, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) <= tol) return std::nullopt;
  if (sv.size() > 1 && sv(1) > tol * sv(0)) return std::nullopt;
  ComplexMatrix ka(d_a, d_a);
  ComplexMatrix kb(d_b, d_b);
  for (int a = 0; a < d_a; ++a) {
    for (int ap = 0; ap < d_a; ++ap) ka(a, ap) = svd.matrixU()(a + d_a * ap, 0);
  }
  for (int b = 0; b < d_b; ++b) {
    for (int bp = 0; bp < d_b; ++bp) kb(b, bp) = std::conj(svd.matrixV()(b + d_b * bp, 0));
  }
  double sa = std::sqrt((ka.adjoint() * ka).trace().real() / d_a);
  double sb = std::sqrt((kb.adjoint() * kb).trace().real() / d_b);
  if (sa <= 0.0 || sb <= 0.0) return std::nullopt;
  ka /= sa;
  kb /= sb;
  if (!is_unitary(ka, std::sqrt(tol)) || !is_unitary(kb, std::sqrt(tol))) return std::nullopt;
  return std::make_pair(ka, kb);
}

namespace {

// Operator left on A (x) B by outcomes (r, h) of the character-basis measurements.
ComplexMatrix branch_operator(const DoubleGroupExpansion& exp, const ComplexMatrix& fa, const ComplexMatrix& fb, int r,
                              int h) {
  const int d = exp.d_a() * exp.d_b();
  ComplexMatrix op = ComplexMatrix::Zero(d, d);
  for (int x = 0; x < exp.rep_a.order; ++x) {
    for (int y = 0; y < exp.rep_b.order; ++y) {
      cplx c = exp.coeffs(x, y);
      if (std::abs(c) <= kCoefficientZero) continue;
      op += std::conj(fa(x, r)) * std::conj(fb(y, h)) * c * kron_le(exp.rep_a.matrix(x), exp.rep_b.matrix(y));
    }
  }
  return op;
}

ProtocolRun run_fast_unchecked(const DoubleGroupExpansion& exp, const QuditState& input) {
  const int d_a = exp.d_a();
  const int d_b = exp.d_b();
  require_input(input, d_a, d_b);
  const int na = exp.rep_a.order;
  const int nb = exp.rep_b.order;
  const ComplexMatrix u = exp.unitary();
  const ComplexMatrix fa = exp.rep_a.fourier_basis();
  const ComplexMatrix fb = exp.rep_b.fourier_basis();
  ScopedDimensionCap cap(kCircuitDimensionCap);

  // Resource state proportional to sum c(x, y) |x>_a |y>_b.
  ComplexVector omega(na * nb);
  for (int y = 0; y < nb; ++y) {
    for (int x = 0; x < na; ++x) omega(x + na * y) = exp.coeffs(x, y);
  }
  if (omega.norm() == 0.0) throw ProtocolError("expansion has no nonzero coefficient");
  omega.normalize();

  Register reg(input, {"A", "B"});
  reg.add(QuditState({na, nb}, omega), {"a", "b"});
  reg.apply(controlled(exp.rep_a.matrices), {"a", "A"});
  reg.apply(controlled(exp.rep_b.matrices), {"b", "B"});
  std::vector<Path> paths = detail::measure_paths({Path{reg}}, {"a"}, fa);
  paths = detail::measure_paths(paths, {"b"}, fb);
  for (auto& p : paths) {
    int r = p.outcomes[0];
    int h = p.outcomes[1];
    auto factors = factor_product(branch_operator(exp, fa, fb, r, h) * u.adjoint(), d_a, d_b);
    if (!factors) {
      throw ProtocolError("branch (" + std::to_string(r) + ", " + std::to_string(h) + ") is not locally correctable");
    }
    p.reg.apply(factors->first.adjoint(), {"A"});
    p.reg.apply(factors->second.adjoint(), {"B"});
  }

  ProtocolRun run;
  run.protocol_id = "P5";
  run.branches = to_branches(paths, {"A", "B"});
  const double ba = std::log2(static_cast<double>(na));
  const double bb = std::log2(static_cast<double>(nb));
  run.resources.ebits = 0.5 * (ba + bb);
  run.resources.messages = {{"A", "B", ba, {}, "character outcome"}, {"B", "A", bb, {}, "character outcome"}};
  return run;
}

}  // namespace

ProtocolRun run_protocol5(const DoubleGroupExpansion& exp, const QuditState& input) {
  if (!exp.fast_flag) throw ProtocolError("protocol 5 needs an expansion with fast_flag set (see check_fast_form)");
  return run_fast_unchecked(exp, input);
}

bool check_fast_form(const DoubleGroupExpansion& exp) {
  const int d_a = exp.d_a();
  const int d_b = exp.d_b();
  const ComplexMatrix u = exp.unitary();
  if (!is_unitary(u)) return false;
  const ComplexMatrix fa = exp.rep_a.fourier_basis();
  const ComplexMatrix fb = exp.rep_b.fourier_basis();
  for (int r = 0; r < exp.rep_a.order; ++r) {
    for (int h = 0; h < exp.rep_b.order; ++h) {
      ComplexMatrix op = branch_operator(exp, fa, fb, r, h);
      if (max_abs(op) < 1e-12) continue;
      if (!factor_product(op * u.adjoint(), d_a, d_b)) return false;
    }
  }
  Rng rng(0x5eed);
  for (int trial = 0; trial < 20; ++trial) {
    QuditState input = random_state({d_a, d_b}, rng);
    try {
      if (!verify_exactness(run_fast_unchecked(exp, input), u, input).pass) return false;
    } catch (const ProtocolError&) {
      return false;
    }
  }
  return true;
}

}  // namespace qrep
