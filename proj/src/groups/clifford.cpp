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

#include "qrep/group_forms.hpp"

namespace qrep {

bool is_prime(int d) {
  if (d < 2) return false;
  for (int p = 2; p * p <= d; ++p) {
    if (d % p == 0) return false;
  }
  return true;
}

ComplexMatrix pauli_string(const std::vector<int>& jk, int d) {
  if (jk.size() % 2 != 0 || jk.empty()) throw DimensionError("pauli_string needs (j, k) pairs");
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (std::size_t q = 0; q < jk.size() / 2; ++q) out = kron_le(out, pauli_power(d, jk[2 * q], jk[2 * q + 1]));
  return out;
}

std::vector<cplx> pauli_coefficients(const ComplexMatrix& q, int n_qudits, int d) {
  std::size_t count = 1;
  long dim = 1;
  for (int i = 0; i < n_qudits; ++i) {
    count *= static_cast<std::size_t>(d * d);
    dim *= d;
  }
  if (q.rows() != dim || q.cols() != dim) throw DimensionError("operator size does not match qudit count");
  std::vector<cplx> out(count);
  std::vector<int> jk(static_cast<std::size_t>(2 * n_qudits));
  for (std::size_t idx = 0; idx < count; ++idx) {
    std::size_t rem = idx;
    for (auto& v : jk) {
      v = static_cast<int>(rem % static_cast<std::size_t>(d));
      rem /= static_cast<std::size_t>(d);
    }
    out[idx] = (pauli_string(jk, d).adjoint() * q).trace() / static_cast<double>(dim);
  }
  return out;
}

bool is_clifford(const ComplexMatrix& u, int m, int n, int d) {
  if (!is_prime(d)) throw FormError("is_clifford needs prime d, got " + std::to_string(d));
  const int qudits = m + n;
  if (m < 1 || n < 1) throw DimensionError("is_clifford needs m, n >= 1");
  long dim = 1;
  for (int i = 0; i < qudits; ++i) dim *= d;
  if (u.rows() != dim || u.cols() != dim) throw DimensionError("unitary size does not match d^(m+n)");
  if (!is_unitary(u)) return false;
  for (int q = 0; q < qudits; ++q) {
    for (int which = 0; which < 2; ++which) {
      std::vector<int> jk(static_cast<std::size_t>(2 * qudits), 0);
      jk[static_cast<std::size_t>(2 * q + which)] = 1;
      ComplexMatrix conj = u * pauli_string(jk, d) * u.adjoint();
      int big = 0;
      bool unit = false;
      for (const cplx& c : pauli_coefficients(conj, qudits, d)) {
        double a = std::abs(c);
        if (a > 1e-9) {
          ++big;
          unit = std::abs(a - 1.0) < 1e-9;
        }
      }
      if (big != 1 || !unit) return false;
    }
  }
  return true;
}

}  // namespace qrep
