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

#include "qrep/random.hpp"

#include <cmath>

namespace qrep {

ComplexMatrix random_unitary(int n, Rng& rng) {
  if (n < 1) throw DimensionError("invalid dimension for random unitary");
  ComplexMatrix g(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) g(i, j) = cplx(rng.normal(), rng.normal()) / std::sqrt(2.0);
  }
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(n, n);
  ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    double a = std::abs(r(j, j));
    if (a > 0.0) q.col(j) *= r(j, j) / a;
  }
  return q;
}

QuditState random_state(const std::vector<int>& dims, Rng& rng) {
  auto n = static_cast<Eigen::Index>(total_dimension(dims));
  ComplexVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = cplx(rng.normal(), rng.normal());
  v.normalize();
  return QuditState(dims, std::move(v));
}

}  // namespace qrep
