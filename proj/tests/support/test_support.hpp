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

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "qrep/qudit.hpp"
#include "qrep/rational.hpp"

namespace qrep::testing {

/// Random fraction p/q with 0 < p/q < 1 and q <= max_den.
inline Rational random_fraction(std::mt19937_64& gen, std::int64_t max_den = 97) {
  std::uniform_int_distribution<std::int64_t> den(2, max_den);
  const std::int64_t q = den(gen);
  std::uniform_int_distribution<std::int64_t> num(1, q - 1);
  return Rational(num(gen), q);
}

/// Strictly increasing random positions in (0, 1).
inline std::vector<Rational> random_positions(std::mt19937_64& gen, int n, std::int64_t max_den = 97) {
  while (true) {
    std::vector<Rational> xs;
    for (int i = 0; i < n; ++i) xs.push_back(random_fraction(gen, max_den));
    std::sort(xs.begin(), xs.end());
    bool distinct = true;
    for (int i = 1; i < n; ++i) distinct = distinct && xs[static_cast<std::size_t>(i - 1)] < xs[static_cast<std::size_t>(i)];
    if (distinct) return xs;
  }
}

/// CNOT with control on qudit 0 (A), little-endian basis index a + 2 b.
inline ComplexMatrix cnot_fixture() {
  ComplexMatrix u = ComplexMatrix::Zero(4, 4);
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) u((b ^ a) * 2 + a, b * 2 + a) = 1.0;
  }
  return u;
}

}  // namespace qrep::testing
