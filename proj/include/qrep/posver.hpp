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
#include <string_view>
#include <vector>

#include "qrep/rational.hpp"

namespace qrep {

class GeometryError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Point2 {
  Rational x;
  Rational y;
  bool operator==(const Point2&) const = default;
};

double distance(const Point2& a, const Point2& b);

/// Verifiers, prover and attacker nodes in the plane. Lengths are in units
/// where c = 1, so times equal path lengths.
struct Geometry2D {
  std::vector<Point2> verifiers;
  Point2 prover;
  /// End nodes A, B followed by repeaters; empty lets the tool place A and B.
  std::vector<Point2> attacker_nodes;
  Rational delta;

  bool operator==(const Geometry2D&) const = default;
};

enum class VerdictStatus { secure, insecure, insecure_in_limit, not_decidable, unknown };

std::string_view to_string(VerdictStatus s);

struct Verdict {
  VerdictStatus status = VerdictStatus::unknown;
  bool secure = false;
  double honest_time = 0.0;
  double attacker_best_time = 0.0;
  double margin = 0.0;
  /// Two-verifier line mode: exact times in units of |V1 V2|.
  std::optional<Rational> honest_exact;
  std::optional<Rational> attacker_exact;
  std::vector<double> angles;  // three-verifier mode, radians
  std::string basis;
  std::string note;
};

/// 2 arcsin(2/3), the angle each verifier pair must exceed at the prover.
double angle_threshold();
constexpr double kAngleGuard = 1e-10;

/// |V1 P| + |P V2| for the first two verifiers.
double honest_time(const Geometry2D& g);

/// `max_repeaters` in 0..3, or -1 for an unbounded count.
/// `capacity_condition` records a user assertion that the channel across the
/// exclusion disk has zero quantum capacity; it is reported, never used.
Verdict two_verifier_verdict(const Geometry2D& g, int max_repeaters, bool exact_mode, bool capacity_condition = false);

Verdict three_verifier_verdict(const Geometry2D& g);

struct ClassicalContrast {
  Rational classical;
  Rational unitary_first;
};

/// Classical permutation task with n in {0,1} middle nodes, scaled by `length`.
ClassicalContrast classical_permutation_time(int n_repeaters, const Rational& length = Rational(1));

}  // namespace qrep
