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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "qrep/posver.hpp"

using namespace qrep;

namespace {

Geometry2D line(const Rational& prover, const Rational& delta, std::vector<Point2> attacker = {}) {
  Geometry2D g;
  g.verifiers = {{Rational(0), Rational(0)}, {Rational(1), Rational(0)}};
  g.prover = {prover, Rational(0)};
  g.delta = delta;
  g.attacker_nodes = std::move(attacker);
  return g;
}

// Side 1 equilateral triangle with sqrt(3)/2 rounded to 9 digits; prover at its centroid.
Geometry2D equilateral() {
  Geometry2D g;
  const Rational h(866025404, 1000000000);
  g.verifiers = {{Rational(0), Rational(0)}, {Rational(1), Rational(0)}, {Rational(1, 2), h}};
  g.prover = {Rational(1, 2), h / Rational(3)};
  g.delta = Rational(1, 100);
  return g;
}

const std::vector<Point2> kAtVerifiers = {{Rational(0), Rational(0)}, {Rational(1), Rational(0)}};

}  // namespace

TEST_CASE("angle threshold is 2 arcsin(2/3)") {
  CHECK(std::abs(angle_threshold() - 2.0 * std::asin(2.0 / 3.0)) < 1e-10);
  // sin(theta/2) = 2/3 is where 3/2 |AB| equals |AP| + |PB| for |AP| = |PB|.
  CHECK(std::abs(1.5 * 2.0 * std::sin(angle_threshold() / 2.0) - 2.0) < 1e-12);
}

TEST_CASE("two verifiers, midpoint prover, attacker with three repeaters") {
  const Verdict v = two_verifier_verdict(line(Rational(1, 2), Rational(0), kAtVerifiers), 3, true);
  CHECK(v.status == VerdictStatus::secure);
  CHECK(v.secure);
  REQUIRE(v.honest_exact.has_value());
  REQUIRE(v.attacker_exact.has_value());
  CHECK(*v.honest_exact == Rational(1));
  CHECK(*v.attacker_exact == Rational(7, 6));
  CHECK(v.margin == Catch::Approx(1.0 / 6.0));
  CHECK(v.basis.find("7/6") != std::string::npos);
}

TEST_CASE("attacker bound follows the repeater count") {
  const std::vector<Rational> want = {Rational(2), Rational(3, 2), Rational(5, 4), Rational(7, 6)};
  for (int n = 0; n <= 3; ++n) {
    const Verdict v = two_verifier_verdict(line(Rational(1, 2), Rational(0), kAtVerifiers), n, true);
    CHECK(*v.attacker_exact == want[static_cast<std::size_t>(n)]);
  }
}

TEST_CASE("exact-mode gap with an exclusion radius") {
  // delta = L/10: the gap is at least 2 delta = 1/5.
  const Verdict v = two_verifier_verdict(line(Rational(1, 2), Rational(1, 10)), -1, true);
  CHECK(v.status == VerdictStatus::secure);
  CHECK(*v.attacker_exact - *v.honest_exact >= Rational(1, 5));
}

TEST_CASE("attacker nodes hugging the prover leave no bounded gap") {
  // With delta = 0 and end nodes at P the 7/6 factor multiplies a zero span.
  const Verdict v = two_verifier_verdict(line(Rational(1, 2), Rational(0)), 3, true);
  CHECK(v.status == VerdictStatus::insecure);
  CHECK(*v.attacker_exact == Rational(1));
}

TEST_CASE("unbounded repeaters without a radius is unknown") {
  const Verdict v = two_verifier_verdict(line(Rational(1, 2), Rational(0)), -1, true);
  CHECK(v.status == VerdictStatus::unknown);
  CHECK(to_string(v.status) == "UNKNOWN");
}

TEST_CASE("approximate implementations") {
  const Verdict limit = two_verifier_verdict(line(Rational(1, 2), Rational(1, 10)), -1, false);
  CHECK(limit.status == VerdictStatus::insecure_in_limit);
  CHECK(limit.note.find("11 repeaters") != std::string::npos);
  const std::vector<Point2> close = {{Rational(2, 5), Rational(0)}, {Rational(3, 5), Rational(0)}};
  const Verdict undecided = two_verifier_verdict(line(Rational(1, 2), Rational(1, 10), close), -1, false, true);
  CHECK(undecided.status == VerdictStatus::not_decidable);
  CHECK(undecided.note.find("asserted by user") != std::string::npos);
  CHECK(to_string(undecided.status) == "NOT-DECIDABLE-BY-THIS-TOOL");
}

TEST_CASE("three verifiers, equilateral center") {
  const Geometry2D g = equilateral();
  const Verdict v = three_verifier_verdict(g);
  CHECK(v.status == VerdictStatus::secure);
  CHECK(v.honest_time == Catch::Approx(2.0 / std::sqrt(3.0)).epsilon(1e-8));
  CHECK(v.margin > 0.0);
  REQUIRE(v.angles.size() == 3);
  for (double a : v.angles) CHECK(a == Catch::Approx(2.0 * std::acos(-1.0) / 3.0).epsilon(1e-8));
  CHECK(v.note.find("3/2 > 2/sqrt(3)") != std::string::npos);
}

TEST_CASE("three verifiers, prover near a vertex is insecure") {
  Geometry2D g = equilateral();
  g.prover = {Rational(1, 10), Rational(1, 20)};
  g.delta = Rational(0);
  const Verdict v = three_verifier_verdict(g);
  CHECK(v.status == VerdictStatus::insecure);
  CHECK(v.margin < 0.0);
  bool any_below = false;
  for (double a : v.angles) any_below = any_below || a <= angle_threshold();
  CHECK(any_below);
}

TEST_CASE("geometry errors") {
  Geometry2D g = line(Rational(1, 2), Rational(0));
  g.verifiers.pop_back();
  CHECK_THROWS_AS(two_verifier_verdict(g, 3, true), GeometryError);
  CHECK_THROWS_AS(two_verifier_verdict(line(Rational(1, 2), Rational(0)), 4, true), GeometryError);
  Geometry2D off = line(Rational(1, 2), Rational(0));
  off.prover.y = Rational(1, 3);
  CHECK_THROWS_AS(two_verifier_verdict(off, 3, true), GeometryError);
  const std::vector<Point2> inside = {{Rational(1, 2), Rational(0)}, {Rational(1), Rational(0)}};
  CHECK_THROWS_AS(two_verifier_verdict(line(Rational(1, 2), Rational(1, 10), inside), 3, true), GeometryError);
  Geometry2D outside = equilateral();
  outside.prover = {Rational(2), Rational(2)};
  CHECK_THROWS_AS(three_verifier_verdict(outside), GeometryError);
}

TEST_CASE("classical permutation contrast") {
  const ClassicalContrast one = classical_permutation_time(1);
  CHECK(one.classical == Rational(1));
  CHECK(one.unitary_first == Rational(3, 2));
  CHECK(classical_permutation_time(0).classical == Rational(2));
  CHECK(classical_permutation_time(1, Rational(4)).unitary_first == Rational(6));
  CHECK_THROWS_AS(classical_permutation_time(2), GeometryError);
}
