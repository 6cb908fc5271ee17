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

#include <algorithm>
#include <cmath>

#include "qrep/bounds.hpp"

using namespace qrep;

namespace {

Rational engine(const std::string& family, const std::vector<Rational>& xs) {
  return build_schedule(ProtocolVariant{family, xs}).completion;
}

}  // namespace

TEST_CASE("one-way transmission bounds") {
  CHECK(ts_bound(0) == Rational(2));
  CHECK(ts_bound(1) == Rational(4, 3));
  CHECK(ts_bound(2) == Rational(8, 7));
  CHECK(ts_bound(3) == Rational(16, 15));
  CHECK_THROWS_AS(ts_bound(4), BoundsError);
  CHECK(ts_bound(4, true) == Rational(32, 31));
  CHECK(transmission_bounds(4, true).status == "conjectured");
  CHECK(transmission_bounds(2).status == "proved");
}

TEST_CASE("relay schemes attain the transmission bounds") {
  const std::vector<std::vector<Rational>> want = {
      {}, {Rational(1, 3)}, {Rational(1, 7), Rational(3, 7)}, {Rational(1, 15), Rational(1, 5), Rational(7, 15)}};
  for (int n = 0; n <= 3; ++n) {
    const RelayScheme s = ts_scheme(n);
    CHECK(s.positions == want[static_cast<std::size_t>(n)]);
    CHECK(s.time == ts_bound(n));
  }
  CHECK_THROWS_AS(ts_scheme(4), BoundsError);
}

TEST_CASE("no grid placement beats the relay scheme") {
  for (int i = 1; i < 60; ++i) {
    CHECK(build_one_way_relay(LineTopology::with_repeaters({Rational(i, 60)})).completion >= Rational(4, 3));
  }
  for (int i = 1; i < 42; ++i) {
    for (int j = i + 1; j < 42; ++j) {
      CHECK(build_one_way_relay(LineTopology::with_repeaters({Rational(i, 42), Rational(j, 42)})).completion >= Rational(8, 7));
    }
  }
}

TEST_CASE("unitary time bounds by repeater count") {
  CHECK(theorem_bounds(0).lower == Rational(2));
  CHECK(theorem_bounds(0).upper == Rational(3));
  CHECK(theorem_bounds(1).upper == Rational(3, 2));
  CHECK(theorem_bounds(2).lower == Rational(5, 4));
  CHECK(theorem_bounds(2).upper == Rational(7, 5));
  CHECK(theorem_bounds(3).upper == Rational(7, 6));
  CHECK_THROWS_AS(theorem_bounds(4), BoundsError);
  for (int k = 0; k <= 3; ++k) {
    const BoundRecord r = theorem_bounds(k);
    CHECK(r.lower <= r.upper);
    CHECK(build_schedule(parse_variant(*r.achieving_variant)).completion == r.upper);
  }
}

TEST_CASE("summary table rows are consistent with the engine") {
  for (const TableRow& row : unitary_time_table()) {
    CHECK(row.lower <= row.upper);
    for (const auto& v : row.variants) CHECK(build_schedule(parse_variant(v)).completion == row.upper);
  }
}

TEST_CASE("many-node formulas for k up to 10, engine-confirmed for k up to 4") {
  for (int k = 0; k <= 10; ++k) {
    const std::int64_t p1 = std::int64_t{1} << (k + 1);
    const std::int64_t p2 = std::int64_t{1} << (k + 2);
    CHECK(many_nodes_time(k, Parity::odd) == Rational(1) + Rational(1, 2 * (p1 - 1)));
    CHECK(many_nodes_time(k, Parity::even) == Rational(p2 - 1, p2 - 3));
    const ManyNodes odd = many_nodes(k, Parity::odd, k <= 4);
    const ManyNodes even = many_nodes(k, Parity::even, k <= 4);
    CHECK(odd.positions.size() == static_cast<std::size_t>(2 * k + 1));
    CHECK(even.positions.size() == static_cast<std::size_t>(2 * k));
    if (k <= 4) {
      CHECK(odd.engine_checked);
      CHECK(odd.engine_time == odd.formula_time);
      CHECK(even.engine_time == even.formula_time);
    }
  }
}

TEST_CASE("many-node times strictly decrease toward one as nodes are added") {
  Rational prev(100);
  for (int nodes = 0; nodes <= 21; ++nodes) {
    const Parity p = nodes % 2 ? Parity::odd : Parity::even;
    const Rational t = many_nodes_time(p == Parity::odd ? (nodes - 1) / 2 : nodes / 2, p);
    CHECK(t < prev);
    CHECK(t > Rational(1));
    prev = t;
  }
  CHECK(prev - Rational(1) < Rational(1, 1000));
}

TEST_CASE("property: objective pieces agree with the engine on random placements") {
  std::uint64_t state = 99;
  auto next = [&](std::int64_t q) {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    return static_cast<std::int64_t>((state >> 33) % static_cast<std::uint64_t>(q - 1)) + 1;
  };
  for (const std::string& family : variant_catalog()) {
    const int n = family_repeaters(family);
    if (n < 1) continue;
    const auto pieces = objective_pieces(family);
    for (int t = 0; t < 40; ++t) {
      std::vector<Rational> xs;
      std::int64_t q = 101;
      std::vector<std::int64_t> picks;
      while (static_cast<int>(picks.size()) < n) {
        const std::int64_t v = next(q);
        if (std::find(picks.begin(), picks.end(), v) == picks.end()) picks.push_back(v);
      }
      std::sort(picks.begin(), picks.end());
      for (auto v : picks) xs.emplace_back(v, q);
      INFO(family);
      CHECK(objective_value(pieces, xs) == engine(family, xs));
    }
  }
}

TEST_CASE("exact optimizer recovers the known placements") {
  const Placement p22 = optimize_placement("P2.2", 2, OptMethod::exact);
  CHECK(p22.positions == std::vector<Rational>{Rational(1, 7), Rational(3, 7)});
  CHECK(p22.time == Rational(15, 7));
  const Placement p32 = optimize_placement("P3.2", 2, OptMethod::exact);
  CHECK(p32.positions == std::vector<Rational>{Rational(1, 5), Rational(3, 5)});
  CHECK(p32.time == Rational(7, 5));
  const Placement p52 = optimize_placement("P5.2", 2, OptMethod::exact);
  CHECK(p52.positions == std::vector<Rational>{Rational(1, 3), Rational(2, 3)});
  CHECK(p52.time == Rational(4, 3));
  const Placement p33 = optimize_placement("P3.3", 3, OptMethod::exact);
  CHECK(p33.positions == std::vector<Rational>{Rational(1, 6), Rational(1, 2), Rational(5, 6)});
  CHECK(p33.time == Rational(7, 6));
}

TEST_CASE("single-repeater controlled variant is fastest at one third") {
  const Placement p = optimize_placement("P2.1", 1, OptMethod::exact);
  CHECK(p.positions == std::vector<Rational>{Rational(1, 3)});
  CHECK(p.time == Rational(7, 3));
  CHECK(engine("P2.1", {Rational(1, 2)}) == Rational(5, 2));
}

TEST_CASE("exact optimum is not beaten on a fine grid") {
  for (const std::string family : {"P2.2", "P3.2", "P1.2", "P8.2"}) {
    const Placement best = optimize_placement(family, 2, OptMethod::exact);
    const auto pieces = objective_pieces(family);
    for (int i = 1; i < 70; ++i) {
      for (int j = i + 1; j < 70; ++j) {
        CHECK(objective_value(pieces, {Rational(i, 70), Rational(j, 70)}) >= best.time);
      }
    }
  }
}

TEST_CASE("grid mode agrees with exact mode within 1/1000") {
  for (const std::string family : {"P2.2", "P3.2", "P5.2"}) {
    const Placement exact = optimize_placement(family, 2, OptMethod::exact);
    const Placement grid = optimize_placement(family, 2, OptMethod::grid, 200);
    CHECK(std::abs((grid.time - exact.time).to_double()) <= 1e-3);
    for (std::size_t i = 0; i < 2; ++i) {
      CHECK(std::abs((grid.positions[i] - exact.positions[i]).to_double()) <= 1e-3);
    }
  }
}

TEST_CASE("optimizer argument checks") {
  CHECK_THROWS(optimize_placement("P3.2", 3, OptMethod::exact));
  CHECK_THROWS(optimize_placement("P1", 0, OptMethod::exact));
}

TEST_CASE("delta t bound") {
  const DeltaTReport exact = delta_t_bound(Rational(1), Rational(1, 10), true);
  CHECK_FALSE(exact.zero_limit);
  CHECK(exact.bound == Rational(1, 5));
  const DeltaTReport approx = delta_t_bound(Rational(1), Rational(1, 10), false);
  CHECK(approx.zero_limit);
  CHECK(approx.bound == Rational(0));
  CHECK(approx.witness_nodes == 11);
  CHECK(approx.witness_excess < Rational(1, 100));
  CHECK_FALSE(delta_t_bound(Rational(1), Rational(1, 10), false, 5).witness_within_limit);
  CHECK_THROWS_AS(delta_t_bound(Rational(1), Rational(1, 5), false), BoundsError);
  CHECK_THROWS_AS(delta_t_bound(Rational(0), Rational(0), true), BoundsError);
}
