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

// Acceptance suite: one PASS/FAIL line per criterion, then a summary line.
// Exit status is 0 once every criterion has been evaluated; --strict also
// returns 1 when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qrep/bounds.hpp"
#include "qrep/circuits.hpp"
#include "qrep/cli.hpp"
#include "qrep/instances.hpp"
#include "qrep/posver.hpp"
#include "qrep/random.hpp"
#include "qrep/timeline.hpp"

using namespace qrep;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

struct Criterion {
  int id;
  std::string name;
  double time_limit;  // seconds, 0 for none
  std::function<Outcome()> body;
};

Rational R(std::int64_t n, std::int64_t d = 1) { return Rational(n, d); }

// Checks a catalog variant against an expected completion time.
void expect_time(Outcome& o, const std::string& variant, const Rational& want) {
  const Schedule s = build_schedule(parse_variant(variant));
  o.require(s.completion == want, variant + " gave " + s.completion.str() + " expected " + want.str());
}

Outcome table_reproduction() {
  Outcome o;
  const std::vector<std::pair<std::string, Rational>> rows = {
      {"P1", R(3)},
      {"P1.1(1/2)", R(3, 2)},
      {"P1.2(1/5,3/5)", R(7, 5)},
      {"P3.2(1/5,3/5)", R(7, 5)},
      {"P5.2(1/3,2/3)", R(4, 3)},
      {"P6.2(1/3,2/3)", R(4, 3)},
      {"P7.2(1/3,2/3)", R(4, 3)},
      {"P1.3(1/6,1/2,5/6)", R(7, 6)},
      {"P3.3(1/6,1/2,5/6)", R(7, 6)},
  };
  for (const auto& [v, t] : rows) expect_time(o, v, t);
  // The summary table must name the same upper ends.
  for (const TableRow& row : unitary_time_table()) {
    for (const std::string& v : row.variants) {
      const Rational got = build_schedule(parse_variant(v)).completion;
      o.require(got == row.upper, "table row " + row.label + " variant " + v + " gave " + got.str());
    }
  }
  return o;
}

Outcome per_variant_times() {
  Outcome o;
  const std::vector<std::pair<std::string, Rational>> rows = {
      {"P2", R(3)},
      {"P2.1(1/2)", R(5, 2)},
      {"P2.2(1/7,3/7)", R(15, 7)},
      {"P3", R(3)},
      {"P3.1(1/2)", R(3, 2)},
      {"P3.2(1/3,2/3)", R(5, 3)},
      {"P8", R(3)},
      {"P8.1(1/2)", R(3, 2)},
      {"P8.2(1/5,3/5)", R(7, 5)},
      {"P8.3(1/6,1/2,5/6)", R(7, 6)},
      {"P9(n=1)", R(1)},
  };
  for (const auto& [v, t] : rows) expect_time(o, v, t);
  return o;
}

Outcome optimizer_recovery() {
  Outcome o;
  const std::vector<std::pair<std::string, std::vector<Rational>>> targets = {
      {"P2.2", {R(1, 7), R(3, 7)}},
      {"P3.2", {R(1, 5), R(3, 5)}},
  };
  for (const auto& [family, want] : targets) {
    const Placement exact = optimize_placement(family, 2, OptMethod::exact);
    o.require(exact.positions == want, family + " exact placement differs");
    o.require(exact.time == build_schedule(ProtocolVariant{family, want}).completion, family + " exact time differs from engine");
    const Placement grid = optimize_placement(family, 2, OptMethod::grid, 1000);
    bool close = grid.positions.size() == want.size();
    for (std::size_t i = 0; close && i < want.size(); ++i) {
      close = std::abs(grid.positions[i].to_double() - want[i].to_double()) <= 1e-3;
    }
    o.require(close, family + " grid placement off by more than 1/1000");
    o.require(std::abs(grid.time.to_double() - exact.time.to_double()) <= 1e-3, family + " grid time off by more than 1/1000");
  }
  const std::vector<std::pair<std::vector<Rational>, Rational>> schemes = {
      {{R(1, 3)}, R(4, 3)},
      {{R(1, 7), R(3, 7)}, R(8, 7)},
      {{R(1, 15), R(1, 5), R(7, 15)}, R(16, 15)},
  };
  for (int n = 1; n <= 3; ++n) {
    const RelayScheme s = ts_scheme(n);
    const auto& [pos, time] = schemes[static_cast<std::size_t>(n - 1)];
    o.require(s.positions == pos, "ts_scheme(" + std::to_string(n) + ") positions differ");
    o.require(s.time == time, "ts_scheme(" + std::to_string(n) + ") time " + s.time.str());
    o.require(ts_bound(n) == time, "ts_bound(" + std::to_string(n) + ") differs");
  }
  return o;
}

Outcome many_nodes_check() {
  Outcome o;
  for (Parity parity : {Parity::odd, Parity::even}) {
    const char* tag = parity == Parity::odd ? "odd" : "even";
    Rational prev = R(1000);
    for (int k = 0; k <= 10; ++k) {
      const ManyNodes m = many_nodes(k, parity, k <= 4);
      const std::int64_t p1 = std::int64_t{1} << (k + 1);
      const std::int64_t p2 = std::int64_t{1} << (k + 2);
      const Rational want = parity == Parity::odd ? R(1) + R(1, 2 * (p1 - 1)) : R(p2 - 1, p2 - 3);
      const std::string at = std::string(tag) + " k=" + std::to_string(k);
      o.require(m.formula_time == want, at + " formula " + m.formula_time.str());
      if (k <= 4) o.require(m.engine_checked && m.engine_time == want, at + " engine " + m.engine_time.str());
      o.require(m.formula_time < prev && m.formula_time > R(1), at + " not strictly decreasing toward 1");
      prev = m.formula_time;
    }
  }
  return o;
}

Outcome circuit_exactness() {
  Outcome o;
  Rng rng(20260);
  int runs = 0;
  for (const std::string& p : protocol_ids()) {
    int covered = 0;
    for (auto [da, db] : {std::pair{2, 2}, std::pair{2, 3}, std::pair{3, 3}}) {
      if (!protocol_supports(p, da, db)) continue;
      ++covered;
      for (int t = 0; t < 20; ++t) {
        const ProtocolCase c = run_random_case(p, da, db, rng);
        ++runs;
        const QuditState want(c.input.dims, c.u * c.input.amplitudes);
        double total = 0.0;
        double worst = 1.0;
        for (const Branch& b : c.run.branches) {
          total += b.probability;
          if (b.probability > 1e-14) worst = std::min(worst, overlap(b.output, want));
        }
        const std::string at = p + " (" + std::to_string(da) + "," + std::to_string(db) + ") trial " + std::to_string(t);
        o.require(!c.run.branches.empty(), at + " has no branches");
        o.require(worst >= 1 - 1e-9, at + " overlap " + std::to_string(worst));
        o.require(std::abs(total - 1.0) <= 1e-9, at + " probabilities sum to " + std::to_string(total));
        o.require(c.report.pass, at + " oracle report failed");
      }
    }
    o.require(covered > 0, p + " has no supported dimensions");
  }
  if (o.pass) o.detail = "runs=" + std::to_string(runs);
  return o;
}

Outcome resource_accounting() {
  Outcome o;
  Rng rng(20261);
  for (const std::string p : {"P1", "P2", "P3", "P4", "P5", "P6", "P7"}) {
    for (auto [da, db] : {std::pair{2, 2}, std::pair{3, 3}}) {
      if (!protocol_supports(p, da, db)) continue;
      const ProtocolCase c = run_random_case(p, da, db, rng);
      const ResourceLog& r = c.run.resources;
      o.require(r.ebits > 0 && std::abs(r.cbits() - 2 * r.ebits) < 1e-12, p + " cbits " + std::to_string(r.cbits()) + " ebits " + std::to_string(r.ebits));
    }
  }
  const QuditState in = random_state({2}, rng);
  const ProtocolRun p8 = run_protocol8(0.41, in);
  const auto& msgs = p8.resources.messages;
  o.require(p8.resources.ebits == 1.0, "P8 ebits " + std::to_string(p8.resources.ebits));
  o.require(msgs.size() == 2 && p8.resources.cbits() == 2.0, "P8 does not send exactly two c-bits");
  if (msgs.size() == 2) o.require(msgs[0].from == msgs[1].to && msgs[0].to == msgs[1].from, "P8 c-bits not in opposite directions");
  for (int t = 0; t < 5; ++t) {
    const ComplexMatrix u = random_unitary(4, rng);
    const QuditState s = random_state({2, 2}, rng);
    const ProtocolCase p3 = run_fixed_case("P3", u, 2, 2, s);
    const ProtocolCase p4 = run_fixed_case("P4", u, 2, 2, s);
    o.require(p4.run.resources.ebits == 2.0 && p3.run.resources.ebits == 4.0,
              "P4/P3 ebits " + std::to_string(p4.run.resources.ebits) + "/" + std::to_string(p3.run.resources.ebits));
  }
  return o;
}

Outcome round_structure() {
  Outcome o;
  Rng rng(20262);
  for (const std::string p : {"P5", "P6", "P7"}) {
    for (auto [da, db] : {std::pair{2, 2}, std::pair{3, 3}}) {
      if (!protocol_supports(p, da, db)) continue;
      const ResourceLog r = run_random_case(p, da, db, rng).run.resources;
      o.require(r.rounds() == 1 && r.single_parallel_round(), p + " rounds " + std::to_string(r.rounds()));
    }
  }
  for (const std::string p : {"P2", "P3", "P4"}) {
    const ResourceLog r = run_random_case(p, 2, 2, rng).run.resources;
    o.require(r.rounds() >= 2, p + " rounds " + std::to_string(r.rounds()));
  }
  return o;
}

Outcome position_verification() {
  Outcome o;
  Geometry2D tri;
  const Rational h(866025404, 1000000000);
  tri.verifiers = {{R(0), R(0)}, {R(1), R(0)}, {R(1, 2), h}};
  tri.prover = {R(1, 2), h / R(3)};
  tri.delta = R(1, 100);
  const Verdict v3 = three_verifier_verdict(tri);
  o.require(v3.status == VerdictStatus::secure, "equilateral centre not secure");
  o.require(std::abs(v3.honest_time - 2.0 / std::sqrt(3.0)) < 1e-6, "equilateral honest time " + std::to_string(v3.honest_time));
  o.require(v3.margin > 0.0, "equilateral margin not positive");

  Geometry2D line;
  line.verifiers = {{R(0), R(0)}, {R(1), R(0)}};
  line.prover = {R(1, 2), R(0)};
  line.attacker_nodes = line.verifiers;
  const Verdict v2 = two_verifier_verdict(line, 3, true);
  o.require(v2.status == VerdictStatus::secure, "midpoint with three repeaters not secure");
  o.require(v2.honest_exact && *v2.honest_exact == R(1), "midpoint honest time not 1");
  o.require(v2.attacker_exact && *v2.attacker_exact == R(7, 6), "midpoint attacker bound not 7/6");

  const DeltaTReport dt = delta_t_bound(R(1), R(1, 10), true);
  o.require(dt.bound >= R(1, 5), "exact-mode gap bound " + dt.bound.str());

  // Independent form: 2 atan(2 / sqrt(5)) equals 2 arcsin(2/3).
  const double oracle = 2.0 * std::atan2(2.0, std::sqrt(5.0));
  o.require(std::abs(angle_threshold() - oracle) <= 1e-10, "angle threshold differs from oracle");
  return o;
}

Outcome formula_cross_validation() {
  Outcome o;
  std::mt19937_64 gen(20263);
  auto positions = [&gen](std::int64_t max_den) {
    std::uniform_int_distribution<std::int64_t> den(3, max_den);
    while (true) {
      const std::int64_t q = den(gen);
      std::uniform_int_distribution<std::int64_t> num(1, q - 1);
      Rational a(num(gen), q);
      Rational b(num(gen), q);
      if (a == b) continue;
      if (b < a) std::swap(a, b);
      return std::vector<Rational>{a, b};
    }
  };
  for (int i = 0; i < 1000; ++i) {
    const auto xs = positions(500);
    const Rational engine = build_schedule(ProtocolVariant{"P3.2", xs}).completion;
    const Rational formula = schedule_formula_p32(xs[0], xs[1]);
    if (engine != formula) {
      o.require(false, "P3.2 at " + xs[0].str() + "," + xs[1].str() + " engine " + engine.str() + " formula " + formula.str());
      break;
    }
  }
  std::map<int, int> seen;
  int guard = 0;
  while ((seen[1] < 100 || seen[2] < 100 || seen[3] < 100) && ++guard < 500000) {
    const auto xs = positions(400);
    const int region = p22_region(xs[0], xs[1]);
    if (seen[region] >= 100) continue;
    ++seen[region];
    const Rational engine = build_schedule(ProtocolVariant{"P2.2", xs}).completion;
    if (engine != schedule_formula_p22(xs[0], xs[1])) {
      o.require(false, "P2.2 region " + std::to_string(region) + " mismatch at " + xs[0].str() + "," + xs[1].str());
      break;
    }
  }
  for (int r = 1; r <= 3; ++r) o.require(seen[r] == 100, "P2.2 region " + std::to_string(r) + " sampled " + std::to_string(seen[r]));
  return o;
}

Outcome determinism() {
  Outcome o;
  RunConfig cfg;
  cfg.command = Command::report;
  cfg.format = OutputFormat::records;
  cfg.seed = 7;
  std::ostringstream out1, out2, err;
  const int rc1 = run(cfg, out1, err);
  const int rc2 = run(cfg, out2, err);
  o.require(rc1 == rc2, "exit codes differ between runs");
  o.require(!out1.str().empty(), "report produced no records");
  o.require(out1.str() == out2.str(), "record outputs differ between runs");
  if (o.pass) o.detail = "bytes=" + std::to_string(out1.str().size());
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const bool strict = argc > 1 && std::strcmp(argv[1], "--strict") == 0;
  const std::vector<Criterion> criteria = {
      {1, "summary-table-times", 1.0, table_reproduction},
      {2, "per-variant-times", 0.0, per_variant_times},
      {3, "placement-optimizer", 10.0, optimizer_recovery},
      {4, "many-node-chains", 0.0, many_nodes_check},
      {5, "circuit-exactness", 60.0, circuit_exactness},
      {6, "resource-accounting", 0.0, resource_accounting},
      {7, "round-structure", 0.0, round_structure},
      {8, "position-verification", 0.0, position_verification},
      {9, "engine-formula-agreement", 0.0, formula_cross_validation},
      {10, "determinism", 0.0, determinism},
  };
  int passed = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit > 0 && secs >= c.time_limit) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "runtime %.3fs over limit %.0fs", secs, c.time_limit);
      o.require(false, buf);
    }
    if (o.pass) ++passed;
    std::printf("criterion %d %s %s time=%.3fs%s%s\n", c.id, o.pass ? "PASS" : "FAIL", c.name.c_str(), secs,
                o.detail.empty() ? "" : " detail=", o.detail.c_str());
  }
  const int total = static_cast<int>(criteria.size());
  std::printf("acceptance criteria=%d passed=%d failed=%d\n", total, passed, total - passed);
  return strict && passed != total ? 1 : 0;
}
