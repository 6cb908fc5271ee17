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
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "json.hpp"
#include "qrep/cli.hpp"
#include "test_support.hpp"

using namespace qrep;

namespace {

std::string fixture(const std::string& name) { return std::string(QREP_FIXTURE_DIR) + "/" + name; }

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome run_doc(const std::string& doc) {
  Outcome o;
  std::ostringstream out;
  std::ostringstream err;
  o.code = run(parse_config(doc), out, err);
  o.out = out.str();
  o.err = err.str();
  return o;
}

std::filesystem::path scratch_dir() {
  auto p = std::filesystem::temp_directory_path() / "qrep_test_cli";
  std::filesystem::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("variant and positions map to a catalog variant") {
  const RunConfig c = parse_config("variant = \"3.2\"\npositions = [1/5, 3/5]\n");
  REQUIRE(c.variant.has_value());
  CHECK(c.variant->name() == "P3.2(1/5,3/5)");
  CHECK(c.seed == 0);
  CHECK(parse_config("variant = \"3.2\"\n").variant->name() == "P3.2(1/5,3/5)");
  CHECK(parse_config("variant = \"P9(n=1)\"\n").variant->stub_n == 1);
}

TEST_CASE("misordered positions are an ordering error with the line number") {
  try {
    parse_config(slurp(fixture("p32_reversed.cfg")));
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.line() == 3);
    CHECK(std::string(e.what()).find("ordering error") != std::string::npos);
  }
}

TEST_CASE("strict parsing names misspelled keys") {
  for (const auto& [file, key, line] : {std::tuple{"p32_misspelled.cfg", "postions", 3}, std::tuple{"posver_misspelled.cfg", "verifier", 3}}) {
    try {
      parse_config(slurp(fixture(file)));
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(e.line() == line);
      CHECK(std::string(e.what()).find(std::string("'") + key + "'") != std::string::npos);
    }
  }
}

TEST_CASE("malformed values carry line-numbered diagnostics") {
  CHECK_THROWS_WITH(parse_config("seed = 3\npositions = [1/0]\n"), Catch::Matchers::ContainsSubstring("line 2"));
  CHECK_THROWS_WITH(parse_config("variant = \"P12.4\"\n"), Catch::Matchers::ContainsSubstring("line 1"));
  CHECK_THROWS_WITH(parse_config("variant = \"3.2\"\npositions = [1/5]\n"), Catch::Matchers::ContainsSubstring("arity"));
  CHECK_THROWS_AS(parse_config("positions = [1/5, 3/5]\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("seed =\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("just words\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("format = xml\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("repeaters = 7\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("prover = (1, 2, 3)\n"), ConfigError);
}

TEST_CASE("comments, quotes and decimals") {
  const RunConfig c = parse_config("# header\nseed = 42 # trailing\nprover = (0.5, \"1/4\")\nsvg = \"a#b.svg\"\n");
  CHECK(c.seed == 42);
  CHECK(c.geometry.prover.x == Rational(1, 2));
  CHECK(c.geometry.prover.y == Rational(1, 4));
  CHECK(c.svg_path == std::string("a#b.svg"));
}

TEST_CASE("config round trip on fixtures") {
  for (const char* f : {"p13.cfg", "p32.cfg", "posver_midpoint.cfg", "posver_equilateral.cfg"}) {
    const RunConfig c = parse_config(slurp(fixture(f)));
    CHECK(parse_config(emit_config(c)) == c);
  }
}

TEST_CASE("property: config round trip on random configs") {
  std::mt19937_64 gen(3);
  const auto& catalog = variant_catalog();
  for (int i = 0; i < 200; ++i) {
    RunConfig c;
    c.command = static_cast<Command>(gen() % 7);
    c.format = static_cast<OutputFormat>(gen() % 3);
    c.seed = gen();
    const std::string family = catalog[gen() % catalog.size()];
    const int n = family_repeaters(family);
    ProtocolVariant v{family, {}};
    if (n < 0) {
      v.stub_n = static_cast<int>(gen() % 2);
    } else {
      v.positions = testing::random_positions(gen, n);
    }
    c.variant = v;
    if (gen() % 2) c.svg_path = "out" + std::to_string(i) + ".svg";
    c.cost.redundancy = 1 + static_cast<int>(gen() % 3);
    c.dims = {2 + static_cast<int>(gen() % 2), 2 + static_cast<int>(gen() % 3)};
    c.cost.d_a = c.dims[0];
    c.cost.d_b = c.dims[1] + 1;
    c.protocol = gen() % 2 ? "all" : "P3";
    c.gate = gen() % 2 ? "" : "cnot";
    c.trials = 1 + static_cast<int>(gen() % 30);
    c.family = gen() % 2 ? "" : "P3.2";
    c.method = gen() % 2 ? OptMethod::exact : OptMethod::grid;
    c.mode = gen() % 2 ? "two" : "three";
    c.geometry.verifiers = {{testing::random_fraction(gen), Rational(0)}, {Rational(1), testing::random_fraction(gen)}};
    c.geometry.prover = {testing::random_fraction(gen), testing::random_fraction(gen)};
    c.geometry.delta = testing::random_fraction(gen);
    c.repeaters = static_cast<int>(gen() % 5) - 1;
    c.exact = gen() % 2;
    c.notify_offsets = testing::random_positions(gen, 2);
    INFO(emit_config(c));
    CHECK(parse_config(emit_config(c)) == c);
  }
}

TEST_CASE("config keys cover every module") {
  const auto& keys = config_keys();
  for (const char* k : {"command", "seed", "format", "svg", "variant", "positions", "unitary", "input", "family", "method",
                        "verifiers", "prover", "delta", "repeaters"}) {
    CHECK(std::find(keys.begin(), keys.end(), k) != keys.end());
  }
  for (const auto& k : keys) {
    // A bare key is always rejected, never silently defaulted.
    CHECK_THROWS_WITH(parse_config(k + " =\n"), Catch::Matchers::ContainsSubstring(k));
  }
}

TEST_CASE("bounds command prints the summary table") {
  const Outcome o = run_doc("command = bounds\ntable = true\n");
  CHECK(o.code == kExitOk);
  for (const char* s : {"3/2", "7/5", "7/6", "4/3", "5/4"}) CHECK(o.out.find(s) != std::string::npos);
  CHECK(o.out.find("match=false") == std::string::npos);
}

TEST_CASE("simulate P3 on the CNOT fixture reports every branch passing") {
  const std::string doc = "command = simulate\nprotocol = P3\nunitary = \"" + fixture("cnot.mat") + "\"\ninput = \"" +
                          fixture("plus_zero.state") + "\"\n";
  const Outcome o = run_doc(doc);
  CHECK(o.code == kExitOk);
  std::istringstream lines(o.out);
  std::string line;
  int branches = 0;
  while (std::getline(lines, line)) {
    if (line.rfind("branch ", 0) != 0) continue;
    ++branches;
    CHECK(line.find("overlap=1") != std::string::npos);
  }
  CHECK(branches == 256);
  CHECK(o.out.find("pass=true") != std::string::npos);
  CHECK(o.out.find("pass=false") == std::string::npos);
}

TEST_CASE("simulate with a named gate and all protocols") {
  const Outcome o = run_doc("command = simulate\ngate = cnot\ntrials = 2\n");
  CHECK(o.code == kExitOk);
  CHECK(o.out.find("simulate cases=14 failures=0") != std::string::npos);
}

TEST_CASE("simulate random instances at given dims") {
  const Outcome o = run_doc("command = simulate\ndims = [2, 3]\ntrials = 2\nseed = 5\n");
  CHECK(o.code == kExitOk);
  CHECK(o.out.find("skip protocol=P7") != std::string::npos);
}

TEST_CASE("simulate errors are config errors") {
  CHECK(run_doc("command = simulate\nprotocol = P2\ngate = swap\n").code == kExitConfig);
  CHECK(run_doc("command = simulate\nprotocol = P42\n").code == kExitConfig);
  CHECK(run_doc("command = simulate\nprotocol = P8\ndims = [3, 3]\n").code == kExitConfig);
  CHECK(run_doc("command = simulate\nunitary = \"/nonexistent/u.mat\"\n").code == kExitConfig);
}

TEST_CASE("timeline writes completion, critical path, cost and svg") {
  const auto dir = scratch_dir();
  const auto svg = dir / "p13.svg";
  RunConfig c = parse_config(slurp(fixture("p13.cfg")));
  c.svg_path = svg.string();
  std::ostringstream out;
  std::ostringstream err;
  CHECK(run(c, out, err) == kExitOk);
  CHECK(out.str().find("completion=7/6") != std::string::npos);
  CHECK(out.str().find("critical_path") != std::string::npos);
  CHECK(out.str().find("ebits=8") != std::string::npos);
  const std::string text = slurp(svg.string());
  CHECK(text.find("data-tmax=\"7/6\"") != std::string::npos);
}

TEST_CASE("relative svg paths resolve against the output directory variable") {
  const auto dir = scratch_dir() / "outdir";
  std::filesystem::create_directories(dir);
  ::setenv("QREP_OUTPUT_DIR", dir.c_str(), 1);
  const Outcome o = run_doc("command = timeline\nvariant = \"P1.1\"\nsvg = \"rel.svg\"\n");
  ::unsetenv("QREP_OUTPUT_DIR");
  CHECK(o.code == kExitOk);
  CHECK(std::filesystem::exists(dir / "rel.svg"));
}

TEST_CASE("timeline needs a variant; notify offsets must cover every node") {
  CHECK(run_doc("command = timeline\n").code == kExitConfig);
  CHECK(run_doc("command = timeline\nvariant = \"P1.1\"\nnotify_offsets = [0, 1]\n").code == kExitConfig);
  const Outcome o = run_doc("command = timeline\nvariant = \"P1.1\"\nnotify_offsets = [0, 1/2, 0]\n");
  CHECK(o.code == kExitOk);
  CHECK(o.out.find("completion=2") != std::string::npos);
}

TEST_CASE("optimize prints the minimizer as rationals") {
  const Outcome o = run_doc("command = optimize\nfamily = P3.2\nn = 2\nmethod = exact\n");
  CHECK(o.code == kExitOk);
  CHECK(o.out.find("positions=1/5;3/5") != std::string::npos);
  CHECK(o.out.find("time=7/5") != std::string::npos);
  CHECK(run_doc("command = optimize\nfamily = P3.2\nn = 3\n").code == kExitConfig);
  CHECK(run_doc("command = optimize\n").code == kExitConfig);
}

TEST_CASE("posver fixtures") {
  const Outcome two = run_doc(slurp(fixture("posver_midpoint.cfg")));
  CHECK(two.code == kExitOk);
  CHECK(two.out.find("status=SECURE") != std::string::npos);
  CHECK(two.out.find("attacker_best_time=7/6") != std::string::npos);
  const Outcome three = run_doc(slurp(fixture("posver_equilateral.cfg")));
  CHECK(three.code == kExitOk);
  CHECK(three.out.find("status=SECURE") != std::string::npos);
  CHECK(run_doc("command = posver\nmode = three\n").code == kExitConfig);
}

TEST_CASE("decompose dumps double-group coefficients") {
  const Outcome o = run_doc("command = decompose\ngate = cnot\n");
  CHECK(o.code == kExitOk);
  CHECK(o.out.find("term (0,0,0,0) → (0.5,0)") != std::string::npos);
  CHECK(o.out.find("term (0,1,1,0) → (-0.5,0)") != std::string::npos);
  CHECK(o.out.find("pauli_terms=4") != std::string::npos);
  CHECK(run_doc("command = decompose\n").code == kExitConfig);
}

TEST_CASE("records format: one JSON object per line with string values") {
  const Outcome o = run_doc("command = bounds\nformat = records\n");
  std::istringstream lines(o.out);
  std::string line;
  int n = 0;
  while (std::getline(lines, line)) {
    const auto j = nlohmann::ordered_json::parse(line);
    CHECK(j.begin().key() == "record");
    for (const auto& [k, v] : j.items()) CHECK(v.is_string());
    ++n;
  }
  CHECK(n > 20);
  CHECK(o.out.find("\"upper\":\"7/6\"") != std::string::npos);
}

TEST_CASE("csv format repeats the header when the record type changes") {
  const Outcome o = run_doc("command = bounds\nformat = csv\n");
  CHECK(o.out.rfind("record,quantity,k,lower,upper,status,achiever,engine_time\n", 0) == 0);
  CHECK(o.out.find("record,repeaters,lower,upper,variant,engine_time,match\n") != std::string::npos);
  CHECK(o.out.find("record,k,parity,repeaters,positions,formula_time,engine_time,match\n") != std::string::npos);
}

TEST_CASE("report is byte-identical for the same seed") {
  const std::string doc = "command = report\nformat = records\nseed = 9\n";
  const Outcome a = run_doc(doc);
  const Outcome b = run_doc(doc);
  CHECK(a.code == kExitOk);
  CHECK(a.out == b.out);
  CHECK(a.out.find("\"record\":\"report\",\"pass\":\"true\"") != std::string::npos);
}

TEST_CASE("matrix files") {
  const MatrixDocument m = read_matrix_file(fixture("cnot.mat"));
  CHECK(m.dims == std::vector<int>{2, 2});
  CHECK(max_abs(m.matrix - testing::cnot_fixture()) == 0.0);
  const MatrixDocument back = parse_matrix_text(emit_matrix_text(m));
  CHECK(back.dims == m.dims);
  CHECK(max_abs(back.matrix - m.matrix) == 0.0);
  const MatrixDocument s = read_matrix_file(fixture("plus_zero.state"));
  CHECK(s.matrix.cols() == 1);
  CHECK(std::abs(s.matrix.norm() - 1.0) < 1e-12);
  CHECK(parse_matrix_text("dims = [2]\nrows = 2\ncols = 1\nentries = [(1/2, 0), (0, -0.5)]\n").matrix(1, 0) == cplx(0, -0.5));
  CHECK_THROWS_AS(parse_matrix_text("dims = [2]\nrows = 2\ncols = 2\nentries = [(1, 0)]\n"), ConfigError);
  CHECK_THROWS_AS(parse_matrix_text("dims = [2]\nrows = 3\ncols = 3\nentries = []\n"), ConfigError);
  CHECK_THROWS_AS(parse_matrix_text("dims = [2]\nrows = 2\ncols = 1\nentires = [(1, 0), (0, 0)]\n"), ConfigError);
  CHECK_THROWS_AS(parse_matrix_text("dims = [2]\nrows = 2\ncols = 1\nentries = [(1, x), (0, 0)]\n"), ConfigError);
}

TEST_CASE("inputs too precise for exact arithmetic are config errors") {
  const Outcome o = run_doc(
      "command = posver\nmode = three\nverifiers = [(0, 0), (1, 0), (0.5, 0.866025404)]\n"
      "prover = (0.5, 0.288675134666666)\n");
  CHECK(o.code == kExitConfig);
  CHECK(o.err.find("overflow") != std::string::npos);
}
