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

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "qrep/cli.hpp"

namespace {

// Command-line flags become `key = value` lines applied after the config file.
struct Overrides {
  std::ostringstream doc;

  void raw(const std::string& key, const std::string& value) { doc << key << " = " << value << "\n"; }
  void str(const std::string& key, const std::string& value) { raw(key, "\"" + value + "\""); }
  void list(const std::string& key, const std::string& csv) { raw(key, "[" + csv + "]"); }
  void point(const std::string& key, const std::string& xy) { raw(key, "(" + xy + ")"); }
  void points(const std::string& key, const std::string& spec) {
    std::string out;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ';')) out += (out.empty() ? "(" : ", (") + item + ")";
    list(key, out);
  }
};

struct Flags {
  std::string config;
  std::string seed;
  std::string format;
  std::string svg;
  std::string protocol;
  std::string unitary;
  std::string input;
  std::string gate;
  std::string dims;
  std::string trials;
  std::string variant;
  std::string positions;
  std::string notify;
  std::string family;
  std::string n;
  std::string method;
  std::string grid;
  bool table = false;
  bool no_table = false;
  std::string mode;
  std::string verifiers;
  std::string prover;
  std::string attacker;
  std::string delta;
  std::string repeaters;
  bool approx = false;
  bool capacity = false;
};

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("--config", f.config, "Config file of key = value lines");
  sub->add_option("--seed", f.seed, "Random seed (default 0)");
  sub->add_option("--format", f.format, "human, records or csv");
}

std::string build_overrides(const std::string& command, const Flags& f) {
  Overrides o;
  o.raw("command", command);
  if (!f.seed.empty()) o.raw("seed", f.seed);
  if (!f.format.empty()) o.raw("format", f.format);
  if (!f.svg.empty()) o.str("svg", f.svg);
  if (!f.protocol.empty()) o.str("protocol", f.protocol);
  if (!f.unitary.empty()) o.str("unitary", f.unitary);
  if (!f.input.empty()) o.str("input", f.input);
  if (!f.gate.empty()) o.str("gate", f.gate);
  if (!f.dims.empty()) o.list("dims", f.dims);
  if (!f.trials.empty()) o.raw("trials", f.trials);
  if (!f.variant.empty()) o.str("variant", f.variant);
  if (!f.positions.empty()) o.list("positions", f.positions);
  if (!f.notify.empty()) o.list("notify_offsets", f.notify);
  if (!f.family.empty()) o.str("family", f.family);
  if (!f.n.empty()) o.raw("n", f.n);
  if (!f.method.empty()) o.str("method", f.method);
  if (!f.grid.empty()) o.raw("grid", f.grid);
  if (f.table) o.raw("table", "true");
  if (f.no_table) o.raw("table", "false");
  if (!f.mode.empty()) o.str("mode", f.mode);
  if (!f.verifiers.empty()) o.points("verifiers", f.verifiers);
  if (!f.prover.empty()) o.point("prover", f.prover);
  if (!f.attacker.empty()) o.points("attacker", f.attacker);
  if (!f.delta.empty()) o.raw("delta", f.delta);
  if (!f.repeaters.empty()) o.str("repeaters", f.repeaters);
  if (f.approx) o.raw("exact", "false");
  if (f.capacity) o.raw("capacity_condition", "true");
  return o.doc.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qrep: distributed bipartite unitaries over repeater chains"};
  app.require_subcommand(1);
  Flags f;

  auto* simulate = app.add_subcommand("simulate", "Run protocol circuits and check every branch");
  add_common(simulate, f);
  simulate->add_option("--protocol", f.protocol, "Protocol id (P1..P8, P8.ladder(q,N)) or all");
  simulate->add_option("--unitary", f.unitary, "Unitary matrix file");
  simulate->add_option("--input", f.input, "Input state file");
  simulate->add_option("--gate", f.gate, "Named gate: cnot, cz, swap, iswap, sum3");
  simulate->add_option("--dims", f.dims, "d_A,d_B for random instances");
  simulate->add_option("--trials", f.trials, "Random trials per protocol");

  auto* timeline = app.add_subcommand("timeline", "Schedule a protocol variant on a repeater line");
  add_common(timeline, f);
  timeline->add_option("--variant", f.variant, "Variant such as 3.2 or P3.2(1/5,3/5)");
  timeline->add_option("--positions", f.positions, "Repeater positions, e.g. 1/5,3/5");
  timeline->add_option("--notify-offsets", f.notify, "Per-node start offsets");
  timeline->add_option("--svg", f.svg, "Write a spacetime diagram");

  auto* optimize = app.add_subcommand("optimize", "Optimize repeater placement for a family");
  add_common(optimize, f);
  optimize->add_option("--family", f.family, "Family such as P3.2");
  optimize->add_option("--n", f.n, "Repeater count");
  optimize->add_option("--method", f.method, "exact or grid");
  optimize->add_option("--grid", f.grid, "Grid resolution q");

  auto* bounds = app.add_subcommand("bounds", "Print time bounds and summary tables");
  add_common(bounds, f);
  bounds->add_flag("--table", f.table, "Include the summary table");
  bounds->add_flag("--no-table", f.no_table, "Bounds only");

  auto* posver = app.add_subcommand("posver", "Position-verification verdicts");
  add_common(posver, f);
  posver->add_option("--mode", f.mode, "two or three");
  posver->add_option("--verifiers", f.verifiers, "Points x,y;x,y");
  posver->add_option("--prover", f.prover, "Point x,y");
  posver->add_option("--attacker", f.attacker, "Attacker nodes x,y;x,y");
  posver->add_option("--delta", f.delta, "Exclusion radius");
  posver->add_option("--repeaters", f.repeaters, "0..3 or unbounded");
  posver->add_flag("--approx", f.approx, "Allow approximate attacker implementations");
  posver->add_flag("--capacity-condition", f.capacity, "Assert zero capacity across the exclusion disk");

  auto* decompose = app.add_subcommand("decompose", "Group expansions and structural checks of a unitary");
  add_common(decompose, f);
  decompose->add_option("--gate", f.gate, "Named gate");
  decompose->add_option("--unitary", f.unitary, "Unitary matrix file");

  auto* report = app.add_subcommand("report", "Full deterministic suite");
  add_common(report, f);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? qrep::kExitOk : qrep::kExitConfig;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  qrep::RunConfig cfg;
  std::string source = f.config;
  try {
    if (!f.config.empty()) {
      std::ifstream in(f.config);
      if (!in) throw qrep::ConfigError(0, "cannot open config '" + f.config + "'");
      std::stringstream ss;
      ss << in.rdbuf();
      cfg = qrep::parse_config(ss.str());
    }
    source = "command-line flags";
    const std::string overrides = build_overrides(command, f);
    try {
      qrep::apply_config(cfg, overrides);
    } catch (const qrep::ConfigError& e) {
      // Line numbers refer to the generated override document, so drop them.
      std::string msg = e.what();
      if (e.line() > 0) msg = msg.substr(msg.find(": ") + 2);
      throw qrep::ConfigError(0, msg);
    }
  } catch (const qrep::ConfigError& e) {
    std::cerr << "config error: " << (source.empty() ? "" : source + ": ") << e.what() << "\n";
    return qrep::kExitConfig;
  }
  return qrep::run(cfg, std::cout, std::cerr);
}
