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
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "json.hpp"
#include "qrep/circuits.hpp"
#include "qrep/cli.hpp"
#include "qrep/group_forms.hpp"
#include "qrep/instances.hpp"

namespace qrep {
namespace {

using Fields = std::vector<std::pair<std::string, std::string>>;

// Values below 1e-12 in magnitude print as 0 so rounding noise stays out of records.
std::string fmt_double(double v) {
  if (std::abs(v) < 1e-12) v = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string fmt_bool(bool b) { return b ? "true" : "false"; }

std::string fmt_list(const std::vector<Rational>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ";" : "") + xs[i].str();
  return s;
}

std::string fmt_ints(const std::vector<int>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ";" : "") + std::to_string(xs[i]);
  return s;
}

std::string csv_cell(const std::string& v) {
  if (v.find_first_of(",\"\n") == std::string::npos) return v;
  std::string q = "\"";
  for (char ch : v) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

// Writes typed records in one of three formats. CSV repeats its header
// whenever the record type or field list changes.
class Emitter {
 public:
  Emitter(OutputFormat format, std::ostream& out) : format_(format), out_(out) {}

  // `human_line` replaces the default human rendering when given.
  void emit(const std::string& type, const Fields& fields, const std::string& human_line = {}) {
    switch (format_) {
      case OutputFormat::human: {
        if (!human_line.empty()) {
          out_ << type << ' ' << human_line << '\n';
          break;
        }
        out_ << type;
        for (const auto& [k, v] : fields) {
          out_ << ' ' << k << '=';
          if (v.find(' ') != std::string::npos) {
            out_ << '"' << v << '"';
          } else {
            out_ << v;
          }
        }
        out_ << '\n';
        break;
      }
      case OutputFormat::records: {
        nlohmann::ordered_json j;
        j["record"] = type;
        for (const auto& [k, v] : fields) j[k] = v;
        out_ << j.dump() << '\n';
        break;
      }
      case OutputFormat::csv: {
        std::string header = "record";
        for (const auto& [k, v] : fields) header += "," + k;
        if (header + type != last_header_) {
          out_ << header << '\n';
          last_header_ = header + type;
        }
        out_ << csv_cell(type);
        for (const auto& [k, v] : fields) out_ << ',' << csv_cell(v);
        out_ << '\n';
        break;
      }
    }
  }

 private:
  OutputFormat format_;
  std::ostream& out_;
  std::string last_header_;
};

std::filesystem::path output_path(const std::string& path) {
  std::filesystem::path p(path);
  if (p.is_relative()) {
    if (const char* dir = std::getenv("QREP_OUTPUT_DIR"); dir != nullptr && *dir != '\0') return std::filesystem::path(dir) / p;
  }
  return p;
}

void write_file(const std::string& path, const std::string& content) {
  const auto p = output_path(path);
  std::ofstream f(p, std::ios::binary);
  if (!f) throw ConfigError(0, "cannot write '" + p.string() + "'");
  f << content;
}

// Bounds

bool emit_bounds(Emitter& em, bool table) {
  bool ok = true;
  for (int n = 0; n <= 4; ++n) {
    const BoundRecord r = transmission_bounds(n, n > 3);
    Fields f = {{"quantity", r.quantity}, {"k", std::to_string(n)}, {"lower", r.lower.str()}, {"upper", r.upper.str()},
                {"status", r.status}, {"achiever", r.achieving_variant.value_or("-")}};
    if (n <= 3) {
      const Rational t = ts_scheme(n).time;
      f.emplace_back("engine_time", t.str());
      ok = ok && t == r.upper;
    }
    em.emit("bound", f);
  }
  for (int k = 0; k <= 3; ++k) {
    const BoundRecord r = theorem_bounds(k);
    const Rational t = build_schedule(parse_variant(*r.achieving_variant)).completion;
    ok = ok && t == r.upper;
    em.emit("bound", {{"quantity", r.quantity},
                      {"k", std::to_string(k)},
                      {"lower", r.lower.str()},
                      {"upper", r.upper.str()},
                      {"status", r.status},
                      {"achiever", *r.achieving_variant},
                      {"engine_time", t.str()}});
  }
  if (table) {
    for (const TableRow& row : unitary_time_table()) {
      for (const std::string& v : row.variants) {
        const Rational t = build_schedule(parse_variant(v)).completion;
        const bool match = t == row.upper;
        ok = ok && match;
        em.emit("table", {{"repeaters", row.label},
                          {"lower", row.lower.str()},
                          {"upper", row.upper.str()},
                          {"variant", v},
                          {"engine_time", t.str()},
                          {"match", fmt_bool(match)}});
      }
    }
    for (int k = 0; k <= 4; ++k) {
      for (Parity p : {Parity::odd, Parity::even}) {
        const ManyNodes m = many_nodes(k, p);
        const bool match = m.engine_time == m.formula_time;
        ok = ok && match;
        em.emit("many_nodes", {{"k", std::to_string(k)},
                               {"parity", p == Parity::odd ? "odd" : "even"},
                               {"repeaters", std::to_string(m.positions.size())},
                               {"positions", fmt_list(m.positions)},
                               {"formula_time", m.formula_time.str()},
                               {"engine_time", m.engine_time.str()},
                               {"match", fmt_bool(match)}});
      }
    }
  }
  return ok;
}

// Timeline

Schedule schedule_for(const RunConfig& cfg) {
  if (!cfg.variant) throw ConfigError(0, "timeline needs a variant");
  Schedule s = build_schedule(*cfg.variant);
  if (cfg.notify_offsets.empty()) return s;
  LineTopology topo = s.topology;
  if (cfg.notify_offsets.size() != topo.positions.size()) {
    throw ConfigError(0, "notify_offsets needs " + std::to_string(topo.positions.size()) + " entries, got " +
                             std::to_string(cfg.notify_offsets.size()));
  }
  topo.notify_offsets = cfg.notify_offsets;
  return build_schedule(*cfg.variant, topo);
}

void emit_schedule(Emitter& em, const Schedule& s, const CostParams& cost, bool events) {
  const CostReport c = cost_report(s, cost);
  em.emit("schedule", {{"variant", s.variant},
                       {"repeaters", std::to_string(s.topology.repeaters())},
                       {"positions", fmt_list(std::vector<Rational>(s.topology.positions.begin() + 1, s.topology.positions.end() - 1))},
                       {"completion", s.completion.str()},
                       {"completion_decimal", fmt_double(s.completion.to_double())},
                       {"events", std::to_string(s.events.size())},
                       {"ebits", fmt_double(c.ebits)},
                       {"cbits", fmt_double(c.cbits)}});
  if (!events) return;
  for (const Event& e : s.events) {
    em.emit("event", {{"id", std::to_string(e.id)},
                      {"kind", std::string(to_string(e.kind))},
                      {"from", s.topology.node_name(e.from)},
                      {"to", s.topology.node_name(e.to)},
                      {"start", e.start.str()},
                      {"end", e.end.str()},
                      {"depends", fmt_ints(e.depends_on)},
                      {"label", e.label}});
  }
  em.emit("critical_path", {{"events", fmt_ints(critical_path(s))}});
  for (const LinkCost& l : c.entanglement_links) {
    em.emit("link", {{"a", s.topology.node_name(l.a)}, {"b", s.topology.node_name(l.b)}, {"ebits", fmt_double(l.ebits)}});
  }
}

int cmd_timeline(const RunConfig& cfg, Emitter& em) {
  const Schedule s = schedule_for(cfg);
  emit_schedule(em, s, cfg.cost, true);
  if (cfg.svg_path) {
    write_file(*cfg.svg_path, emit_spacetime_svg(s));
    em.emit("svg", {{"path", output_path(*cfg.svg_path).string()}});
  }
  return kExitOk;
}

// Optimize

void emit_placement(Emitter& em, const Placement& p, OptMethod method) {
  em.emit("placement", {{"family", p.family},
                        {"method", method == OptMethod::exact ? "exact" : "grid"},
                        {"positions", fmt_list(p.positions)},
                        {"time", p.time.str()},
                        {"time_decimal", fmt_double(p.time.to_double())},
                        {"interior", fmt_bool(p.interior)},
                        {"candidates", std::to_string(p.candidates)}});
}

int cmd_optimize(const RunConfig& cfg, Emitter& em) {
  if (cfg.family.empty()) throw ConfigError(0, "optimize needs a family");
  const std::string family = normalize_family(cfg.family);
  const int need = family_repeaters(family);
  const int n = cfg.n >= 0 ? cfg.n : need;
  if (n != need) {
    throw ConfigError(0, "arity mismatch: " + family + " takes " + std::to_string(need) + " repeaters, got " + std::to_string(n));
  }
  if (n <= 0) throw ConfigError(0, family + " has no repeater positions to optimize");
  emit_placement(em, optimize_placement(family, n, cfg.method, cfg.grid_q), cfg.method);
  return kExitOk;
}

// Simulate and decompose

struct FixedGate {
  ComplexMatrix u;
  int d_a = 0;
  int d_b = 0;
  std::string name;
};

std::optional<FixedGate> fixed_gate(const RunConfig& cfg) {
  if (!cfg.gate.empty() && !cfg.unitary_path.empty()) throw ConfigError(0, "give either gate or unitary, not both");
  FixedGate g;
  if (!cfg.gate.empty()) {
    g.u = named_gate(cfg.gate, &g.d_a, &g.d_b);
    g.name = cfg.gate;
    return g;
  }
  if (!cfg.unitary_path.empty()) {
    const MatrixDocument doc = read_matrix_file(cfg.unitary_path);
    if (doc.dims.size() != 2) throw ConfigError(0, "unitary file must list two dims");
    if (doc.matrix.cols() != doc.matrix.rows()) throw ConfigError(0, "unitary file holds a state, not a square matrix");
    g.u = doc.matrix;
    g.d_a = doc.dims[0];
    g.d_b = doc.dims[1];
    g.name = cfg.unitary_path;
    return g;
  }
  return std::nullopt;
}

std::optional<QuditState> fixed_input(const RunConfig& cfg, int d_a, int d_b) {
  if (cfg.input_path.empty()) return std::nullopt;
  const MatrixDocument doc = read_matrix_file(cfg.input_path);
  if (doc.matrix.cols() != 1) throw ConfigError(0, "input file must hold a single column");
  if (doc.dims != std::vector<int>{d_a, d_b}) throw ConfigError(0, "input dims do not match the unitary");
  const ComplexVector v = doc.matrix.col(0);
  if (std::abs(v.norm() - 1.0) > 1e-9) throw ConfigError(0, "input state is not normalized");
  return QuditState(doc.dims, v);
}

bool emit_case(Emitter& em, const ProtocolCase& c, int trial, bool branches) {
  const ResourceLog& r = c.run.resources;
  if (branches) {
    for (std::size_t i = 0; i < c.run.branches.size(); ++i) {
      const Branch& b = c.run.branches[i];
      em.emit("branch", {{"protocol", c.protocol},
                         {"trial", std::to_string(trial)},
                         {"branch", std::to_string(i)},
                         {"outcomes", fmt_ints(b.outcomes)},
                         {"probability", fmt_double(b.probability)},
                         {"overlap", fmt_double(i < c.report.overlaps.size() ? c.report.overlaps[i] : 0.0)}});
    }
  }
  em.emit("case", {{"protocol", c.protocol},
                   {"d_a", std::to_string(c.d_a)},
                   {"d_b", std::to_string(c.d_b)},
                   {"trial", std::to_string(trial)},
                   {"branches", std::to_string(c.run.branches.size())},
                   {"min_overlap", fmt_double(c.report.min_overlap)},
                   {"probability_deviation", fmt_double(c.report.probability_deviation)},
                   {"ebits", fmt_double(r.ebits)},
                   {"cbits", fmt_double(r.cbits())},
                   {"rounds", std::to_string(r.rounds())},
                   {"single_parallel_round", fmt_bool(r.single_parallel_round())},
                   {"pass", fmt_bool(c.report.pass)}});
  return c.report.pass;
}

const std::vector<std::string> kFixedProtocols = {"P1", "P2", "P3", "P4", "P5", "P6", "P7"};

struct SimTally {
  int cases = 0;
  int failures = 0;
  int skipped = 0;
};

void simulate_into(Emitter& em, const RunConfig& cfg, const std::vector<int>& dims, int trials, Rng& rng, SimTally& tally,
                   bool branches) {
  const bool all = cfg.protocol == "all";
  const auto fixed = fixed_gate(cfg);
  if (!fixed && !cfg.input_path.empty()) throw ConfigError(0, "input needs a gate or unitary");
  if (fixed) {
    const auto given = fixed_input(cfg, fixed->d_a, fixed->d_b);
    if (given) trials = 1;
    const std::vector<std::string> protocols = all ? kFixedProtocols : std::vector<std::string>{cfg.protocol};
    for (const std::string& p : protocols) {
      for (int t = 0; t < trials; ++t) {
        const QuditState input = given ? *given : random_state({fixed->d_a, fixed->d_b}, rng);
        ProtocolCase c;
        try {
          c = run_fixed_case(p, fixed->u, fixed->d_a, fixed->d_b, input);
        } catch (const std::exception& e) {
          if (!all) throw ConfigError(0, p + " is not applicable to " + fixed->name + ": " + e.what());
          em.emit("skip", {{"protocol", p}, {"reason", e.what()}});
          ++tally.skipped;
          break;
        }
        ++tally.cases;
        if (!emit_case(em, c, t, branches)) ++tally.failures;
      }
    }
    return;
  }
  if (dims.size() != 2) throw ConfigError(0, "dims must list d_A and d_B");
  const std::vector<std::string> protocols = all ? protocol_ids() : std::vector<std::string>{cfg.protocol};
  for (const std::string& p : protocols) {
    if (std::find(protocol_ids().begin(), protocol_ids().end(), p) == protocol_ids().end()) {
      throw ConfigError(0, "unknown protocol '" + p + "'");
    }
    if (!protocol_supports(p, dims[0], dims[1])) {
      if (!all) throw ConfigError(0, p + " has no random instances at dims " + fmt_ints(dims));
      em.emit("skip", {{"protocol", p}, {"reason", "unsupported dims " + fmt_ints(dims)}});
      ++tally.skipped;
      continue;
    }
    for (int t = 0; t < trials; ++t) {
      ++tally.cases;
      if (!emit_case(em, run_random_case(p, dims[0], dims[1], rng), t, branches)) ++tally.failures;
    }
  }
}

void emit_tally(Emitter& em, const SimTally& t) {
  em.emit("simulate", {{"cases", std::to_string(t.cases)},
                       {"failures", std::to_string(t.failures)},
                       {"skipped", std::to_string(t.skipped)},
                       {"pass", fmt_bool(t.failures == 0)}});
}

int cmd_simulate(const RunConfig& cfg, Emitter& em) {
  if (cfg.trials < 1) throw ConfigError(0, "trials must be positive");
  Rng rng(cfg.seed);
  SimTally tally;
  simulate_into(em, cfg, cfg.dims, cfg.trials, rng, tally, true);
  emit_tally(em, tally);
  return tally.failures == 0 ? kExitOk : kExitFail;
}

int cmd_decompose(const RunConfig& cfg, Emitter& em) {
  const auto g = fixed_gate(cfg);
  if (!g) throw ConfigError(0, "decompose needs a gate or unitary");
  if (!is_unitary(g->u)) throw ConfigError(0, "matrix is not unitary");
  const DoubleGroupExpansion exp = expand_double_group(g->u, g->d_a, g->d_b);
  const auto blocks = control_blocks(g->u, g->d_a, g->d_b);
  bool pauli_targets = false;
  if (blocks) {
    const ProjectiveRep rep = pauli_rep(g->d_b);
    pauli_targets = std::all_of(blocks->begin(), blocks->end(), [&](const ComplexMatrix& b) { return rep.find_member(b) >= 0; });
  }
  std::string clifford = "n/a";
  if (g->d_a == g->d_b && is_prime(g->d_a)) clifford = fmt_bool(is_clifford(g->u, 1, 1, g->d_a));
  const bool fast = check_fast_form(exp);
  const bool product = factor_product(g->u, g->d_a, g->d_b).has_value();

  std::vector<std::string> applicable = {"P1", "P3", "P4"};
  if (blocks) applicable.push_back("P2");
  if (fast) applicable.push_back("P5");
  if (pauli_targets) applicable.push_back("P6");
  if (clifford == "true") applicable.push_back("P7");
  std::sort(applicable.begin(), applicable.end());
  std::string protocols;
  for (std::size_t i = 0; i < applicable.size(); ++i) protocols += (i ? ";" : "") + applicable[i];

  em.emit("decompose", {{"gate", g->name},
                        {"d_a", std::to_string(g->d_a)},
                        {"d_b", std::to_string(g->d_b)},
                        {"group_order", std::to_string(exp.order())},
                        {"pauli_terms", std::to_string(exp.nonzero_terms())},
                        {"controlled", fmt_bool(blocks.has_value())},
                        {"pauli_targets", fmt_bool(pauli_targets)},
                        {"clifford", clifford},
                        {"fast_form", fmt_bool(fast)},
                        {"product", fmt_bool(product)},
                        {"protocols", protocols}});
  for (int f = 0; f < exp.order(); ++f) {
    const cplx c = exp.coeff(f);
    if (std::abs(c) <= kCoefficientZero) continue;
    std::vector<int> digits = exp.rep_a.digits(f % exp.rep_a.order);
    for (int d : exp.rep_b.digits(f / exp.rep_a.order)) digits.push_back(d);
    std::string label = "(";
    for (std::size_t i = 0; i < digits.size(); ++i) label += (i ? "," : "") + std::to_string(digits[i]);
    label += ")";
    const std::string value = "(" + fmt_double(c.real()) + "," + fmt_double(c.imag()) + ")";
    em.emit("term", {{"element", label}, {"value", value}}, label + " \u2192 " + value);
  }
  return kExitOk;
}

// Position verification

void emit_verdict(Emitter& em, const std::string& mode, const Verdict& v) {
  std::string angles;
  for (std::size_t i = 0; i < v.angles.size(); ++i) angles += (i ? ";" : "") + fmt_double(v.angles[i]);
  em.emit("verdict", {{"mode", mode},
                      {"status", std::string(to_string(v.status))},
                      {"secure", fmt_bool(v.secure)},
                      {"honest_time", v.honest_exact ? v.honest_exact->str() : fmt_double(v.honest_time)},
                      {"attacker_best_time", v.attacker_exact ? v.attacker_exact->str() : fmt_double(v.attacker_best_time)},
                      {"margin", fmt_double(v.margin)},
                      {"angles", angles},
                      {"basis", v.basis},
                      {"note", v.note}});
}

int cmd_posver(const RunConfig& cfg, Emitter& em) {
  if (cfg.mode == "two") {
    emit_verdict(em, "two", two_verifier_verdict(cfg.geometry, cfg.repeaters, cfg.exact, cfg.capacity_condition));
  } else if (cfg.mode == "three") {
    emit_verdict(em, "three", three_verifier_verdict(cfg.geometry));
  } else {
    throw ConfigError(0, "mode must be two or three");
  }
  return kExitOk;
}

// Report

Geometry2D line_geometry(const Rational& prover_x, const Rational& delta) {
  Geometry2D g;
  g.verifiers = {{Rational(0), Rational(0)}, {Rational(1), Rational(0)}};
  g.prover = {prover_x, Rational(0)};
  g.delta = delta;
  return g;
}

int cmd_report(const RunConfig& cfg, Emitter& em) {
  bool ok = emit_bounds(em, true);

  for (const std::string& family : variant_catalog()) {
    std::vector<ProtocolVariant> variants;
    if (family_repeaters(family) < 0) {
      variants = {parse_variant(family + "(n=0)"), parse_variant(family + "(n=1)")};
    } else {
      variants = {parse_variant(family)};
    }
    for (const auto& v : variants) emit_schedule(em, build_schedule(v), cfg.cost, false);
  }

  for (const auto& [x1, x2] : std::vector<std::pair<Rational, Rational>>{
           {Rational(1, 5), Rational(3, 5)}, {Rational(1, 3), Rational(2, 3)}, {Rational(1, 7), Rational(3, 7)}}) {
    em.emit("formula", {{"x1", x1.str()},
                        {"x2", x2.str()},
                        {"p32", schedule_formula_p32(x1, x2).str()},
                        {"p22", schedule_formula_p22(x1, x2).str()},
                        {"p22_region", std::to_string(p22_region(x1, x2))}});
  }

  for (const std::string& family : variant_catalog()) {
    const int n = family_repeaters(family);
    if (n < 1 || n > 2) continue;
    emit_placement(em, optimize_placement(family, n, OptMethod::exact), OptMethod::exact);
  }

  Rng rng(cfg.seed);
  SimTally tally;
  RunConfig sim = cfg;
  sim.protocol = "all";
  sim.gate.clear();
  sim.unitary_path.clear();
  sim.input_path.clear();
  for (const std::vector<int>& dims : {std::vector<int>{2, 2}, std::vector<int>{2, 3}, std::vector<int>{3, 3}}) {
    simulate_into(em, sim, dims, 3, rng, tally, false);
  }
  emit_tally(em, tally);
  ok = ok && tally.failures == 0;

  emit_verdict(em, "two", two_verifier_verdict(line_geometry(Rational(1, 2), Rational(1, 20)), 3, true));
  emit_verdict(em, "two", two_verifier_verdict(line_geometry(Rational(1, 2), Rational(0)), -1, false));
  Geometry2D tri;
  tri.verifiers = {{Rational(0), Rational(0)}, {Rational(1), Rational(0)}, {Rational(1, 2), Rational(866025, 1000000)}};
  tri.prover = {Rational(1, 2), Rational(288675, 1000000)};
  tri.delta = Rational(1, 100);
  emit_verdict(em, "three", three_verifier_verdict(tri));
  for (int n : {0, 1}) {
    const ClassicalContrast c = classical_permutation_time(n);
    em.emit("classical_contrast",
            {{"repeaters", std::to_string(n)}, {"classical", c.classical.str()}, {"unitary_first", c.unitary_first.str()}});
  }
  em.emit("report", {{"pass", fmt_bool(ok)}});
  return ok ? kExitOk : kExitFail;
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Emitter em(cfg.format, out);
  try {
    switch (cfg.command) {
      case Command::bounds: {
        const bool ok = emit_bounds(em, cfg.table);
        if (!ok) err << "bounds: engine times disagree with the table\n";
        return ok ? kExitOk : kExitFail;
      }
      case Command::timeline:
        return cmd_timeline(cfg, em);
      case Command::optimize:
        return cmd_optimize(cfg, em);
      case Command::simulate:
        return cmd_simulate(cfg, em);
      case Command::decompose:
        return cmd_decompose(cfg, em);
      case Command::posver:
        return cmd_posver(cfg, em);
      case Command::report:
        return cmd_report(cfg, em);
    }
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::overflow_error& e) {
    err << "error: " << e.what() << "; exact arithmetic overflowed, give inputs with fewer digits\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "failure: " << e.what() << '\n';
    return kExitFail;
  }
  return kExitConfig;
}

}  // namespace qrep
