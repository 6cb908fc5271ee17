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

#include <algorithm>
#include <cctype>
#include <charconv>
#include <functional>
#include <map>
#include <sstream>

#include "qrep/cli.hpp"

namespace qrep {
namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::string strip_comment(std::string_view line) {
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') quoted = !quoted;
    if (line[i] == '#' && !quoted) return std::string(line.substr(0, i));
  }
  return std::string(line);
}

std::string unquote(const std::string& v) {
  if (v.size() >= 2 && v.front() == '"' && v.back() == '"') return v.substr(1, v.size() - 2);
  if (!v.empty() && v.front() == '"') throw std::invalid_argument("unterminated string");
  return v;
}

// Splits "a, (b, c), d" at top-level commas.
std::vector<std::string> split_top(std::string_view s) {
  std::vector<std::string> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i < s.size() && (s[i] == '(' || s[i] == '[')) ++depth;
    if (i < s.size() && (s[i] == ')' || s[i] == ']')) --depth;
    if (i == s.size() || (s[i] == ',' && depth == 0)) {
      std::string part = trim(s.substr(start, i - start));
      if (!part.empty() || i < s.size()) out.push_back(part);
      start = i + 1;
    }
  }
  if (out.size() == 1 && out[0].empty()) out.clear();
  for (const auto& p : out) {
    if (p.empty()) throw std::invalid_argument("empty list element");
  }
  return out;
}

std::string inner(const std::string& v, char open, char close, const char* what) {
  if (v.size() < 2 || v.front() != open || v.back() != close) {
    throw std::invalid_argument(std::string("expected ") + what + " in " + open + "..." + close);
  }
  return v.substr(1, v.size() - 2);
}

std::vector<std::string> list_items(const std::string& v) { return split_top(inner(v, '[', ']', "a list")); }

Rational parse_rational(const std::string& v) {
  try {
    return Rational::parse(unquote(v));
  } catch (const std::exception& e) {
    throw std::invalid_argument("malformed rational '" + v + "'");
  }
}

std::int64_t parse_int64(const std::string& v) {
  std::string s = unquote(v);
  std::int64_t out = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) throw std::invalid_argument("malformed integer '" + v + "'");
  return out;
}

int parse_int(const std::string& v) {
  std::int64_t x = parse_int64(v);
  if (x < -(std::int64_t{1} << 31) || x >= (std::int64_t{1} << 31)) throw std::invalid_argument("integer out of range");
  return static_cast<int>(x);
}

std::uint64_t parse_uint64(const std::string& v) {
  std::string s = unquote(v);
  std::uint64_t out = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) throw std::invalid_argument("malformed seed '" + v + "'");
  return out;
}

bool parse_bool(const std::string& v) {
  std::string s = unquote(v);
  if (s == "true" || s == "yes" || s == "1") return true;
  if (s == "false" || s == "no" || s == "0") return false;
  throw std::invalid_argument("expected true or false, got '" + v + "'");
}

Point2 parse_point(const std::string& v) {
  auto parts = split_top(inner(v, '(', ')', "a point"));
  if (parts.size() != 2) throw std::invalid_argument("a point needs two coordinates");
  return {parse_rational(parts[0]), parse_rational(parts[1])};
}

std::vector<Rational> parse_rationals(const std::string& v) {
  std::vector<Rational> out;
  for (const auto& item : list_items(v)) out.push_back(parse_rational(item));
  return out;
}

std::vector<Point2> parse_points(const std::string& v) {
  std::vector<Point2> out;
  for (const auto& item : list_items(v)) out.push_back(parse_point(item));
  return out;
}

Command parse_command(const std::string& v) {
  static const std::map<std::string, Command> m = {
      {"simulate", Command::simulate}, {"timeline", Command::timeline}, {"optimize", Command::optimize},
      {"bounds", Command::bounds},     {"posver", Command::posver},     {"decompose", Command::decompose},
      {"report", Command::report}};
  auto it = m.find(unquote(v));
  if (it == m.end()) throw std::invalid_argument("unknown command '" + v + "'");
  return it->second;
}

OutputFormat parse_format(const std::string& v) {
  std::string s = unquote(v);
  if (s == "human") return OutputFormat::human;
  if (s == "records") return OutputFormat::records;
  if (s == "csv") return OutputFormat::csv;
  throw std::invalid_argument("unknown format '" + v + "' (human, records, csv)");
}

std::string join(const std::vector<std::string>& parts) {
  std::string s = "[";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) s += ", ";
    s += parts[i];
  }
  return s + "]";
}

std::string point_str(const Point2& p) { return "(" + p.x.str() + ", " + p.y.str() + ")"; }

std::string quote(const std::string& s) { return "\"" + s + "\""; }

struct Pending {
  std::optional<std::pair<std::string, int>> variant;
  std::optional<std::pair<std::vector<Rational>, int>> positions;
};

using Handler = std::function<void(RunConfig&, Pending&, const std::string&, int)>;

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> h = {
      {"command", [](RunConfig& c, Pending&, const std::string& v, int) { c.command = parse_command(v); }},
      {"seed", [](RunConfig& c, Pending&, const std::string& v, int) { c.seed = parse_uint64(v); }},
      {"format", [](RunConfig& c, Pending&, const std::string& v, int) { c.format = parse_format(v); }},
      {"svg",
       [](RunConfig& c, Pending&, const std::string& v, int) {
         std::string s = unquote(v);
         if (s.empty()) {
           c.svg_path.reset();
         } else {
           c.svg_path = s;
         }
       }},
      {"variant", [](RunConfig&, Pending& p, const std::string& v, int line) { p.variant = {unquote(v), line}; }},
      {"positions",
       [](RunConfig&, Pending& p, const std::string& v, int line) { p.positions = {parse_rationals(v), line}; }},
      {"notify_offsets",
       [](RunConfig& c, Pending&, const std::string& v, int) { c.notify_offsets = parse_rationals(v); }},
      {"d_a", [](RunConfig& c, Pending&, const std::string& v, int) { c.cost.d_a = parse_int(v); }},
      {"d_b", [](RunConfig& c, Pending&, const std::string& v, int) { c.cost.d_b = parse_int(v); }},
      {"n_terms", [](RunConfig& c, Pending&, const std::string& v, int) { c.cost.n_terms = parse_int(v); }},
      {"group_order", [](RunConfig& c, Pending&, const std::string& v, int) { c.cost.group_order = parse_int(v); }},
      {"redundancy",
       [](RunConfig& c, Pending&, const std::string& v, int) {
         c.cost.redundancy = parse_int(v);
         if (c.cost.redundancy < 1) throw std::invalid_argument("redundancy must be at least 1");
       }},
      {"protocol", [](RunConfig& c, Pending&, const std::string& v, int) { c.protocol = unquote(v); }},
      {"gate", [](RunConfig& c, Pending&, const std::string& v, int) { c.gate = unquote(v); }},
      {"unitary", [](RunConfig& c, Pending&, const std::string& v, int) { c.unitary_path = unquote(v); }},
      {"input", [](RunConfig& c, Pending&, const std::string& v, int) { c.input_path = unquote(v); }},
      {"dims",
       [](RunConfig& c, Pending&, const std::string& v, int) {
         std::vector<int> d;
         for (const auto& item : list_items(v)) d.push_back(parse_int(item));
         if (d.size() != 2 || d[0] < 2 || d[1] < 2) throw std::invalid_argument("dims must be [d_A, d_B] with entries >= 2");
         c.dims = d;
         c.cost.d_a = d[0];
         c.cost.d_b = d[1];
       }},
      {"trials",
       [](RunConfig& c, Pending&, const std::string& v, int) {
         c.trials = parse_int(v);
         if (c.trials < 1) throw std::invalid_argument("trials must be positive");
       }},
      {"family", [](RunConfig& c, Pending&, const std::string& v, int) { c.family = normalize_family(unquote(v)); }},
      {"n", [](RunConfig& c, Pending&, const std::string& v, int) { c.n = parse_int(v); }},
      {"method",
       [](RunConfig& c, Pending&, const std::string& v, int) {
         std::string s = unquote(v);
         if (s == "exact") {
           c.method = OptMethod::exact;
         } else if (s == "grid") {
           c.method = OptMethod::grid;
         } else {
           throw std::invalid_argument("method must be exact or grid");
         }
       }},
      {"grid",
       [](RunConfig& c, Pending&, const std::string& v, int) {
         c.grid_q = parse_int(v);
         if (c.grid_q < 2) throw std::invalid_argument("grid resolution must be at least 2");
       }},
      {"table", [](RunConfig& c, Pending&, const std::string& v, int) { c.table = parse_bool(v); }},
      {"mode",
       [](RunConfig& c, Pending&, const std::string& v, int) {
         std::string s = unquote(v);
         if (s != "two" && s != "three") throw std::invalid_argument("mode must be two or three");
         c.mode = s;
       }},
      {"verifiers", [](RunConfig& c, Pending&, const std::string& v, int) { c.geometry.verifiers = parse_points(v); }},
      {"prover", [](RunConfig& c, Pending&, const std::string& v, int) { c.geometry.prover = parse_point(v); }},
      {"attacker",
       [](RunConfig& c, Pending&, const std::string& v, int) { c.geometry.attacker_nodes = parse_points(v); }},
      {"delta",
       [](RunConfig& c, Pending&, const std::string& v, int) {
         c.geometry.delta = parse_rational(v);
         if (c.geometry.delta < Rational(0)) throw std::invalid_argument("delta must be nonnegative");
       }},
      {"repeaters",
       [](RunConfig& c, Pending&, const std::string& v, int) {
         std::string s = unquote(v);
         c.repeaters = s == "unbounded" ? -1 : parse_int(s);
         if (c.repeaters < -1 || c.repeaters > 3) throw std::invalid_argument("repeaters must be 0..3 or unbounded");
       }},
      {"exact", [](RunConfig& c, Pending&, const std::string& v, int) { c.exact = parse_bool(v); }},
      {"capacity_condition",
       [](RunConfig& c, Pending&, const std::string& v, int) { c.capacity_condition = parse_bool(v); }},
  };
  return h;
}

void finalize(RunConfig& cfg, const Pending& p) {
  if (!p.variant && !p.positions) return;
  ProtocolVariant v;
  if (p.variant) {
    try {
      v = parse_variant(p.variant->first);
    } catch (const TimelineError& e) {
      throw ConfigError(p.variant->second, e.what());
    }
  } else if (cfg.variant) {
    v = *cfg.variant;
  } else {
    throw ConfigError(p.positions->second, "positions given without a variant");
  }
  if (p.positions) {
    const int line = p.positions->second;
    if (v.family == "P9") throw ConfigError(line, "P9 takes n=0 or n=1 in the variant, not positions");
    const auto& pos = p.positions->first;
    const int need = family_repeaters(v.family);
    if (static_cast<int>(pos.size()) != need) {
      throw ConfigError(line, "arity mismatch: " + v.family + " takes " + std::to_string(need) + " positions, got " +
                                  std::to_string(pos.size()));
    }
    try {
      LineTopology::with_repeaters(pos);
    } catch (const TimelineError& e) {
      throw ConfigError(line, std::string("ordering error: ") + e.what());
    }
    v.positions = pos;
  }
  cfg.variant = v;
}

}  // namespace

std::string_view to_string(Command c) {
  switch (c) {
    case Command::simulate:
      return "simulate";
    case Command::timeline:
      return "timeline";
    case Command::optimize:
      return "optimize";
    case Command::bounds:
      return "bounds";
    case Command::posver:
      return "posver";
    case Command::decompose:
      return "decompose";
    case Command::report:
      return "report";
  }
  return "report";
}

std::string_view to_string(OutputFormat f) {
  switch (f) {
    case OutputFormat::human:
      return "human";
    case OutputFormat::records:
      return "records";
    case OutputFormat::csv:
      return "csv";
  }
  return "human";
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& [name, h] : handlers()) k.push_back(name);
    return k;
  }();
  return keys;
}

void apply_config(RunConfig& cfg, std::string_view document) {
  Pending pending;
  std::istringstream in{std::string(document)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string text = trim(strip_comment(raw));
    if (text.empty()) continue;
    auto eq = text.find('=');
    if (eq == std::string::npos) throw ConfigError(line, "expected key = value");
    std::string key = trim(std::string_view(text).substr(0, eq));
    std::string value = trim(std::string_view(text).substr(eq + 1));
    auto it = handlers().find(key);
    if (it == handlers().end()) throw ConfigError(line, "unknown key '" + key + "'");
    if (value.empty()) throw ConfigError(line, "missing value for '" + key + "'");
    try {
      it->second(cfg, pending, value, line);
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      throw ConfigError(line, key + ": " + e.what());
    }
  }
  finalize(cfg, pending);
}

RunConfig parse_config(std::string_view document) {
  RunConfig cfg;
  apply_config(cfg, document);
  return cfg;
}

std::string emit_config(const RunConfig& c) {
  std::ostringstream os;
  auto rationals = [](const std::vector<Rational>& v) {
    std::vector<std::string> s;
    for (const auto& r : v) s.push_back(r.str());
    return join(s);
  };
  auto points = [](const std::vector<Point2>& v) {
    std::vector<std::string> s;
    for (const auto& p : v) s.push_back(point_str(p));
    return join(s);
  };
  os << "command = " << to_string(c.command) << "\n";
  os << "seed = " << c.seed << "\n";
  os << "format = " << to_string(c.format) << "\n";
  if (c.svg_path) os << "svg = " << quote(*c.svg_path) << "\n";
  if (c.variant) {
    if (c.variant->family == "P9") {
      os << "variant = " << quote(c.variant->name()) << "\n";
    } else {
      os << "variant = " << quote(c.variant->family) << "\n";
      os << "positions = " << rationals(c.variant->positions) << "\n";
    }
  }
  os << "notify_offsets = " << rationals(c.notify_offsets) << "\n";
  os << "dims = [" << c.dims.at(0) << ", " << c.dims.at(1) << "]\n";
  os << "d_a = " << c.cost.d_a << "\n";
  os << "d_b = " << c.cost.d_b << "\n";
  os << "n_terms = " << c.cost.n_terms << "\n";
  os << "group_order = " << c.cost.group_order << "\n";
  os << "redundancy = " << c.cost.redundancy << "\n";
  os << "protocol = " << quote(c.protocol) << "\n";
  os << "gate = " << quote(c.gate) << "\n";
  os << "unitary = " << quote(c.unitary_path) << "\n";
  os << "input = " << quote(c.input_path) << "\n";
  os << "trials = " << c.trials << "\n";
  if (!c.family.empty()) os << "family = " << quote(c.family) << "\n";
  os << "n = " << c.n << "\n";
  os << "method = " << (c.method == OptMethod::exact ? "exact" : "grid") << "\n";
  os << "grid = " << c.grid_q << "\n";
  os << "table = " << (c.table ? "true" : "false") << "\n";
  os << "mode = " << c.mode << "\n";
  os << "verifiers = " << points(c.geometry.verifiers) << "\n";
  os << "prover = " << point_str(c.geometry.prover) << "\n";
  os << "attacker = " << points(c.geometry.attacker_nodes) << "\n";
  os << "delta = " << c.geometry.delta.str() << "\n";
  os << "repeaters = " << (c.repeaters < 0 ? std::string("unbounded") : std::to_string(c.repeaters)) << "\n";
  os << "exact = " << (c.exact ? "true" : "false") << "\n";
  os << "capacity_condition = " << (c.capacity_condition ? "true" : "false") << "\n";
  return os.str();
}

}  // namespace qrep
