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
#include <fstream>
#include <map>
#include <sstream>

#include "qrep/cli.hpp"

namespace qrep {
namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && is_space(s[b])) ++b;
  while (e > b && is_space(s[e - 1])) --e;
  return s.substr(b, e - b);
}

// Accepts decimals, exponents and p/q.
double parse_number(const std::string& raw) {
  const std::string s = trim(raw);
  if (s.empty()) throw ConfigError(0, "empty number in matrix file");
  const auto slash = s.find('/');
  if (slash != std::string::npos) return parse_number(s.substr(0, slash)) / parse_number(s.substr(slash + 1));
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || !std::isfinite(v)) throw ConfigError(0, "malformed number '" + s + "' in matrix file");
  return v;
}

int parse_count(const std::string& s, const std::string& key) {
  const double v = parse_number(s);
  if (v < 1 || v != std::floor(v) || v > 1e6) throw ConfigError(0, key + " must be a positive integer");
  return static_cast<int>(v);
}

// Splits "a, b, c" at commas outside parentheses.
std::vector<std::string> split_items(const std::string& s) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!trim(cur).empty()) out.push_back(trim(cur));
  return out;
}

std::string strip_comments(std::string_view text) {
  std::string out;
  bool comment = false;
  for (char c : text) {
    if (c == '#') comment = true;
    if (c == '\n') comment = false;
    if (!comment) out += c;
  }
  return out;
}

}  // namespace

MatrixDocument parse_matrix_text(std::string_view text) {
  const std::string doc = strip_comments(text);
  std::map<std::string, std::string> fields;
  std::size_t i = 0;
  while (true) {
    while (i < doc.size() && is_space(doc[i])) ++i;
    if (i >= doc.size()) break;
    const auto eq = doc.find('=', i);
    if (eq == std::string::npos) throw ConfigError(0, "matrix file: expected key = value");
    const std::string key = trim(doc.substr(i, eq - i));
    i = eq + 1;
    while (i < doc.size() && (doc[i] == ' ' || doc[i] == '\t')) ++i;
    std::string value;
    if (i < doc.size() && doc[i] == '[') {
      const auto close = doc.find(']', i);
      if (close == std::string::npos) throw ConfigError(0, "matrix file: unterminated list for '" + key + "'");
      value = doc.substr(i + 1, close - i - 1);
      i = close + 1;
    } else {
      const auto nl = doc.find('\n', i);
      value = trim(doc.substr(i, nl == std::string::npos ? std::string::npos : nl - i));
      i = nl == std::string::npos ? doc.size() : nl;
    }
    if (key != "dims" && key != "rows" && key != "cols" && key != "entries") {
      throw ConfigError(0, "matrix file: unknown key '" + key + "'");
    }
    if (!fields.emplace(key, value).second) throw ConfigError(0, "matrix file: duplicate key '" + key + "'");
  }
  for (const char* k : {"dims", "rows", "cols", "entries"}) {
    if (!fields.count(k)) throw ConfigError(0, std::string("matrix file: missing required key '") + k + "'");
  }
  MatrixDocument m;
  std::size_t total = 1;
  for (const auto& d : split_items(fields["dims"])) {
    m.dims.push_back(parse_count(d, "dims entry"));
    total *= static_cast<std::size_t>(m.dims.back());
  }
  const int rows = parse_count(fields["rows"], "rows");
  const int cols = parse_count(fields["cols"], "cols");
  if (static_cast<std::size_t>(rows) != total || (cols != 1 && cols != rows)) {
    throw ConfigError(0, "matrix file: rows and cols do not match dims");
  }
  const auto entries = split_items(fields["entries"]);
  if (entries.size() != static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols)) {
    throw ConfigError(0, "matrix file: expected " + std::to_string(rows * cols) + " entries, got " + std::to_string(entries.size()));
  }
  m.matrix = ComplexMatrix(rows, cols);
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const std::string& e = entries[k];
    if (e.size() < 2 || e.front() != '(' || e.back() != ')') throw ConfigError(0, "matrix file: entries must be (re, im) pairs");
    const auto parts = split_items(e.substr(1, e.size() - 2));
    if (parts.size() != 2) throw ConfigError(0, "matrix file: entries must be (re, im) pairs");
    m.matrix(static_cast<Eigen::Index>(k) / cols, static_cast<Eigen::Index>(k) % cols) = {parse_number(parts[0]), parse_number(parts[1])};
  }
  return m;
}

MatrixDocument read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(0, "cannot open matrix file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_matrix_text(ss.str());
}

std::string emit_matrix_text(const MatrixDocument& doc) {
  std::ostringstream os;
  os << "dims = [";
  for (std::size_t i = 0; i < doc.dims.size(); ++i) os << (i ? ", " : "") << doc.dims[i];
  os << "]\nrows = " << doc.matrix.rows() << "\ncols = " << doc.matrix.cols() << "\nentries = [\n";
  char buf[96];
  for (Eigen::Index r = 0; r < doc.matrix.rows(); ++r) {
    os << " ";
    for (Eigen::Index c = 0; c < doc.matrix.cols(); ++c) {
      std::snprintf(buf, sizeof buf, " (%.17g, %.17g)", doc.matrix(r, c).real(), doc.matrix(r, c).imag());
      os << buf;
      if (r + 1 < doc.matrix.rows() || c + 1 < doc.matrix.cols()) os << ',';
    }
    os << '\n';
  }
  os << "]\n";
  return os.str();
}

}  // namespace qrep
