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

#include "qrep/timeline.hpp"

namespace qrep {
namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split_args(std::string_view s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == ',') {
      std::string part = trim(s.substr(start, i - start));
      if (part.empty()) throw TimelineError("empty argument in variant");
      out.push_back(part);
      start = i + 1;
    }
  }
  return out;
}

}  // namespace

std::string ProtocolVariant::name() const {
  if (family == "P9") return "P9(n=" + std::to_string(stub_n) + ")";
  std::string s = family;
  if (!positions.empty()) {
    s += "(";
    for (std::size_t i = 0; i < positions.size(); ++i) {
      if (i > 0) s += ",";
      s += positions[i].str();
    }
    s += ")";
  }
  return s;
}

const std::vector<std::string>& variant_catalog() {
  static const std::vector<std::string> catalog = {
      "P1",   "P1.1", "P1.2", "P1.3", "P2",   "P2.1", "P2.2", "P3",   "P3.1", "P3.2", "P3.3", "P4",   "P4.1", "P4.2",
      "P5",   "P5.1", "P5.2", "P5.3", "P6",   "P6.2", "P7",   "P7.2", "P8",   "P8.1", "P8.2", "P8.3", "P9"};
  return catalog;
}

std::string normalize_family(std::string_view text) {
  std::string s = trim(text);
  if (!s.empty() && (s[0] == 'P' || s[0] == 'p')) s.erase(0, 1);
  if (s == "9-stub" || s == "9-timing-stub") s = "9";
  std::string fam = "P" + s;
  const auto& cat = variant_catalog();
  if (std::find(cat.begin(), cat.end(), fam) == cat.end()) throw TimelineError("unknown variant '" + trim(text) + "'");
  return fam;
}

int family_repeaters(const std::string& family) {
  if (family == "P9") return -1;
  const auto& cat = variant_catalog();
  if (std::find(cat.begin(), cat.end(), family) == cat.end()) throw TimelineError("unknown variant '" + family + "'");
  auto dot = family.find('.');
  if (dot == std::string::npos) return 0;
  return std::stoi(family.substr(dot + 1));
}

std::vector<Rational> default_positions(const std::string& family) {
  if (family == "P9") return {};
  switch (family_repeaters(family)) {
    case 0:
      return {};
    case 1:
      return {Rational(1, 2)};
    case 2:
      if (family == "P2.2" || family == "P4.2") return {Rational(1, 7), Rational(3, 7)};
      if (family == "P5.2" || family == "P6.2" || family == "P7.2") return {Rational(1, 3), Rational(2, 3)};
      return {Rational(1, 5), Rational(3, 5)};
    default:
      return {Rational(1, 6), Rational(1, 2), Rational(5, 6)};
  }
}

ProtocolVariant parse_variant(std::string_view text) {
  std::string s = trim(text);
  std::string args;
  bool has_args = false;
  auto open = s.find('(');
  if (open != std::string::npos) {
    if (s.back() != ')') throw TimelineError("unbalanced parentheses in variant '" + s + "'");
    args = s.substr(open + 1, s.size() - open - 2);
    has_args = true;
    s = s.substr(0, open);
  }
  ProtocolVariant v;
  v.family = normalize_family(s);
  if (v.family == "P9") {
    v.stub_n = 0;
    if (has_args) {
      std::string a = trim(args);
      if (a.rfind("n=", 0) == 0) a = trim(a.substr(2));
      try {
        std::size_t used = 0;
        v.stub_n = std::stoi(a, &used);
        if (used != a.size()) throw TimelineError("bad repeater count");
      } catch (const std::logic_error&) {
        throw TimelineError("P9 expects n=0 or n=1, got '" + args + "'");
      }
    }
    if (v.stub_n != 0 && v.stub_n != 1) throw TimelineError("P9 timing stub supports n = 0 or 1");
    if (v.stub_n == 1) v.positions = {Rational(1, 2)};
    return v;
  }
  const int need = family_repeaters(v.family);
  if (has_args && !trim(args).empty()) {
    for (const auto& a : split_args(args)) {
      try {
        v.positions.push_back(Rational::parse(a));
      } catch (const std::exception&) {
        throw TimelineError("bad position '" + a + "' in variant");
      }
    }
  } else {
    v.positions = default_positions(v.family);
  }
  if (static_cast<int>(v.positions.size()) != need) {
    throw TimelineError("arity mismatch: " + v.family + " takes " + std::to_string(need) + " positions, got " +
                        std::to_string(v.positions.size()));
  }
  LineTopology::with_repeaters(v.positions);  // validates ordering and range
  return v;
}

}  // namespace qrep
