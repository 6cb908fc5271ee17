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

#include "qrep/posver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "qrep/bounds.hpp"
#include "qrep/timeline.hpp"

namespace qrep {
namespace {

Rational dot(const Point2& a, const Point2& b) { return a.x * b.x + a.y * b.y; }
Rational cross(const Point2& a, const Point2& b) { return a.x * b.y - a.y * b.x; }
Point2 operator-(const Point2& a, const Point2& b) { return {a.x - b.x, a.y - b.y}; }

std::optional<std::int64_t> exact_isqrt(std::int64_t v) {
  if (v < 0) return std::nullopt;
  auto r = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(v))));
  for (std::int64_t c = std::max<std::int64_t>(0, r - 2); c <= r + 2; ++c) {
    if (static_cast<__int128>(c) * c == v) return c;
  }
  return std::nullopt;
}

std::optional<Rational> rational_sqrt(const Rational& v) {
  auto n = exact_isqrt(v.num());
  auto d = exact_isqrt(v.den());
  if (!n || !d) return std::nullopt;
  return Rational(*n, *d);
}

// Line parameter of q along V1 -> V2; throws if q is off the line.
Rational line_param(const Point2& q, const Point2& v1, const Point2& dir, const Rational& len2, const char* what) {
  const double off = std::abs(cross(q - v1, dir).to_double()) / len2.to_double();
  if (off > 1e-12) throw GeometryError(std::string(what) + " is not on the verifier line");
  return dot(q - v1, dir) / len2;
}

void check_exclusion(const Geometry2D& g) {
  if (g.delta < Rational(0)) throw GeometryError("exclusion radius must be nonnegative");
  for (const auto& a : g.attacker_nodes) {
    Point2 d = a - g.prover;
    if (dot(d, d) < g.delta * g.delta) throw GeometryError("attacker node inside the exclusion disk");
  }
}

}  // namespace

double distance(const Point2& a, const Point2& b) {
  const double dx = (a.x - b.x).to_double();
  const double dy = (a.y - b.y).to_double();
  return std::hypot(dx, dy);
}

std::string_view to_string(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::secure:
      return "SECURE";
    case VerdictStatus::insecure:
      return "INSECURE";
    case VerdictStatus::insecure_in_limit:
      return "INSECURE-IN-THE-LIMIT";
    case VerdictStatus::not_decidable:
      return "NOT-DECIDABLE-BY-THIS-TOOL";
    case VerdictStatus::unknown:
      return "UNKNOWN";
  }
  return "UNKNOWN";
}

double angle_threshold() { return 2.0 * std::asin(2.0 / 3.0); }

double honest_time(const Geometry2D& g) {
  if (g.verifiers.size() < 2) throw GeometryError("two verifiers required");
  if (g.verifiers[0] == g.verifiers[1]) throw GeometryError("verifiers coincide");
  return distance(g.verifiers[0], g.prover) + distance(g.prover, g.verifiers[1]);
}

Verdict two_verifier_verdict(const Geometry2D& g, int max_repeaters, bool exact_mode, bool capacity_condition) {
  if (g.verifiers.size() != 2) throw GeometryError("two-verifier mode needs exactly two verifiers");
  if (max_repeaters < -1 || max_repeaters > 3) throw GeometryError("attacker repeaters must be 0..3 or unbounded");
  const Point2& v1 = g.verifiers[0];
  const Point2& v2 = g.verifiers[1];
  if (v1 == v2) throw GeometryError("verifiers coincide");
  check_exclusion(g);
  if (!g.attacker_nodes.empty()) {
    if (g.attacker_nodes.size() < 2) throw GeometryError("attacker needs both end nodes");
    if (max_repeaters >= 0 && static_cast<int>(g.attacker_nodes.size()) - 2 > max_repeaters) {
      throw GeometryError("more attacker repeaters than allowed");
    }
  }

  const Point2 dir = v2 - v1;
  const Rational len2 = dot(dir, dir);
  const std::optional<Rational> len = rational_sqrt(len2);
  const double len_d = std::sqrt(len2.to_double());
  const Rational tp = line_param(g.prover, v1, dir, len2, "prover");

  // Everything below is in units of |V1 V2|; exact when |V1 V2| is rational.
  const double delta_rel = g.delta.to_double() / len_d;
  Rational ta;
  Rational tb;
  double ta_d = 0.0;
  double tb_d = 0.0;
  bool exact = len.has_value();
  if (!g.attacker_nodes.empty()) {
    std::vector<Rational> ts;
    for (const auto& a : g.attacker_nodes) ts.push_back(line_param(a, v1, dir, len2, "attacker node"));
    ta = *std::min_element(ts.begin(), ts.end());
    tb = *std::max_element(ts.begin(), ts.end());
    ta_d = ta.to_double();
    tb_d = tb.to_double();
  } else if (exact) {
    // Best placement: end nodes as close to P as the exclusion disk allows.
    const Rational dr = g.delta / *len;
    ta = max(Rational(0), tp - dr);
    tb = min(Rational(1), tp + dr);
    ta_d = ta.to_double();
    tb_d = tb.to_double();
  } else {
    ta_d = std::max(0.0, tp.to_double() - delta_rel);
    tb_d = std::min(1.0, tp.to_double() + delta_rel);
  }

  Verdict v;
  const Rational honest = abs(tp) + abs(Rational(1) - tp);
  v.honest_time = honest.to_double() * len_d;
  if (exact) v.honest_exact = honest;

  const double gap_len = tb_d - ta_d;
  auto outer = [&](const Rational& t_lower) {
    // |V1 A| + T |A B| + |B V2|
    if (exact) return abs(ta) + t_lower * (tb - ta) + abs(Rational(1) - tb);
    return Rational(0);
  };
  auto outer_d = [&](double t_lower) { return std::abs(ta_d) + t_lower * gap_len + std::abs(1.0 - tb_d); };

  if (!exact_mode) {
    const bool unbounded = max_repeaters < 0;
    // Without fixed nodes the attacker may stretch its end nodes to the verifiers.
    const double span = g.attacker_nodes.empty() ? 1.0 : gap_len;
    if (unbounded && span > 6.0 * delta_rel) {
      v.status = VerdictStatus::insecure_in_limit;
      v.attacker_best_time = v.honest_time;
      v.basis = "approximate implementation with unbounded repeaters: gap approaches 0 when |AB| > 6 delta";
      if (len && g.delta >= Rational(0) && *len > 6 * g.delta) {
        DeltaTReport r = delta_t_bound(*len, g.delta, false);
        v.note = "excess below 1/100 of |AB| needs " + std::to_string(r.witness_nodes) + " repeaters";
      }
    } else {
      v.status = VerdictStatus::not_decidable;
      v.attacker_best_time = v.honest_time;
      v.basis = "no proved bound for approximate implementation";
      v.note = std::string("security would rest on the conjectured zero-capacity condition across the exclusion disk") +
               (capacity_condition ? " (asserted by user, informational only)" : " (not asserted)");
    }
    v.secure = false;
    v.margin = 0.0;
    return v;
  }

  std::optional<Rational> attacker;
  double attacker_d = -1.0;
  if (max_repeaters >= 0) {
    BoundRecord b = theorem_bounds(max_repeaters);
    attacker_d = outer_d(b.lower.to_double()) * len_d;
    if (exact) attacker = outer(b.lower);
    v.basis = "unitary time lower bound " + b.lower.str() + " per unit |AB| with " + std::to_string(max_repeaters) +
              " repeaters";
  }
  if (g.delta > Rational(0)) {
    const double p3 = v.honest_time + 2.0 * g.delta.to_double();
    if (p3 > attacker_d) {
      attacker_d = p3;
      if (exact) attacker = honest + 2 * g.delta / *len;
      if (!v.basis.empty()) v.basis += "; ";
      v.basis += "exact-implementation gap >= 2 delta";
    }
  }
  if (attacker_d < 0.0) {
    v.status = VerdictStatus::unknown;
    v.basis = "no bound for unbounded repeaters without an exclusion radius";
    v.attacker_best_time = v.honest_time;
    return v;
  }
  v.attacker_best_time = attacker_d;
  if (attacker) {
    v.attacker_exact = attacker;
    v.secure = *attacker > honest;
    v.margin = (*attacker - honest).to_double() * len_d;
  } else {
    v.margin = attacker_d - v.honest_time;
    v.secure = v.margin > kAngleGuard * len_d;
  }
  v.status = v.secure ? VerdictStatus::secure : VerdictStatus::insecure;
  return v;
}

Verdict three_verifier_verdict(const Geometry2D& g) {
  if (g.verifiers.size() != 3) throw GeometryError("three-verifier mode needs exactly three verifiers");
  check_exclusion(g);
  const Point2& p = g.prover;
  Rational c[3];
  for (int i = 0; i < 3; ++i) c[i] = cross(g.verifiers[static_cast<std::size_t>((i + 1) % 3)] - g.verifiers[static_cast<std::size_t>(i)],
                                           p - g.verifiers[static_cast<std::size_t>(i)]);
  const bool pos = c[0] > Rational(0) && c[1] > Rational(0) && c[2] > Rational(0);
  const bool neg = c[0] < Rational(0) && c[1] < Rational(0) && c[2] < Rational(0);
  if (!pos && !neg) throw GeometryError("prover must lie strictly inside the verifier triangle");

  Verdict v;
  const double thr = angle_threshold();
  bool all_above = true;
  double worst_angle = 10.0;
  int worst = 0;
  const int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  for (int k = 0; k < 3; ++k) {
    Point2 a = g.verifiers[static_cast<std::size_t>(pairs[k][0])] - p;
    Point2 b = g.verifiers[static_cast<std::size_t>(pairs[k][1])] - p;
    const double th = std::atan2(std::abs(cross(a, b).to_double()), dot(a, b).to_double());
    v.angles.push_back(th);
    if (!(th > thr + kAngleGuard)) all_above = false;
    if (th < worst_angle) {
      worst_angle = th;
      worst = k;
    }
  }
  const Point2& vi = g.verifiers[static_cast<std::size_t>(pairs[worst][0])];
  const Point2& vj = g.verifiers[static_cast<std::size_t>(pairs[worst][1])];
  v.honest_time = distance(vi, p) + distance(p, vj);
  // End nodes at distance r from P on the rays to the verifiers; the attacker
  // excess 3/2 |AB| - |AP| - |BP| is smallest with equal distances.
  const double r = g.delta > Rational(0) ? g.delta.to_double() : 1.0;
  v.margin = 2.0 * r * (1.5 * std::sin(worst_angle / 2.0) - 1.0);
  v.attacker_best_time = v.honest_time + v.margin;
  v.secure = all_above;
  v.status = all_above ? VerdictStatus::secure : VerdictStatus::insecure;
  v.basis = "one-repeater unitary lower bound 3/2 per unit |AB|; every angle at P must exceed 2 arcsin(2/3)";
  if (g.delta == Rational(0)) v.note = "margin per unit distance of the end nodes from P";

  // Equilateral triangle with P at its center: direct ratio check.
  const double s01 = distance(g.verifiers[0], g.verifiers[1]);
  const double s02 = distance(g.verifiers[0], g.verifiers[2]);
  const double s12 = distance(g.verifiers[1], g.verifiers[2]);
  const Point2 centroid{(g.verifiers[0].x + g.verifiers[1].x + g.verifiers[2].x) / Rational(3),
                        (g.verifiers[0].y + g.verifiers[1].y + g.verifiers[2].y) / Rational(3)};
  constexpr double kShapeTol = 1e-6;
  if (std::abs(s01 - s02) <= kShapeTol * s01 && std::abs(s01 - s12) <= kShapeTol * s01 &&
      distance(p, centroid) <= kShapeTol * s01) {
    const double x_max = 2.0 / std::sqrt(3.0);
    const bool direct = 1.5 > x_max;
    if (direct != v.secure) throw std::logic_error("equilateral check disagrees with the angle criterion");
    if (!v.note.empty()) v.note += "; ";
    v.note += "equilateral center: 3/2 > 2/sqrt(3) >= (|AP|+|BP|)/|AB|";
  }
  return v;
}

ClassicalContrast classical_permutation_time(int n_repeaters, const Rational& length) {
  if (n_repeaters != 0 && n_repeaters != 1) throw GeometryError("classical contrast supports 0 or 1 middle nodes");
  if (length < Rational(0)) throw GeometryError("length must be nonnegative");
  ProtocolVariant stub{"P9", {}, n_repeaters};
  if (n_repeaters == 1) stub.positions = {Rational(1, 2)};
  ClassicalContrast c;
  c.classical = build_schedule(stub).completion * length;
  c.unitary_first = theorem_bounds(n_repeaters).lower * length;
  return c;
}

}  // namespace qrep
