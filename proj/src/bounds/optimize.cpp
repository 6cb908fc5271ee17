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
#include <cmath>
#include <limits>
#include <functional>
#include <optional>
#include <set>
#include <stdexcept>

#include "qrep/bounds.hpp"

namespace qrep {
namespace {

using Vec = std::vector<Rational>;

// Position of `node` as an affine function of the repeater positions.
Vec node_affine(int node, int n) {
  Vec v(static_cast<std::size_t>(n) + 1, Rational(0));
  if (node == n + 1) {
    v[0] = Rational(1);
  } else if (node > 0) {
    v[static_cast<std::size_t>(node)] = Rational(1);
  }
  return v;
}

Vec sub(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Vec add(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

bool increasing(const Vec& x, bool strict) {
  Rational prev(0);
  for (const auto& v : x) {
    if (strict ? !(prev < v) : v < prev) return false;
    prev = v;
  }
  return strict ? prev < Rational(1) : prev <= Rational(1);
}

// Hyperplane a.x = b, normalized so the first nonzero entry of a is 1.
struct Plane {
  Vec a;
  Rational b;
  auto operator<=>(const Plane&) const = default;
};

std::optional<Plane> make_plane(Vec a, Rational b) {
  auto it = std::find_if(a.begin(), a.end(), [](const Rational& v) { return v != Rational(0); });
  if (it == a.end()) return std::nullopt;
  Rational lead = *it;
  for (auto& v : a) v /= lead;
  b /= lead;
  return Plane{std::move(a), b};
}

// Unique solution of the square system, or nullopt when singular.
std::optional<Vec> solve(std::vector<Vec> m, Vec rhs) {
  const std::size_t n = rhs.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m[piv][col] == Rational(0)) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(m[piv], m[col]);
    std::swap(rhs[piv], rhs[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || m[r][col] == Rational(0)) continue;
      Rational f = m[r][col] / m[col][col];
      for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
      rhs[r] -= f * rhs[col];
    }
  }
  Vec x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = rhs[i] / m[i][i];
  return x;
}

struct Best {
  Vec x;
  Rational t;
  bool interior = false;
  bool set = false;

  void offer(const Vec& cand, const Rational& value) {
    const bool inner = increasing(cand, true) && !cand.empty() && cand.front() > Rational(0);
    if (!set || value < t || (value == t && inner && !interior) ||
        (value == t && inner == interior && cand < x)) {
      x = cand;
      t = value;
      interior = inner;
      set = true;
    }
  }
};

Placement exact_search(const std::string& family, int n, const std::vector<AffinePiece>& pieces) {
  std::set<Plane> planes;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    for (std::size_t j = i + 1; j < pieces.size(); ++j) {
      Vec d = sub(pieces[i].coeff, pieces[j].coeff);
      Vec a(d.begin() + 1, d.end());
      if (auto p = make_plane(a, -d[0])) planes.insert(*p);
    }
  }
  // Closure of the ordering constraints 0 <= x1 <= ... <= xn <= 1.
  for (int i = 0; i <= n; ++i) {
    Vec a(static_cast<std::size_t>(n), Rational(0));
    Rational b(0);
    if (i < n) a[static_cast<std::size_t>(i)] = Rational(1);
    if (i > 0) a[static_cast<std::size_t>(i - 1)] = Rational(-1);
    if (i == n) b = Rational(1);
    if (auto p = make_plane(a, b)) planes.insert(*p);
  }
  std::vector<Plane> list(planes.begin(), planes.end());
  Best best;
  int candidates = 0;
  std::vector<std::size_t> idx(static_cast<std::size_t>(n));
  // Enumerate n-subsets of planes in lexicographic order.
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t depth, std::size_t start) {
    if (depth == idx.size()) {
      std::vector<Vec> m;
      Vec rhs;
      for (std::size_t k : idx) {
        m.push_back(list[k].a);
        rhs.push_back(list[k].b);
      }
      std::optional<Vec> x;
      try {
        x = solve(m, rhs);
      } catch (const std::overflow_error&) {
        return;
      }
      if (!x || !increasing(*x, false) || (*x)[0] < Rational(0)) return;
      ++candidates;
      best.offer(*x, objective_value(pieces, *x));
      return;
    }
    for (std::size_t k = start; k < list.size(); ++k) {
      idx[depth] = k;
      rec(depth + 1, k + 1);
    }
  };
  rec(0, 0);
  if (!best.set) throw BoundsError("no feasible vertex for " + family);
  return Placement{family, best.x, best.t, candidates, best.interior};
}

Placement grid_search(const std::string& family, int n, const std::vector<AffinePiece>& pieces, int q) {
  if (q < n + 1) throw BoundsError("grid resolution too coarse for the repeater count");
  double combos = 1.0;
  for (int i = 0; i < n; ++i) combos *= static_cast<double>(q - 1 - i) / (i + 1);
  if (combos > 5e7) throw BoundsError("grid too large; lower the resolution");

  std::vector<std::vector<double>> coeff;
  for (const auto& p : pieces) {
    std::vector<double> c;
    for (const auto& v : p.coeff) c.push_back(v.to_double());
    coeff.push_back(std::move(c));
  }
  auto eval = [&](const std::vector<double>& x) {
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& c : coeff) {
      double v = c[0];
      for (std::size_t i = 0; i < x.size(); ++i) v += c[i + 1] * x[i];
      best = std::max(best, v);
    }
    return best;
  };

  // Sweeps integer tuples lo <= i1 < ... < in <= hi at step 1/den.
  auto sweep = [&](std::vector<std::int64_t> lo, std::vector<std::int64_t> hi, std::int64_t den,
                   std::vector<std::int64_t>& arg, int& count) {
    double best = std::numeric_limits<double>::infinity();
    std::vector<std::int64_t> cur(static_cast<std::size_t>(n));
    std::vector<double> x(static_cast<std::size_t>(n));
    std::function<void(int, std::int64_t)> rec = [&](int d, std::int64_t from) {
      if (d == n) {
        ++count;
        double v = eval(x);
        if (v < best - 1e-12) {
          best = v;
          arg = cur;
        }
        return;
      }
      for (std::int64_t i = std::max(from, lo[static_cast<std::size_t>(d)]); i <= hi[static_cast<std::size_t>(d)]; ++i) {
        cur[static_cast<std::size_t>(d)] = i;
        x[static_cast<std::size_t>(d)] = static_cast<double>(i) / static_cast<double>(den);
        rec(d + 1, i + 1);
      }
    };
    rec(0, 1);
  };

  int count = 0;
  std::vector<std::int64_t> arg;
  sweep(std::vector<std::int64_t>(static_cast<std::size_t>(n), 1), std::vector<std::int64_t>(static_cast<std::size_t>(n), q - 1),
        q, arg, count);
  // Refine at ten times the resolution within one coarse step.
  constexpr std::int64_t kRefine = 10;
  const std::int64_t fine = static_cast<std::int64_t>(q) * kRefine;
  std::vector<std::int64_t> lo, hi;
  for (auto a : arg) {
    lo.push_back(std::max<std::int64_t>(1, (a - 1) * kRefine));
    hi.push_back(std::min<std::int64_t>(fine - 1, (a + 1) * kRefine));
  }
  std::vector<std::int64_t> refined = arg;
  for (auto& r : refined) r *= kRefine;
  sweep(lo, hi, fine, refined, count);

  Vec x;
  for (auto r : refined) x.push_back(Rational(r, fine));
  return Placement{family, x, objective_value(pieces, x), count, true};
}

}  // namespace

Rational AffinePiece::eval(const std::vector<Rational>& x) const {
  if (x.size() + 1 != coeff.size()) throw BoundsError("position count does not match the objective");
  Rational v = coeff[0];
  for (std::size_t i = 0; i < x.size(); ++i) v += coeff[i + 1] * x[i];
  return v;
}

Rational objective_value(const std::vector<AffinePiece>& pieces, const std::vector<Rational>& x) {
  if (pieces.empty()) return Rational(0);
  Rational best = pieces.front().eval(x);
  for (const auto& p : pieces) best = max(best, p.eval(x));
  return best;
}

std::vector<AffinePiece> objective_pieces(const std::string& family) {
  const std::string fam = normalize_family(family);
  const int n = family_repeaters(fam);
  if (n < 1) throw BoundsError("family " + fam + " has no repeater positions to optimize");
  const Schedule s = build_schedule(ProtocolVariant{fam, default_positions(fam)});

  std::vector<std::set<Vec>> ends(s.events.size());
  std::set<Vec> all;
  const Vec zero(static_cast<std::size_t>(n) + 1, Rational(0));
  for (const auto& e : s.events) {
    std::set<Vec> starts;
    if (e.depends_on.empty()) starts.insert(zero);
    for (int d : e.depends_on) starts.insert(ends[static_cast<std::size_t>(d)].begin(), ends[static_cast<std::size_t>(d)].end());
    Vec dur = zero;
    if (e.from != e.to) {
      const int lo = std::min(e.from, e.to);
      const int hi = std::max(e.from, e.to);
      dur = sub(node_affine(hi, n), node_affine(lo, n));
    } else if (e.duration != Rational(0)) {
      dur[0] = e.duration;
    }
    auto& out = ends[static_cast<std::size_t>(e.id)];
    for (const auto& st : starts) out.insert(add(st, dur));
    all.insert(out.begin(), out.end());
  }
  std::vector<AffinePiece> pieces;
  for (const auto& v : all) pieces.push_back(AffinePiece{v});
  return pieces;
}

Placement optimize_placement(const std::string& family, int n, OptMethod method, int grid_q) {
  std::string fam;
  try {
    fam = normalize_family(family);
  } catch (const TimelineError& e) {
    throw BoundsError(std::string("unsupported family: ") + e.what());
  }
  if (fam == "P9") throw BoundsError("unsupported family: P9 has no placement objective");
  const int need = family_repeaters(fam);
  if (need < 1) throw BoundsError("unsupported family: " + fam + " has no repeaters");
  if (need != n) {
    throw BoundsError("family " + fam + " uses " + std::to_string(need) + " repeaters, not " + std::to_string(n));
  }
  const auto pieces = objective_pieces(fam);
  Placement p = method == OptMethod::exact ? exact_search(fam, n, pieces) : grid_search(fam, n, pieces, grid_q);
  if (p.interior) {
    const Rational engine = build_schedule(ProtocolVariant{fam, p.positions}).completion;
    if (engine != p.time) throw std::logic_error("objective pieces disagree with the event engine for " + fam);
  }
  return p;
}

}  // namespace qrep
