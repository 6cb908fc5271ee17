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

#include "qrep/bounds.hpp"

namespace qrep {
namespace {

std::int64_t pow2(int e) {
  if (e < 0 || e > 62) throw BoundsError("exponent out of range");
  return std::int64_t{1} << e;
}

}  // namespace

Rational ts_bound(int n, bool conjectured) {
  if (n < 0) throw BoundsError("repeater count must be nonnegative");
  if (n > 3 && !conjectured) throw BoundsError("transmission bound is only proved for n <= 3");
  const std::int64_t p = pow2(n + 1);
  return Rational(p, p - 1);
}

RelayScheme ts_scheme(int n) {
  RelayScheme s;
  switch (n) {
    case 0:
      break;
    case 1:
      s.positions = {Rational(1, 3)};
      break;
    case 2:
      s.positions = {Rational(1, 7), Rational(3, 7)};
      break;
    case 3:
      s.positions = {Rational(1, 15), Rational(1, 5), Rational(7, 15)};
      break;
    default:
      throw BoundsError("transmission scheme is only constructed for n <= 3");
  }
  s.time = build_one_way_relay(LineTopology::with_repeaters(s.positions)).completion;
  return s;
}

BoundRecord theorem_bounds(int k) {
  BoundRecord r;
  r.quantity = "T";
  r.k = k;
  r.status = "proved";
  switch (k) {
    case 0:
      r.lower = Rational(2);
      r.upper = Rational(3);
      r.achieving_variant = "P1";
      break;
    case 1:
      r.lower = Rational(3, 2);
      r.upper = Rational(3, 2);
      r.achieving_variant = "P1.1(1/2)";
      break;
    case 2:
      r.lower = Rational(5, 4);
      r.upper = Rational(7, 5);
      r.achieving_variant = "P1.2(1/5,3/5)";
      break;
    case 3:
      r.lower = Rational(7, 6);
      r.upper = Rational(7, 6);
      r.achieving_variant = "P1.3(1/6,1/2,5/6)";
      break;
    default:
      throw BoundsError("unitary time bounds are only established for K <= 3");
  }
  return r;
}

BoundRecord transmission_bounds(int n, bool conjectured) {
  BoundRecord r;
  r.quantity = "T_s";
  r.k = n;
  r.lower = ts_bound(n, conjectured);
  r.upper = r.lower;
  r.status = n > 3 ? "conjectured" : "proved";
  if (n <= 3) r.achieving_variant = "relay" + ProtocolVariant{"", ts_scheme(n).positions}.name();
  return r;
}

const std::vector<TableRow>& unitary_time_table() {
  static const std::vector<TableRow> rows = {
      {"0", Rational(2), Rational(3), {"P1"}},
      {"1", Rational(3, 2), Rational(3, 2), {"P1.1(1/2)"}},
      {"2", Rational(5, 4), Rational(7, 5), {"P1.2(1/5,3/5)", "P3.2(1/5,3/5)"}},
      {"2'", Rational(5, 4), Rational(4, 3), {"P5.2(1/3,2/3)", "P6.2(1/3,2/3)", "P7.2(1/3,2/3)"}},
      {"3", Rational(7, 6), Rational(7, 6), {"P1.3(1/6,1/2,5/6)", "P3.3(1/6,1/2,5/6)"}},
  };
  return rows;
}

Rational many_nodes_time(int k, Parity parity) {
  if (k < 0) throw BoundsError("k must be nonnegative");
  if (parity == Parity::odd) return Rational(1) + Rational(1, 2 * (pow2(k + 1) - 1));
  const std::int64_t p = pow2(k + 2);
  return Rational(p - 1, p - 3);
}

ManyNodes many_nodes(int k, Parity parity, bool build_engine) {
  if (k < 0) throw BoundsError("k must be nonnegative");
  ManyNodes m;
  m.k = k;
  m.parity = parity;
  m.formula_time = many_nodes_time(k, parity);
  int middle = 0;
  if (parity == Parity::odd) {
    const Rational x(1, 2 * (pow2(k + 1) - 1));
    for (int j = 1; j <= k; ++j) m.positions.push_back(x * Rational(pow2(j) - 1));
    m.positions.push_back(Rational(1, 2));
    for (int j = k; j >= 1; --j) m.positions.push_back(Rational(1) - x * Rational(pow2(j) - 1));
    middle = k + 1;
  } else if (k == 0) {
    middle = 1;  // no repeaters; B does the work
  } else {
    const Rational x(1, pow2(k + 2) - 3);
    for (int j = 1; j <= k + 1; ++j) m.positions.push_back(x * Rational(pow2(j) - 1));
    for (int j = k - 1; j >= 1; --j) m.positions.push_back(Rational(1) - 2 * x * Rational(pow2(j) - 1));
    middle = k + 1;
  }
  if (build_engine) {
    m.engine_time = build_relay_roundtrip(LineTopology::with_repeaters(m.positions), middle).completion;
    m.engine_checked = true;
  }
  return m;
}

DeltaTReport delta_t_bound(const Rational& length, const Rational& delta, bool exact_mode, std::optional<int> max_nodes,
                           const Rational& epsilon) {
  if (!(length > Rational(0))) throw BoundsError("length must be positive");
  if (delta < Rational(0)) throw BoundsError("delta must be nonnegative");
  DeltaTReport r;
  if (exact_mode) {
    r.bound = 2 * delta / length;
    r.basis = "exact implementation with relay or group-expansion protocols: gap >= 2 delta / c";
    return r;
  }
  if (!(length > 6 * delta)) throw BoundsError("hypothesis violated: zero-limit analysis needs L > 6 delta");
  if (!(epsilon > Rational(0))) throw BoundsError("epsilon must be positive");
  r.zero_limit = true;
  r.bound = Rational(0);
  r.basis = "approximate or fast-form implementation: gap approaches 0 as repeaters are added";
  for (int nodes = 0; nodes <= 121; ++nodes) {
    const Parity parity = nodes % 2 == 1 ? Parity::odd : Parity::even;
    const int k = parity == Parity::odd ? (nodes - 1) / 2 : nodes / 2;
    const Rational excess = many_nodes_time(k, parity) - Rational(1);
    if (excess < epsilon) {
      r.witness_nodes = nodes;
      r.witness_parity = parity;
      r.witness_excess = excess;
      r.witness_within_limit = !max_nodes || nodes <= *max_nodes;
      return r;
    }
  }
  throw BoundsError("epsilon too small for the supported repeater range");
}

}  // namespace qrep
