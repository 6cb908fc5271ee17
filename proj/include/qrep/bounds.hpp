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

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qrep/rational.hpp"
#include "qrep/timeline.hpp"

namespace qrep {

class BoundsError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// One row of a bounds table. `quantity` is "T_s" (one-way transmission) or
/// "T" (bipartite unitary). Times are in units of L/c.
struct BoundRecord {
  std::string quantity;
  int k = 0;
  Rational lower;
  Rational upper;
  std::optional<std::string> achieving_variant;
  std::string status;  // "proved" or "conjectured"
};

/// Minimum one-way transmission time with n repeaters: 2^{n+1}/(2^{n+1}-1).
/// Proved for n <= 3; larger n needs `conjectured`.
Rational ts_bound(int n, bool conjectured = false);

struct RelayScheme {
  std::vector<Rational> positions;
  Rational time;  // engine-built
};

RelayScheme ts_scheme(int n);

/// Time bounds for an arbitrary bipartite unitary with K repeaters, K <= 3.
BoundRecord theorem_bounds(int k);
BoundRecord transmission_bounds(int n, bool conjectured = false);

/// Summary rows: repeater count label, time range and the variants that
/// attain the upper end. Label "2'" covers the one-round fast protocols.
struct TableRow {
  std::string label;
  Rational lower;
  Rational upper;
  std::vector<std::string> variants;
};

const std::vector<TableRow>& unitary_time_table();

enum class Parity { odd, even };

struct ManyNodes {
  int k = 0;
  Parity parity = Parity::odd;
  std::vector<Rational> positions;
  Rational formula_time;
  Rational engine_time;  // only filled when built
  bool engine_checked = false;
};

/// 2k+1 (odd) or 2k (even) repeaters in geometric spacing from both ends.
ManyNodes many_nodes(int k, Parity parity, bool build_engine = true);
Rational many_nodes_time(int k, Parity parity);

/// Affine function c[0] + sum_i c[i] x_i of repeater positions.
struct AffinePiece {
  std::vector<Rational> coeff;

  Rational eval(const std::vector<Rational>& x) const;
  bool operator==(const AffinePiece&) const = default;
};

/// Completion time of a family as a max of affine pieces, read off every
/// dependency path of the family's event graph. Valid whenever positions
/// are strictly increasing in (0,1).
std::vector<AffinePiece> objective_pieces(const std::string& family);
Rational objective_value(const std::vector<AffinePiece>& pieces, const std::vector<Rational>& x);

enum class OptMethod { exact, grid };

struct Placement {
  std::string family;
  std::vector<Rational> positions;
  Rational time;
  int candidates = 0;
  /// False when the infimum sits on the closure (coinciding nodes).
  bool interior = true;
};

/// Minimizes completion time over repeater positions. Exact mode enumerates
/// vertices of the piece arrangement; grid mode sweeps at resolution 1/q and
/// refines around the best sample. Ties go to the lexicographically smallest
/// position vector.
Placement optimize_placement(const std::string& family, int n, OptMethod method, int grid_q = 1000);

struct DeltaTReport {
  bool zero_limit = false;
  Rational bound;  // exact mode lower bound in units L/c
  int witness_nodes = -1;
  Parity witness_parity = Parity::odd;
  Rational witness_excess;
  bool witness_within_limit = true;
  std::string basis;
};

/// Time gap between honest and attacker schemes. Exact mode returns 2 delta/L
/// (in units L/c). Otherwise reports that the gap can approach zero, with the
/// smallest repeater count whose relay excess is below `epsilon`.
DeltaTReport delta_t_bound(const Rational& length, const Rational& delta, bool exact_mode,
                           std::optional<int> max_nodes = std::nullopt, const Rational& epsilon = Rational(1, 100));

}  // namespace qrep
