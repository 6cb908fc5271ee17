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
#include <string>
#include <vector>

#include "qrep/circuits.hpp"
#include "qrep/qudit.hpp"

namespace qrep::detail {

/// State with named subsystems.
class Register {
 public:
  Register() = default;
  Register(QuditState state, std::vector<std::string> labels);

  void add(const QuditState& part, const std::vector<std::string>& labels);
  void apply(const ComplexMatrix& op, const std::vector<std::string>& targets);
  int dim(const std::string& label) const;
  int index(const std::string& label) const;
  /// State permuted into `order`, which must name every subsystem.
  QuditState extract(const std::vector<std::string>& order) const;

  const QuditState& state() const { return state_; }
  const std::vector<std::string>& labels() const { return labels_; }
  void reset(QuditState state, std::vector<std::string> labels);

 private:
  std::vector<int> indices(const std::vector<std::string>& targets) const;

  QuditState state_;
  std::vector<std::string> labels_;
};

struct Path {
  Register reg;
  double probability = 1.0;
  std::vector<int> outcomes;
  int steps = 0;
};

/// Branches every path on a joint measurement of `labels`; outcomes with
/// probability below 1e-14 are dropped.
std::vector<Path> measure_paths(const std::vector<Path>& paths, const std::vector<std::string>& labels,
                                const std::optional<ComplexMatrix>& basis = std::nullopt);

/// sum_k |k><k| (x) ops[k], control first in little-endian order.
ComplexMatrix controlled(const std::vector<ComplexMatrix>& ops);

ComplexMatrix permutation_matrix(const std::vector<int>& image);

void require_input(const QuditState& input, int d_a, int d_b);

std::vector<Branch> to_branches(const std::vector<Path>& paths, const std::vector<std::string>& order);

}  // namespace qrep::detail
