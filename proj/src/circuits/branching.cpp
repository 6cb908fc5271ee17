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

#include "branching.hpp"

#include <algorithm>
#include <string>

#include "qrep/circuits.hpp"

namespace qrep::detail {

Register::Register(QuditState state, std::vector<std::string> labels) { reset(std::move(state), std::move(labels)); }

void Register::reset(QuditState state, std::vector<std::string> labels) {
  if (state.dims.size() != labels.size()) throw ProtocolError("register label count does not match subsystems");
  state_ = std::move(state);
  labels_ = std::move(labels);
}

void Register::add(const QuditState& part, const std::vector<std::string>& labels) {
  if (part.dims.size() != labels.size()) throw ProtocolError("register label count does not match subsystems");
  for (const auto& l : labels) {
    if (std::find(labels_.begin(), labels_.end(), l) != labels_.end()) throw ProtocolError("duplicate label " + l);
  }
  state_ = labels_.empty() ? part : tensor(state_, part);
  labels_.insert(labels_.end(), labels.begin(), labels.end());
}

int Register::index(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) throw ProtocolError("unknown subsystem " + label);
  return static_cast<int>(it - labels_.begin());
}

int Register::dim(const std::string& label) const { return state_.dims[static_cast<std::size_t>(index(label))]; }

std::vector<int> Register::indices(const std::vector<std::string>& targets) const {
  std::vector<int> idx;
  idx.reserve(targets.size());
  for (const auto& t : targets) idx.push_back(index(t));
  return idx;
}

void Register::apply(const ComplexMatrix& op, const std::vector<std::string>& targets) {
  state_ = apply_on(state_, op, indices(targets));
}

QuditState Register::extract(const std::vector<std::string>& order) const {
  if (order.size() != labels_.size()) throw ProtocolError("extract must name every subsystem");
  return permute(state_, indices(order));
}

std::vector<Path> measure_paths(const std::vector<Path>& paths, const std::vector<std::string>& labels,
                                const std::optional<ComplexMatrix>& basis) {
  std::vector<Path> out;
  for (const auto& path : paths) {
    std::vector<int> targets;
    for (const auto& l : labels) targets.push_back(path.reg.index(l));
    std::vector<std::string> rest;
    for (const auto& l : path.reg.labels()) {
      if (std::find(labels.begin(), labels.end(), l) == labels.end()) rest.push_back(l);
    }
    for (auto& br : measure_joint(path.reg.state(), targets, basis)) {
      if (br.probability < 1e-14) continue;
      Path next;
      next.probability = path.probability * br.probability;
      next.outcomes = path.outcomes;
      next.outcomes.push_back(br.outcome);
      next.steps = path.steps;
      if (rest.empty()) {
        next.reg.reset(br.post_state, {"_"});
      } else {
        next.reg.reset(std::move(br.post_state), rest);
      }
      out.push_back(std::move(next));
    }
  }
  return out;
}

ComplexMatrix controlled(const std::vector<ComplexMatrix>& ops) {
  const int n = static_cast<int>(ops.size());
  const auto d = ops.front().rows();
  ComplexMatrix out = ComplexMatrix::Zero(n * d, n * d);
  for (int k = 0; k < n; ++k) {
    ComplexMatrix proj = ComplexMatrix::Zero(n, n);
    proj(k, k) = 1.0;
    out += kron_le(proj, ops[static_cast<std::size_t>(k)]);
  }
  return out;
}

void require_input(const QuditState& input, int d_a, int d_b) {
  if (input.dims != std::vector<int>{d_a, d_b}) {
    throw DimensionError("input dims must be (" + std::to_string(d_a) + ", " + std::to_string(d_b) + ")");
  }
}

std::vector<Branch> to_branches(const std::vector<Path>& paths, const std::vector<std::string>& order) {
  std::vector<Branch> out;
  out.reserve(paths.size());
  for (const auto& p : paths) out.push_back({p.outcomes, p.probability, p.reg.extract(order), p.steps});
  return out;
}

ComplexMatrix permutation_matrix(const std::vector<int>& image) {
  const int n = static_cast<int>(image.size());
  ComplexMatrix p = ComplexMatrix::Zero(n, n);
  for (int k = 0; k < n; ++k) p(image[static_cast<std::size_t>(k)], k) = 1.0;
  return p;
}

}  // namespace qrep::detail
