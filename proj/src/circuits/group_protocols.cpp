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
#include <numbers>
#include <string>

#include "branching.hpp"
#include "qrep/circuits.hpp"

namespace qrep {

using detail::controlled;
using detail::Path;
using detail::permutation_matrix;
using detail::Register;
using detail::require_input;
using detail::to_branches;

namespace {

ComplexMatrix diagonal(const std::vector<cplx>& entries) {
  const int n = static_cast<int>(entries.size());
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  for (int k = 0; k < n; ++k) m(k, k) = entries[static_cast<std::size_t>(k)];
  return m;
}

// Undoes the character phase chi_s(g) left on the ancilla by a Fourier-basis
// measurement with outcome s.
ComplexMatrix character_correction(const ProjectiveRep& g, int s) {
  std::vector<cplx> d(static_cast<std::size_t>(g.order));
  for (int k = 0; k < g.order; ++k) d[static_cast<std::size_t>(k)] = std::conj(g.character(s, k));
  return diagonal(d);
}

std::vector<Message> two_round_messages(double bits, const std::string& first, const std::string& second) {
  return {{"A", "B", bits, {}, first}, {"B", "A", bits, {0}, second}};
}

}  // namespace

ProtocolRun run_protocol2(const ControlledForm& form, const QuditState& input) {
  validate_controlled(form);
  require_input(input, form.d_a, form.d_b);
  const int n = form.terms();
  const std::vector<int> block = form.block_of_basis();
  ScopedDimensionCap cap(kCircuitDimensionCap);

  Register reg(input, {"A", "B"});
  reg.add(max_entangled(n), {"a", "b"});
  // Block j shifts the ancilla |t> -> |t + j>.
  std::vector<ComplexMatrix> shifts;
  for (int k = 0; k < form.d_a; ++k) shifts.push_back(pauli_power(n, -block[static_cast<std::size_t>(k)], 0));
  reg.apply(controlled(shifts), {"A", "a"});
  std::vector<Path> paths = detail::measure_paths({Path{reg}}, {"a"});

  const ComplexMatrix cv = controlled(form.targets);
  for (auto& p : paths) {
    int m = p.outcomes.back();
    std::vector<int> image(static_cast<std::size_t>(n));
    for (int t = 0; t < n; ++t) image[static_cast<std::size_t>(t)] = ((m - t) % n + n) % n;
    p.reg.apply(permutation_matrix(image), {"b"});
    p.reg.apply(cv, {"b", "B"});
  }
  paths = detail::measure_paths(paths, {"b"}, fourier(n));
  for (auto& p : paths) {
    int s = p.outcomes.back();
    ComplexMatrix phase = ComplexMatrix::Zero(form.d_a, form.d_a);
    for (int j = 0; j < n; ++j) {
      phase += std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>((j * s) % n) / n) *
               form.projectors[static_cast<std::size_t>(j)];
    }
    p.reg.apply(phase, {"A"});
  }

  ProtocolRun run;
  run.protocol_id = "P2";
  run.branches = to_branches(paths, {"A", "B"});
  const double bits = std::log2(static_cast<double>(n));
  run.resources.ebits = bits;
  run.resources.messages = two_round_messages(bits, "shift outcome", "fourier outcome");
  return run;
}

ProtocolRun run_protocol3(const DoubleGroupExpansion& exp, const QuditState& input,
                          const std::optional<ComplexMatrix>& circulant_override) {
  const int d_a = exp.d_a();
  const int d_b = exp.d_b();
  require_input(input, d_a, d_b);
  const ProjectiveRep g = exp.combined();
  const int n = g.order;
  const int na = exp.rep_a.order;
  ComplexMatrix chat = circulant_override ? *circulant_override : build_circulant(exp);
  if (chat.rows() != n || chat.cols() != n) throw DimensionError("circulant gate has the wrong size");
  ScopedDimensionCap cap(kCircuitDimensionCap);

  Register reg(input, {"A", "B"});
  reg.add(max_entangled(n), {"a", "b"});
  std::vector<ComplexMatrix> va;
  std::vector<ComplexMatrix> tb;
  for (int f = 0; f < n; ++f) {
    va.push_back(exp.rep_a.matrix(f % na));
    tb.push_back(exp.rep_b.matrix(f / na));
  }
  reg.apply(controlled(va), {"a", "A"});
  reg.apply(controlled(tb), {"b", "B"});
  std::vector<Path> paths = detail::measure_paths({Path{reg}}, {"a"}, g.fourier_basis());
  for (auto& p : paths) {
    p.reg.apply(character_correction(g, p.outcomes.back()), {"b"});
    p.reg.apply(chat, {"b"});
  }
  paths = detail::measure_paths(paths, {"b"});
  for (auto& p : paths) {
    int h = p.outcomes.back();
    p.reg.apply(va[static_cast<std::size_t>(h)].adjoint(), {"A"});
    p.reg.apply(tb[static_cast<std::size_t>(h)].adjoint(), {"B"});
  }

  ProtocolRun run;
  run.protocol_id = "P3";
  run.branches = to_branches(paths, {"A", "B"});
  const double bits = std::log2(static_cast<double>(n));
  run.resources.ebits = bits;
  run.resources.messages = two_round_messages(bits, "fourier outcome", "circulant outcome");
  return run;
}

ProtocolRun run_protocol4(const SingleGroupExpansion& exp, const QuditState& input) {
  const int d_a = exp.d_a();
  const int d_b = exp.d_b();
  require_input(input, d_a, d_b);
  const ProjectiveRep& g = exp.rep_a;
  const int n = g.order;
  const ComplexMatrix m = build_single_group_gate(exp);
  ScopedDimensionCap cap(kCircuitDimensionCap);

  Register reg(input, {"A", "B"});
  reg.add(max_entangled(n), {"a", "b"});
  reg.apply(controlled(g.matrices), {"a", "A"});
  std::vector<Path> paths = detail::measure_paths({Path{reg}}, {"a"}, g.fourier_basis());
  for (auto& p : paths) {
    p.reg.apply(character_correction(g, p.outcomes.back()), {"b"});
    p.reg.apply(m, {"b", "B"});
  }
  paths = detail::measure_paths(paths, {"b"});
  for (auto& p : paths) p.reg.apply(g.matrix(p.outcomes.back()).adjoint(), {"A"});

  ProtocolRun run;
  run.protocol_id = "P4";
  run.branches = to_branches(paths, {"A", "B"});
  const double bits = std::log2(static_cast<double>(n));
  run.resources.ebits = bits;
  run.resources.messages = two_round_messages(bits, "fourier outcome", "gate outcome");
  return run;
}

ProtocolRun run_protocol6(const ControlledForm& form, const ProjectiveRep& rep, const QuditState& input) {
  validate_controlled(form);
  require_input(input, form.d_a, form.d_b);
  if (rep.dim() != form.d_b) throw DimensionError("representation dimension does not match B");
  std::vector<int> elems;
  std::vector<cplx> lambdas;
  for (int j = 0; j < form.terms(); ++j) {
    cplx lambda;
    int e = rep.find_member(form.targets[static_cast<std::size_t>(j)], &lambda);
    if (e < 0) throw ProtocolError("target V_" + std::to_string(j) + " is not in the supplied representation");
    elems.push_back(e);
    lambdas.push_back(lambda);
  }
  const std::vector<int> block = form.block_of_basis();
  const int n = rep.order;
  ScopedDimensionCap cap(kCircuitDimensionCap);

  Register reg(input, {"A", "B"});
  reg.add(max_entangled(n), {"a", "b"});
  reg.apply(controlled(rep.matrices), {"b", "B"});
  // Block j maps the ancilla |g> -> |g g_j^-1>.
  std::vector<ComplexMatrix> shifts;
  for (int k = 0; k < form.d_a; ++k) {
    int gj = elems[static_cast<std::size_t>(block[static_cast<std::size_t>(k)])];
    std::vector<int> image(static_cast<std::size_t>(n));
    for (int x = 0; x < n; ++x) image[static_cast<std::size_t>(x)] = rep.sub(x, gj);
    shifts.push_back(permutation_matrix(image));
  }
  reg.apply(controlled(shifts), {"A", "a"});
  std::vector<Path> paths = detail::measure_paths({Path{reg}}, {"a"});
  paths = detail::measure_paths(paths, {"b"}, rep.fourier_basis());
  for (auto& p : paths) {
    int m = p.outcomes[0];
    int t = p.outcomes[1];
    p.reg.apply(rep.matrix(m).adjoint(), {"B"});
    ComplexMatrix d = ComplexMatrix::Zero(form.d_a, form.d_a);
    for (int j = 0; j < form.terms(); ++j) {
      int gj = elems[static_cast<std::size_t>(j)];
      d += lambdas[static_cast<std::size_t>(j)] * rep.omega(m, gj) * std::conj(rep.character(t, gj)) *
           form.projectors[static_cast<std::size_t>(j)];
    }
    p.reg.apply(d, {"A"});
  }

  ProtocolRun run;
  run.protocol_id = "P6";
  run.branches = to_branches(paths, {"A", "B"});
  const double bits = std::log2(static_cast<double>(n));
  run.resources.ebits = bits;
  run.resources.messages = {{"A", "B", bits, {}, "shift outcome"}, {"B", "A", bits, {}, "fourier outcome"}};
  return run;
}

}  // namespace qrep
