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

#include "qrep/instances.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>

namespace qrep {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

ComplexMatrix phase_gate(int d) {
  ComplexMatrix s = ComplexMatrix::Zero(d, d);
  for (int k = 0; k < d; ++k) {
    // diag(1, i) for qubits; omega^{k(k-1)/2} for odd d.
    const double e = d == 2 ? 0.25 * k : static_cast<double>(k * (k - 1) / 2 % d) / d;
    s(k, k) = std::polar(1.0, kTwoPi * e);
  }
  return s;
}

ComplexMatrix sum_gate(int d_a, int d_b) {
  const int n = d_a * d_b;
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  for (int a = 0; a < d_a; ++a) {
    for (int b = 0; b < d_b; ++b) m(a + d_a * ((a + b) % d_b), a + d_a * b) = 1.0;
  }
  return m;
}

ComplexMatrix random_circulant(int d, Rng& rng) {
  ComplexMatrix diag = ComplexMatrix::Zero(d, d);
  for (int k = 0; k < d; ++k) diag(k, k) = std::polar(1.0, kTwoPi * rng.uniform());
  ComplexMatrix f = fourier(d);
  return f.adjoint() * diag * f;
}

ProtocolCase finish(ProtocolCase c) {
  c.report = verify_exactness(c.run, c.u, c.input);
  return c;
}

bool parse_ladder(const std::string& id, int* q, int* n) {
  return std::sscanf(id.c_str(), "P8.ladder(%d,%d)", q, n) == 2;
}

}  // namespace

std::optional<std::vector<ComplexMatrix>> control_blocks(const ComplexMatrix& u, int d_a, int d_b) {
  std::vector<ComplexMatrix> blocks(static_cast<std::size_t>(d_a), ComplexMatrix::Zero(d_b, d_b));
  for (int r = 0; r < u.rows(); ++r) {
    for (int c = 0; c < u.cols(); ++c) {
      const int ar = r % d_a;
      const int ac = c % d_a;
      if (ar != ac) {
        if (std::abs(u(r, c)) > 1e-9) return std::nullopt;
        continue;
      }
      blocks[static_cast<std::size_t>(ar)](r / d_a, c / d_a) = u(r, c);
    }
  }
  return blocks;
}

const std::vector<std::string>& protocol_ids() {
  static const std::vector<std::string> ids = {"P1", "P2", "P3", "P4", "P5", "P6", "P7", "P8",
                                               "P8.ladder(1,1)", "P8.ladder(1,3)", "P8.ladder(3,2)"};
  return ids;
}

bool protocol_supports(const std::string& protocol, int d_a, int d_b) {
  if (d_a < 2 || d_b < 2) return false;
  if (protocol == "P7") return d_a == d_b && is_prime(d_a);
  if (protocol == "P8" || protocol.rfind("P8.ladder", 0) == 0) return d_a == 2 && d_b == 2;
  for (const char* p : {"P1", "P2", "P3", "P4", "P5", "P6"}) {
    if (protocol == p) return true;
  }
  return false;
}

ComplexMatrix random_clifford(int d, Rng& rng, int length) {
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  const std::vector<ComplexMatrix> gates = {
      kron_le(fourier(d), id), kron_le(id, fourier(d)), kron_le(phase_gate(d), id),
      kron_le(id, phase_gate(d)), sum_gate(d, d),
      kron_le(gen_pauli_x(d), id), kron_le(id, gen_pauli_z(d))};
  ComplexMatrix u = ComplexMatrix::Identity(d * d, d * d);
  for (int i = 0; i < length; ++i) u = gates[static_cast<std::size_t>(rng.integer(0, static_cast<int>(gates.size()) - 1))] * u;
  return u;
}

ComplexMatrix named_gate(const std::string& name, int* d_a, int* d_b) {
  int da = 2;
  int db = 2;
  ComplexMatrix m;
  if (name == "cnot") {
    m = sum_gate(2, 2);
  } else if (name == "cz") {
    m = ComplexMatrix::Identity(4, 4);
    m(3, 3) = -1.0;
  } else if (name == "swap" || name == "iswap") {
    m = ComplexMatrix::Zero(4, 4);
    const cplx off = name == "swap" ? cplx(1.0) : cplx(0.0, 1.0);
    m(0, 0) = 1.0;
    m(3, 3) = 1.0;
    m(1, 2) = off;
    m(2, 1) = off;
  } else if (name == "sum3") {
    da = db = 3;
    m = sum_gate(3, 3);
  } else {
    throw ProtocolError("unknown gate '" + name + "' (cnot, cz, swap, iswap, sum3)");
  }
  if (d_a) *d_a = da;
  if (d_b) *d_b = db;
  return m;
}

ProtocolCase run_random_case(const std::string& protocol, int d_a, int d_b, Rng& rng) {
  if (!protocol_supports(protocol, d_a, d_b)) {
    throw ProtocolError(protocol + " has no admissible instances at dims (" + std::to_string(d_a) + "," +
                        std::to_string(d_b) + ")");
  }
  ProtocolCase c;
  c.protocol = protocol;
  c.d_a = d_a;
  c.d_b = d_b;
  const std::vector<int> ones(static_cast<std::size_t>(d_a), 1);
  int q = 0;
  int n = 0;

  if (protocol == "P8" || parse_ladder(protocol, &q, &n)) {
    c.input = random_state({2}, rng);
    if (protocol == "P8") {
      const double theta = kTwoPi * rng.uniform();
      c.u = remote_rotation(theta);
      c.run = run_protocol8(theta, c.input);
    } else {
      c.u = remote_rotation(q * std::numbers::pi / std::ldexp(1.0, n));
      c.run = run_protocol8_ladder(q, n, c.input);
    }
    return finish(std::move(c));
  }

  c.input = random_state({d_a, d_b}, rng);
  if (protocol == "P1") {
    c.u = random_unitary(d_a * d_b, rng);
    c.run = run_protocol1(c.u, c.input, d_a, d_b);
  } else if (protocol == "P2") {
    std::vector<ComplexMatrix> targets;
    for (int j = 0; j < d_a; ++j) targets.push_back(random_unitary(d_b, rng));
    ControlledForm form = controlled_form(ones, targets);
    c.u = form.unitary();
    c.run = run_protocol2(form, c.input);
  } else if (protocol == "P3") {
    if (d_a * d_b <= 6) {
      c.u = random_unitary(d_a * d_b, rng);
      c.run = run_protocol3(expand_double_group(c.u, d_a, d_b), c.input);
    } else {
      std::vector<ComplexMatrix> targets;
      for (int j = 0; j < d_a; ++j) targets.push_back(random_circulant(d_b, rng));
      c.u = controlled_form(ones, targets).unitary();
      DoubleGroupExpansion e = expand_on_reps(c.u, rep_from_generators({d_a}, {gen_pauli_z(d_a)}),
                                              rep_from_generators({d_b}, {gen_pauli_x(d_b)}));
      c.run = run_protocol3(e, c.input);
    }
  } else if (protocol == "P4") {
    c.u = random_unitary(d_a * d_b, rng);
    c.run = run_protocol4(expand_single_group(c.u, d_a, d_b), c.input);
  } else if (protocol == "P5") {
    const ComplexMatrix w = random_unitary(d_b, rng);
    ProjectiveRep rep = rep_from_generators({d_b}, {w * gen_pauli_x(d_b) * w.adjoint()});
    std::vector<ComplexMatrix> targets;
    for (int j = 0; j < d_a; ++j) targets.push_back(rep.matrix(rng.integer(0, d_b - 1)));
    ControlledForm form = controlled_form(ones, targets);
    DoubleGroupExpansion e = controlled_abelian_expansion(form, rep);
    e.fast_flag = check_fast_form(e);
    if (!e.fast_flag) throw ProtocolError("generated controlled-cyclic unitary failed the fast-form check");
    c.u = form.unitary();
    c.run = run_protocol5(e, c.input);
  } else if (protocol == "P6") {
    ProjectiveRep rep = pauli_rep(d_b);
    std::vector<ComplexMatrix> targets;
    for (int j = 0; j < d_a; ++j) {
      const cplx lambda = std::polar(1.0, kTwoPi * rng.uniform());
      targets.push_back(lambda * rep.matrix(rng.integer(0, rep.order - 1)));
    }
    ControlledForm form = controlled_form(ones, targets);
    c.u = form.unitary();
    c.run = run_protocol6(form, rep, c.input);
  } else if (protocol == "P7") {
    c.u = random_clifford(d_a, rng);
    c.run = run_protocol7_clifford(c.u, c.input, d_a);
  } else {
    throw ProtocolError("unknown protocol '" + protocol + "'");
  }
  return finish(std::move(c));
}

ProtocolCase run_fixed_case(const std::string& protocol, const ComplexMatrix& u, int d_a, int d_b,
                            const QuditState& input) {
  if (u.rows() != d_a * d_b || u.cols() != d_a * d_b) throw DimensionError("unitary does not match d_A d_B");
  if (!is_unitary(u)) throw ProtocolError("matrix is not unitary");
  ProtocolCase c;
  c.protocol = protocol;
  c.d_a = d_a;
  c.d_b = d_b;
  c.u = u;
  c.input = input;
  const std::vector<int> ones(static_cast<std::size_t>(d_a), 1);
  if (protocol == "P1") {
    c.run = run_protocol1(u, input, d_a, d_b);
  } else if (protocol == "P2" || protocol == "P6") {
    auto blocks = control_blocks(u, d_a, d_b);
    if (!blocks) throw ProtocolError("unitary is not controlled on the computational basis of A");
    ControlledForm form = controlled_form(ones, *blocks);
    if (protocol == "P2") {
      c.run = run_protocol2(form, input);
    } else {
      ProjectiveRep rep = pauli_rep(d_b);
      for (const auto& b : *blocks) {
        if (rep.find_member(b) < 0) throw ProtocolError("targets are not phased generalized Pauli operators");
      }
      c.run = run_protocol6(form, rep, input);
    }
  } else if (protocol == "P3") {
    c.run = run_protocol3(expand_double_group(u, d_a, d_b), input);
  } else if (protocol == "P4") {
    c.run = run_protocol4(expand_single_group(u, d_a, d_b), input);
  } else if (protocol == "P5") {
    DoubleGroupExpansion e = expand_double_group(u, d_a, d_b);
    e.fast_flag = check_fast_form(e);
    if (!e.fast_flag) throw ProtocolError("unitary is not of fast double-group form");
    c.run = run_protocol5(e, input);
  } else if (protocol == "P7") {
    if (d_a != d_b) throw ProtocolError("P7 needs equal prime dimensions");
    c.run = run_protocol7_clifford(u, input, d_a);
  } else {
    throw ProtocolError("protocol '" + protocol + "' does not take a fixed unitary");
  }
  return finish(std::move(c));
}

}  // namespace qrep
