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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "qrep/circuits.hpp"
#include "qrep/group_forms.hpp"
#include "qrep/instances.hpp"
#include "qrep/random.hpp"
#include "test_support.hpp"

using namespace qrep;

namespace {

// Direct oracle: U|input> computed without any protocol machinery.
QuditState apply_direct(const ComplexMatrix& u, const QuditState& in) {
  return QuditState(in.dims, u * in.amplitudes);
}

void check_case(const ProtocolCase& c) {
  INFO(c.protocol << " at (" << c.d_a << "," << c.d_b << ")");
  REQUIRE_FALSE(c.run.branches.empty());
  double total = 0;
  const QuditState want = apply_direct(c.u, c.input);
  for (const Branch& b : c.run.branches) {
    total += b.probability;
    if (b.probability > 1e-14) CHECK(overlap(b.output, want) >= 1 - 1e-9);
  }
  CHECK(std::abs(total - 1.0) < 1e-9);
  CHECK(c.report.pass);
}

}  // namespace

TEST_CASE("every protocol is exact on seeded random instances") {
  Rng rng(101);
  for (const std::string& p : protocol_ids()) {
    for (auto [da, db] : {std::pair{2, 2}, std::pair{2, 3}, std::pair{3, 3}}) {
      if (!protocol_supports(p, da, db)) continue;
      for (int t = 0; t < 3; ++t) check_case(run_random_case(p, da, db, rng));
    }
  }
}

TEST_CASE("support matrix for random instances") {
  CHECK(protocol_supports("P1", 2, 3));
  CHECK(protocol_supports("P7", 3, 3));
  CHECK_FALSE(protocol_supports("P7", 2, 3));
  CHECK_FALSE(protocol_supports("P8", 3, 3));
  CHECK(protocol_supports("P8.ladder(3,2)", 2, 2));
  Rng rng(1);
  CHECK_THROWS_AS(run_random_case("P8", 3, 3, rng), ProtocolError);
}

TEST_CASE("P3 negative control: a wrong circulant gate is caught by the oracle") {
  Rng rng(7);
  const ComplexMatrix u = random_unitary(4, rng);
  const QuditState in = random_state({2, 2}, rng);
  const DoubleGroupExpansion e = expand_double_group(u, 2, 2);
  ComplexMatrix wrong = build_circulant(e);
  wrong.col(0).swap(wrong.col(1));
  const ProtocolRun run = run_protocol3(e, in, wrong);
  CHECK_FALSE(verify_exactness(run, u, in).pass);
  CHECK(verify_exactness(run_protocol3(e, in), u, in).pass);
}

TEST_CASE("exactness oracle flags a tampered branch") {
  Rng rng(8);
  const ComplexMatrix u = random_unitary(4, rng);
  const QuditState in = random_state({2, 2}, rng);
  ProtocolRun run = run_protocol1(u, in, 2, 2);
  REQUIRE(verify_exactness(run, u, in).pass);
  run.branches.back().output = apply_direct(gen_pauli_x(4), run.branches.back().output);
  const ExactnessReport r = verify_exactness(run, u, in);
  CHECK_FALSE(r.pass);
  CHECK(r.worst_branch >= 0);
  run.branches.pop_back();
  CHECK(verify_exactness(run, u, in).probability_deviation > 1e-3);
}

TEST_CASE("classical bits are twice the ebits for protocols 1 to 7") {
  Rng rng(9);
  for (const std::string p : {"P1", "P2", "P3", "P4", "P5", "P6", "P7"}) {
    const ProtocolCase c = run_random_case(p, 2, 2, rng);
    INFO(p);
    CHECK(c.run.resources.ebits > 0);
    CHECK(c.run.resources.cbits() == Catch::Approx(2 * c.run.resources.ebits));
  }
}

TEST_CASE("single-group protocol uses half the entanglement of the double-group one") {
  Rng rng(10);
  const ComplexMatrix u = random_unitary(4, rng);
  const QuditState in = random_state({2, 2}, rng);
  const ProtocolCase p3 = run_fixed_case("P3", u, 2, 2, in);
  const ProtocolCase p4 = run_fixed_case("P4", u, 2, 2, in);
  CHECK(p4.run.resources.ebits == 2.0);
  CHECK(p3.run.resources.ebits == 4.0);
}

TEST_CASE("remote rotation costs one ebit and two opposite bits") {
  Rng rng(11);
  const QuditState in = random_state({2}, rng);
  const double theta = 0.37;
  const ProtocolRun run = run_protocol8(theta, in);
  CHECK(run.resources.ebits == 1.0);
  REQUIRE(run.resources.messages.size() == 2);
  const Message& m0 = run.resources.messages[0];
  const Message& m1 = run.resources.messages[1];
  CHECK(m0.from == m1.to);
  CHECK(m0.to == m1.from);
  CHECK(run.resources.cbits() == 2.0);
  ComplexMatrix rz = ComplexMatrix::Zero(2, 2);
  rz(0, 0) = std::polar(1.0, theta);
  rz(1, 1) = std::polar(1.0, -theta);
  CHECK(max_abs(remote_rotation(theta) - rz) < 1e-15);
  CHECK(verify_exactness(run, rz, in).pass);
}

TEST_CASE("rotation ladder covers odd multiples of pi over powers of two") {
  Rng rng(12);
  const QuditState in = random_state({2}, rng);
  for (auto [q, n] : {std::pair{1, 1}, std::pair{1, 3}, std::pair{3, 2}}) {
    const ProtocolRun run = run_protocol8_ladder(q, n, in);
    CHECK(verify_exactness(run, remote_rotation(q * std::numbers::pi / (1 << n)), in).pass);
  }
  CHECK_THROWS(run_protocol8_ladder(2, 2, in));
}

TEST_CASE("round structure: one parallel round for fast protocols, dependent rounds otherwise") {
  Rng rng(13);
  for (const std::string p : {"P5", "P6", "P7"}) {
    const ProtocolCase c = run_random_case(p, 3, 3, rng);
    INFO(p);
    CHECK(c.run.resources.rounds() == 1);
    CHECK(c.run.resources.single_parallel_round());
  }
  for (const std::string p : {"P2", "P3", "P4"}) {
    const ProtocolCase c = run_random_case(p, 2, 2, rng);
    INFO(p);
    CHECK(c.run.resources.rounds() >= 2);
    CHECK_FALSE(c.run.resources.single_parallel_round());
  }
}

TEST_CASE("fixed cases on the CNOT fixture") {
  Rng rng(14);
  const ComplexMatrix u = testing::cnot_fixture();
  int da = 0;
  int db = 0;
  CHECK(max_abs(named_gate("cnot", &da, &db) - u) < 1e-15);
  CHECK((da == 2 && db == 2));
  for (const std::string p : {"P1", "P2", "P3", "P4", "P5", "P6", "P7"}) {
    const QuditState in = random_state({2, 2}, rng);
    check_case(run_fixed_case(p, u, 2, 2, in));
  }
}

TEST_CASE("fixed cases reject inapplicable forms") {
  Rng rng(15);
  const ComplexMatrix u = random_unitary(4, rng);
  const QuditState in = random_state({2, 2}, rng);
  CHECK_THROWS_AS(run_fixed_case("P2", u, 2, 2, in), ProtocolError);
  CHECK_THROWS_AS(run_fixed_case("P5", u, 2, 2, in), ProtocolError);
  CHECK_THROWS(run_fixed_case("P3", 2.0 * u, 2, 2, in));
  CHECK_THROWS(run_fixed_case("P1", u, 2, 3, in));
}

TEST_CASE("product factorization") {
  Rng rng(16);
  const ComplexMatrix ka = random_unitary(2, rng);
  const ComplexMatrix kb = random_unitary(3, rng);
  const auto f = factor_product(kron_le(ka, kb), 2, 3);
  REQUIRE(f.has_value());
  CHECK(max_abs(kron_le(f->first, f->second) - kron_le(ka, kb)) < 1e-9);
  CHECK_FALSE(factor_product(testing::cnot_fixture(), 2, 2).has_value());
}

TEST_CASE("fast form detection") {
  CHECK(check_fast_form(expand_double_group(testing::cnot_fixture(), 2, 2)));
  Rng rng(17);
  CHECK_FALSE(check_fast_form(expand_double_group(random_unitary(4, rng), 2, 2)));
}

TEST_CASE("random cliffords are reproducible from the seed") {
  Rng a(5);
  Rng b(5);
  CHECK(max_abs(random_clifford(3, a) - random_clifford(3, b)) == 0.0);
}
