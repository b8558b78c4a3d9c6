// Copyright 2026 The qshutter developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "qshutter/interrogation.hpp"
#include "qshutter/measure.hpp"
#include "qshutter/protocols.hpp"
#include "qshutter/shutter.hpp"
#include "test_helpers.hpp"

using namespace qshutter;
using namespace qshutter::testing;

namespace {
const double kPi = std::numbers::pi;
const std::vector<std::string> kAB = {"A0", "A1"};
const std::vector<std::string> kCD = {"B0", "B1"};
}  // namespace

TEST_CASE("tensor of identities is the identity") {
  const Operator i4 = tensor(Operator::identity(kAB), Operator::identity(kCD));
  CHECK(max_abs_diff(i4.matrix(), Eigen::MatrixXcd::Identity(4, 4)) == 0.0);
  CHECK(i4.basis() == std::vector<std::string>{"A0*B0", "A0*B1", "A1*B0",
                                               "A1*B1"});
}

TEST_CASE("tensor of |+> with |H1> has the outer-major amplitude layout") {
  const PureState plus = shutter_plus();
  const PureState h1 = PureState::basis_state(bases::polarization4, "H1");
  const PureState prod = tensor(plus, h1);
  const double r = 1.0 / std::sqrt(2.0);
  Eigen::VectorXcd want(8);
  want << r, 0, 0, 0, r, 0, 0, 0;
  CHECK(max_abs_diff(prod.amps(), want) <= 1e-15);
  CHECK(prod.basis().front() == "S1*H1");
  CHECK(prod.basis().back() == "S2*V2");
}

TEST_CASE("tensor rejects overlapping label sets") {
  const Operator id = Operator::identity(bases::hv);
  CHECK_THROWS_AS(tensor(id, id), precondition_error);
}

TEST_CASE("tensor of normalized states stays normalized") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 100; ++i) {
    const PureState a = random_state(kAB, rng);
    const PureState b = random_state(bases::ports, rng);
    const PureState prod = tensor(a, b);
    CHECK(std::abs(prod.amps().norm() - 1.0) <= 1e-12);
    CHECK(prod.weight() == doctest::Approx(a.weight() * b.weight()));
  }
}

TEST_CASE("apply: identity fixes the state") {
  std::mt19937_64 rng(5);
  const PureState s = random_state(bases::polarization4, rng);
  const PureState out = apply(Operator::identity(bases::polarization4), s);
  CHECK(max_abs_diff(out.amps(), s.amps()) == 0.0);
}

TEST_CASE("apply: quarter-turn rotation sends |H> to -|V>") {
  const PureState out =
      apply(rotation(kPi / 2), PureState::basis_state(bases::hv, "H"));
  CHECK(std::abs(out.amp("H")) <= 1e-12);
  CHECK(std::abs(out.amp("V") - cx(-1.0, 0.0)) <= 1e-12);
}

TEST_CASE("apply preserves the norm under random unitaries") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 100; ++i) {
    const Operator u = random_unitary(bases::polarization4, rng);
    const PureState s = random_state(bases::polarization4, rng);
    CHECK(std::abs(apply(u, s).amps().norm() - 1.0) <= 1e-12);
  }
}

TEST_CASE("apply rejects a basis mismatch") {
  const PureState s = PureState::basis_state(bases::hv, "H");
  CHECK_THROWS_AS(apply(Operator::identity(kAB), s), precondition_error);
}

TEST_CASE("matrix_power_direct: powers 0 and 1") {
  const Operator u = rotation(0.4);
  CHECK(max_abs_diff(matrix_power_direct(u, 1).matrix(), u.matrix()) == 0.0);
  CHECK(max_abs_diff(matrix_power_direct(u, 0).matrix(),
                     Eigen::MatrixXcd::Identity(2, 2)) == 0.0);
  CHECK_THROWS_AS(matrix_power_direct(u, -1), precondition_error);
}

TEST_CASE("24 repeated pi/48 rotations give a quarter turn") {
  CHECK(max_abs_diff(matrix_power_direct(rotation(kPi / 48), 24).matrix(),
                     rotation(kPi / 2).matrix()) <= 1e-12);
}

TEST_CASE("spectral_power reproduces the closed-form rotation power") {
  CHECK(max_abs_diff(spectral_power(rotation(0.3), 7).matrix(),
                     rotation(7 * 0.3).matrix()) <= 1e-10);
}

TEST_CASE("spectral_power at n=1 returns the operator itself") {
  const Operator u = build_cycle_unitary(kPi / 6);
  CHECK(max_abs_diff(spectral_power(u, 1).matrix(), u.matrix()) <= 1e-10);
}

TEST_CASE("spectral_power equals the repeated-multiplication oracle") {
  const Operator u = build_cycle_unitary(kPi / 10);
  CHECK(max_abs_diff(spectral_power(u, 9).matrix(),
                     matrix_power_direct(u, 9).matrix()) <= 1e-10);
}

TEST_CASE("spectral vs direct powers agree on the full grid") {
  for (const double theta : {kPi / 48, kPi / 10, kPi / 6, kPi / 4}) {
    const Operator rot = rotation(theta);
    const Operator cycle = build_cycle_unitary(theta);
    for (int n = 1; n <= 25; ++n) {
      CHECK(max_abs_diff(spectral_power(rot, n).matrix(),
                         matrix_power_direct(rot, n).matrix()) <= 1e-10);
      CHECK(max_abs_diff(spectral_power(cycle, n).matrix(),
                         matrix_power_direct(cycle, n).matrix()) <= 1e-10);
    }
  }
}

TEST_CASE("spectral_power supports negative powers of unitaries") {
  const Operator u = rotation(0.7);
  CHECK(max_abs_diff(spectral_power(u, -3).matrix(),
                     rotation(-2.1).matrix()) <= 1e-10);
}

TEST_CASE("spectral_power rejects non-normal input") {
  Eigen::MatrixXcd shear(2, 2);
  shear << 1, 1, 0, 1;
  const Operator bad(bases::hv, shear);
  CHECK_THROWS_AS(spectral_power(bad, 2), precondition_error);
}

TEST_CASE("measure: |H> against the polarization projectors") {
  const auto branches = measure(
      PureState::basis_state(bases::hv, "H"),
      {{"H", Operator::diagonal_projector(bases::hv, {"H"})},
       {"V", Operator::diagonal_projector(bases::hv, {"V"})}});
  REQUIRE(branches.size() == 2);
  CHECK(branches[0].probability == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(branches[1].probability == 0.0);
  CHECK(branches[0].state.has_value());
  CHECK_FALSE(branches[1].state.has_value());
  CHECK(branches[0].record_value("outcome") == "H");
}

TEST_CASE("measure: an equal superposition splits half and half") {
  Eigen::VectorXcd amps(2);
  amps << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  const auto branches = measure(
      PureState(bases::hv, amps),
      {{"H", Operator::diagonal_projector(bases::hv, {"H"})},
       {"V", Operator::diagonal_projector(bases::hv, {"V"})}});
  CHECK(branches[0].probability == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(branches[1].probability == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("measure: branch probabilities sum to the input weight") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 50; ++i) {
    const Operator u = random_unitary(bases::polarization4, rng);
    std::vector<NamedProjector> projectors;
    for (Eigen::Index c = 0; c < 4; ++c) {
      const PureState col(bases::polarization4, u.matrix().col(c));
      projectors.push_back(
          {"e" + std::to_string(c), Operator::projector_onto(col)});
    }
    const double weight = (i % 2 == 0) ? 1.0 : 0.25;
    const PureState s = random_state(bases::polarization4, rng).with_weight(weight);
    const auto branches = measure(s, projectors);
    CHECK(std::abs(branch_probability_sum(branches) - weight) <= 1e-12);
    for (const auto& b : branches) {
      if (b.state.has_value()) {
        CHECK(std::abs(b.state->amps().norm() - 1.0) <= 1e-12);
      }
    }
  }
}

TEST_CASE("measure rejects an incomplete projector set") {
  const PureState s = PureState::basis_state(bases::hv, "H");
  CHECK_THROWS_AS(
      measure(s, {{"H", Operator::diagonal_projector(bases::hv, {"H"})}}),
      precondition_error);
}

TEST_CASE("measure rejects non-orthogonal projectors") {
  const PureState s = PureState::basis_state(bases::hv, "H");
  const Operator ph = Operator::diagonal_projector(bases::hv, {"H"});
  CHECK_THROWS_AS(measure(s, {{"H", ph}, {"H again", ph}}),
                  precondition_error);
}

TEST_CASE("measure rejects a non-projector") {
  const PureState s = PureState::basis_state(bases::hv, "H");
  CHECK_THROWS_AS(
      measure(s, {{"rot", rotation(0.3)},
                  {"rest", Operator::diagonal_projector(bases::hv, {"V"})}}),
      precondition_error);
}

TEST_CASE("every device operator in the repo is unitary") {
  const std::vector<Operator> device_ops = {
      rotation(0.3),         rotation_power_closed(0.3, 11),
      build_u1(0.7),         pbs_swap(),
      build_cycle_unitary(0.7), evolve_empty_closed(0.31, 9),
      limit_operator(),      phase_free_shutter_gate(),
      ideal_shutter_gate(),   port_hadamard()};
  for (const Operator& op : device_ops) {
    CHECK(op.unitarity_defect() <= 1e-10);
  }
}

TEST_CASE("state invariants are enforced") {
  Eigen::VectorXcd bad(2);
  bad << 0.5, 0.5;  // norm^2 = 0.5
  CHECK_THROWS_AS(PureState(bases::hv, bad), invariant_error);
  CHECK_THROWS_AS(
      PureState::basis_state({"X", "X"}, "X"), precondition_error);
  Eigen::VectorXcd nan_amps(2);
  nan_amps << std::nan(""), 1.0;
  CHECK_THROWS_AS(PureState(bases::hv, nan_amps), invariant_error);
}
