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

#include <cmath>
#include <map>

#include "qshutter/protocols.hpp"
#include "test_helpers.hpp"

using namespace qshutter;
using namespace qshutter::testing;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

LogicalQubit random_qubit(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::Vector2cd v(cx(gauss(rng), gauss(rng)), cx(gauss(rng), gauss(rng)));
  v /= v.norm();
  return {v(0), v(1)};
}

TwoQubitAmps random_pair(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::Vector4cd v;
  for (int i = 0; i < 4; ++i) v(i) = cx(gauss(rng), gauss(rng));
  v /= v.norm();
  return {v(0), v(1), v(2), v(3)};
}

PureState written_shutter_state(const LogicalQubit& q, int a) {
  Eigen::Vector2cd amps = (a == 0 ? 1.0 : -1.0) * q.alpha *
                              shutter_plus().amps() -
                          q.beta * shutter_minus().amps();
  return PureState::normalized(bases::shutter, amps);
}

double sgn(int bit) { return bit == 0 ? 1.0 : -1.0; }

// Independent branch oracle, worked out by pushing the written pair through
// the three signed-permutation gates by hand:
//   branch (u, w) = c_{u,w}|00> + c_{u,w̄}|01>
//                   - (-1)^{a1} c_{ū,w̄}|10> - (-1)^{a1} c_{ū,w}|11>
// with c_{++} = (-1)^{a1+a2} alpha, c_{+-} = -(-1)^{a2} beta,
//      c_{-+} = -(-1)^{a1} gamma,   c_{--} = delta.
Eigen::Vector4cd expected_branch(const TwoQubitAmps& q, int a1, int a2,
                                 char u, char w) {
  std::map<std::pair<char, char>, cx> c;
  c[{'+', '+'}] = sgn(a1) * sgn(a2) * q.alpha;
  c[{'+', '-'}] = -sgn(a2) * q.beta;
  c[{'-', '+'}] = -sgn(a1) * q.gamma;
  c[{'-', '-'}] = q.delta;
  const char ubar = u == '+' ? '-' : '+';
  const char wbar = w == '+' ? '-' : '+';
  Eigen::Vector4cd out;
  out << c[{u, w}], c[{u, wbar}], -sgn(a1) * c[{ubar, wbar}],
      -sgn(a1) * c[{ubar, w}];
  return out;
}

}  // namespace

TEST_CASE("encode_logical produces the two port rails") {
  const PureState zero = encode_logical({1.0, 0.0});
  CHECK(std::abs(zero.amp("P1") - cx(kInvSqrt2, 0)) <= 1e-15);
  CHECK(std::abs(zero.amp("P1t") - cx(-kInvSqrt2, 0)) <= 1e-15);
  CHECK(std::abs(zero.amp("P2")) == 0.0);

  const PureState one = encode_logical({0.0, 1.0});
  CHECK(std::abs(one.amp("P2") - cx(kInvSqrt2, 0)) <= 1e-15);
  CHECK(std::abs(one.amp("P2t") - cx(kInvSqrt2, 0)) <= 1e-15);

  CHECK(std::abs(inner(zero, one)) <= 1e-12);
}

TEST_CASE("port_hadamard is a unitary involution") {
  const Operator h = port_hadamard();
  CHECK(h.unitarity_defect() <= 1e-12);
  CHECK(max_abs_diff(compose(h, h).matrix(),
                     Eigen::MatrixXcd::Identity(4, 4)) <= 1e-12);
}

TEST_CASE("after the interaction the mixed ports are uniform") {
  for (const LogicalQubit q :
       {LogicalQubit{kInvSqrt2, kInvSqrt2}, LogicalQubit{0.6, 0.8}}) {
    for (const ProtocolOutcome& branch : memory_write(q)) {
      CHECK(branch.probability == doctest::Approx(0.25).epsilon(1e-12));
    }
  }
}

TEST_CASE("writing |0> leaves the shutter on the + axis") {
  for (const ProtocolOutcome& branch : memory_write({1.0, 0.0})) {
    CHECK(fidelity(branch.final_state, shutter_plus()) ==
          doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("writing |1> leaves the shutter on the - axis") {
  for (const ProtocolOutcome& branch : memory_write({0.0, 1.0})) {
    CHECK(fidelity(branch.final_state, shutter_minus()) ==
          doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("write branches carry the advertised classical bit") {
  const std::map<std::string, int> want = {
      {"P1", 0}, {"P2t", 0}, {"P2", 1}, {"P1t", 1}};
  for (const ProtocolOutcome& branch : memory_write({0.6, 0.8})) {
    CHECK(branch.classical_bits.at("a") == want.at(branch.branch_label));
  }
}

TEST_CASE("write contract: shutter = (-1)^a alpha|+> - beta|->") {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 50; ++t) {
    const LogicalQubit q = random_qubit(rng);
    const auto outcomes = memory_write(q);
    double total = 0.0;
    for (const ProtocolOutcome& branch : outcomes) {
      const PureState contract =
          written_shutter_state(q, branch.classical_bits.at("a"));
      CHECK(std::abs(fidelity(branch.final_state, contract) - 1.0) <= 1e-12);
      total += branch.probability;
    }
    CHECK(std::abs(total - 1.0) <= 1e-12);
  }
}

TEST_CASE("reading returns -(-1)^a alpha|b> + beta|b xor 1>") {
  std::mt19937_64 rng(43);
  for (int t = 0; t < 50; ++t) {
    const LogicalQubit q = random_qubit(rng);
    for (int a = 0; a < 2; ++a) {
      const auto outcomes = memory_read(written_shutter_state(q, a), a);
      REQUIRE(outcomes.size() == 2);
      double total = 0.0;
      for (const ProtocolOutcome& branch : outcomes) {
        const int b = branch.classical_bits.at("b");
        Eigen::Vector2cd want;
        want(b) = -sgn(a) * q.alpha;
        want(1 - b) = q.beta;
        const PureState expected =
            PureState::normalized(kLogicalBasis1, want);
        CHECK(std::abs(fidelity(branch.final_state, expected) - 1.0) <=
              1e-12);
        total += branch.probability;
      }
      CHECK(std::abs(total - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("round-trip recovers the basis states on every branch") {
  for (const LogicalQubit q : {LogicalQubit{1.0, 0.0}, LogicalQubit{0.0, 1.0}}) {
    const PureState target = PureState::normalized(
        kLogicalBasis1, Eigen::Vector2cd(q.alpha, q.beta));
    int paths = 0;
    for (const ProtocolOutcome& wr : memory_write(q)) {
      const int a = wr.classical_bits.at("a");
      for (const ProtocolOutcome& rd : memory_read(wr.final_state, a)) {
        const LogicalQubit rec =
            apply_read_corrections(rd.final_state, a, rd.classical_bits.at("b"));
        const PureState recovered = PureState::normalized(
            kLogicalBasis1, Eigen::Vector2cd(rec.alpha, rec.beta));
        CHECK(std::abs(fidelity(recovered, target) - 1.0) <= 1e-12);
        ++paths;
      }
    }
    CHECK(paths == 8);
  }
}

TEST_CASE("round-trip recovers random qubits on every branch") {
  std::mt19937_64 rng(47);
  for (int t = 0; t < 100; ++t) {
    const LogicalQubit q = random_qubit(rng);
    const PureState target = PureState::normalized(
        kLogicalBasis1, Eigen::Vector2cd(q.alpha, q.beta));
    for (const ProtocolOutcome& wr : memory_write(q)) {
      const int a = wr.classical_bits.at("a");
      for (const ProtocolOutcome& rd : memory_read(wr.final_state, a)) {
        const LogicalQubit rec =
            apply_read_corrections(rd.final_state, a, rd.classical_bits.at("b"));
        const PureState recovered = PureState::normalized(
            kLogicalBasis1, Eigen::Vector2cd(rec.alpha, rec.beta));
        CHECK(std::abs(fidelity(recovered, target) - 1.0) <= 1e-12);
      }
    }
  }
}

TEST_CASE("two independent writes build the CNOT precondition state") {
  std::mt19937_64 rng(53);
  for (int t = 0; t < 25; ++t) {
    const LogicalQubit control = random_qubit(rng);  // leftmost slot
    const LogicalQubit target = random_qubit(rng);
    for (int a1 = 0; a1 < 2; ++a1) {
      for (int a2 = 0; a2 < 2; ++a2) {
        TwoQubitAmps joint;
        joint.alpha = control.alpha * target.alpha;
        joint.beta = control.alpha * target.beta;
        joint.gamma = control.beta * target.alpha;
        joint.delta = control.beta * target.beta;
        const PureState pair = cnot_written_pair(joint, a1, a2);

        // The same state assembled from the two single-qubit contracts
        // (control written with a2, target with a1).
        const PureState c = written_shutter_state(control, a2);
        const PureState t2 = written_shutter_state(target, a1);
        Eigen::VectorXcd prod(4);
        for (int ic = 0; ic < 2; ++ic) {
          for (int it = 0; it < 2; ++it) {
            prod(ic * 2 + it) = c.amps()(ic) * t2.amps()(it);
          }
        }
        CHECK(equal_up_to_global_phase(pair, PureState(pair.basis(), prod),
                                       1e-12));
      }
    }
  }
}

TEST_CASE("CNOT branch states match the analytic oracle") {
  std::mt19937_64 rng(59);
  for (int t = 0; t < 10; ++t) {
    const TwoQubitAmps q = random_pair(rng);
    for (int a1 = 0; a1 < 2; ++a1) {
      for (int a2 = 0; a2 < 2; ++a2) {
        const auto outcomes = cnot_protocol(q, a1, a2);
        REQUIRE(outcomes.size() == 4);
        double total = 0.0;
        for (const ProtocolOutcome& branch : outcomes) {
          CHECK(branch.probability == doctest::Approx(0.25).epsilon(1e-12));
          total += branch.probability;
          const Eigen::Vector4cd want = expected_branch(
              q, a1, a2, branch.branch_label[0], branch.branch_label[1]);
          CHECK((branch.final_state.amps() - want).cwiseAbs().maxCoeff() <=
                1e-12);
        }
        CHECK(std::abs(total - 1.0) <= 1e-12);
      }
    }
  }
}

TEST_CASE("the ++ branch carries the displayed four-term state") {
  std::mt19937_64 rng(61);
  for (int t = 0; t < 10; ++t) {
    const TwoQubitAmps q = random_pair(rng);
    for (int a1 = 0; a1 < 2; ++a1) {
      for (int a2 = 0; a2 < 2; ++a2) {
        const auto outcomes = cnot_protocol(q, a1, a2);
        const auto& pp = outcomes.front();
        REQUIRE(pp.branch_label == "++");
        Eigen::Vector4cd want;
        want << sgn(a1) * sgn(a2) * q.alpha,  // |00>
            -sgn(a2) * q.beta,                // |01>
            -sgn(a1) * q.delta,               // |10>
            q.gamma;                          // |11>
        CHECK((pp.final_state.amps() - want).cwiseAbs().maxCoeff() <= 1e-12);
      }
    }
  }
}

TEST_CASE("CNOT fixes |00> on every branch after correction") {
  const TwoQubitAmps q{1.0, 0.0, 0.0, 0.0};
  for (int a1 = 0; a1 < 2; ++a1) {
    for (int a2 = 0; a2 < 2; ++a2) {
      for (const ProtocolOutcome& branch : cnot_protocol(q, a1, a2)) {
        const BranchCorrection corr =
            derive_branch_corrections(branch.branch_label, a1, a2);
        const PureState corrected =
            apply_branch_correction(branch.final_state, corr);
        CHECK(std::abs(std::norm(corrected.amp("00")) - 1.0) <= 1e-12);
      }
    }
  }
}

TEST_CASE("correction for the ++ branch at a1 = a2 = 0 is sign-only") {
  const BranchCorrection corr = derive_branch_corrections("++", 0, 0);
  CHECK_FALSE(corr.flip_control);
  CHECK_FALSE(corr.flip_target);
  // Observed branch: alpha|00> - beta|01> - delta|10> + gamma|11>.
  CHECK(corr.signs[0] == 1.0);
  CHECK(corr.signs[1] == -1.0);
  CHECK(corr.signs[2] == -1.0);
  CHECK(corr.signs[3] == 1.0);
}

TEST_CASE("correction for the -- branch flips the control qubit") {
  // That branch lands delta on |00>, so the control slot must be flipped.
  const BranchCorrection corr = derive_branch_corrections("--", 0, 0);
  CHECK(corr.flip_control);
  CHECK_FALSE(corr.flip_target);
}

TEST_CASE("corrected CNOT output is exact for all 16 combinations") {
  std::mt19937_64 rng(67);
  std::vector<TwoQubitAmps> inputs = {{1, 0, 0, 0}, {0, 1, 0, 0},
                                      {0, 0, 1, 0}, {0, 0, 0, 1}};
  for (int t = 0; t < 20; ++t) {
    inputs.push_back(random_pair(rng));
  }
  for (const TwoQubitAmps& q : inputs) {
    const PureState target = cnot_target_state(q);
    for (int a1 = 0; a1 < 2; ++a1) {
      for (int a2 = 0; a2 < 2; ++a2) {
        for (const ProtocolOutcome& branch : cnot_protocol(q, a1, a2)) {
          const BranchCorrection corr =
              derive_branch_corrections(branch.branch_label, a1, a2);
          const PureState corrected =
              apply_branch_correction(branch.final_state, corr);
          CHECK(std::abs(fidelity(corrected, target) - 1.0) <= 1e-12);
        }
      }
    }
  }
}

TEST_CASE("cnot_target_state maps the amplitudes per the truth table") {
  const PureState t = cnot_target_state({0.0, 0.0, 1.0, 0.0});
  CHECK(std::abs(std::norm(t.amp("11")) - 1.0) <= 1e-12);
  const PureState t2 = cnot_target_state({0.0, 0.0, 0.0, 1.0});
  CHECK(std::abs(std::norm(t2.amp("10")) - 1.0) <= 1e-12);
}

TEST_CASE("substituting the ideal gate reproduces the exact round-trip") {
  std::mt19937_64 rng(71);
  const Operator ideal = ideal_shutter_gate();
  for (int t = 0; t < 10; ++t) {
    const GateSubstitutionReport report =
        memory_roundtrip_with_gate(random_qubit(rng), ideal);
    CHECK(report.leaked_probability <= 1e-12);
    CHECK(std::abs(report.surviving_probability - 1.0) <= 1e-12);
    CHECK(std::abs(report.min_fidelity - 1.0) <= 1e-12);
  }
}

TEST_CASE("the finite-N gate degrades the round-trip but converges") {
  const LogicalQubit q{0.6, 0.8};
  const GateSubstitutionReport coarse =
      memory_roundtrip_with_gate(q, realized_gate(11).gate);
  const GateSubstitutionReport fine =
      memory_roundtrip_with_gate(q, realized_gate(101).gate);
  CHECK(coarse.leaked_probability > fine.leaked_probability);
  CHECK(fine.leaked_probability > 0.01);
  CHECK(fine.leaked_probability < 0.12);
  CHECK(fine.min_fidelity > coarse.min_fidelity);
  CHECK(fine.min_fidelity > 0.99);
  CHECK(fine.min_fidelity < 1.0);
  const double total = fine.leaked_probability + fine.surviving_probability;
  CHECK(std::abs(total - 1.0) <= 1e-9);
}

TEST_CASE("protocol inputs are validated") {
  CHECK_THROWS_AS(memory_write({0.9, 0.9}), precondition_error);
  CHECK_THROWS_AS(
      memory_read(PureState::basis_state(bases::hv, "H"), 0),
      precondition_error);
  CHECK_THROWS_AS(memory_read(shutter_plus(), 7), precondition_error);
  CHECK_THROWS_AS(cnot_protocol({0.9, 0.9, 0, 0}, 0, 0), precondition_error);
  CHECK_THROWS_AS(derive_branch_corrections("+x", 0, 0), precondition_error);
}
