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

#include "qshutter/protocols.hpp"

#include <algorithm>
#include <cmath>

namespace qshutter {

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

PureState shutter_pm(double sign, const std::vector<std::string>& basis) {
  Eigen::VectorXcd amps(2);
  amps << kInvSqrt2, sign * kInvSqrt2;
  return PureState(basis, std::move(amps));
}

}  // namespace

void LogicalQubit::validate() const {
  const double n2 = std::norm(alpha) + std::norm(beta);
  if (std::abs(n2 - 1.0) > kNormTol) {
    throw precondition_error("logical qubit is not normalized");
  }
}

PureState shutter_plus() { return shutter_pm(1.0, bases::shutter); }
PureState shutter_minus() { return shutter_pm(-1.0, bases::shutter); }

PureState encode_logical(const LogicalQubit& q) {
  q.validate();
  Eigen::VectorXcd amps(4);  // (P1, P2, P1t, P2t)
  amps << q.alpha * kInvSqrt2, q.beta * kInvSqrt2, -q.alpha * kInvSqrt2,
      q.beta * kInvSqrt2;
  return PureState(bases::ports, std::move(amps));
}

Operator port_hadamard() {
  // ((-1, 1), (1, 1))/sqrt(2) on (P1, P2) and again on (P1t, P2t); the
  // sign placement is what makes the memory_write contract hold.
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(4, 4);
  const double h = kInvSqrt2;
  m(0, 0) = -h;
  m(0, 1) = h;
  m(1, 0) = h;
  m(1, 1) = h;
  m(2, 2) = -h;
  m(2, 3) = h;
  m(3, 2) = h;
  m(3, 3) = h;
  return Operator(bases::ports, std::move(m));
}

namespace {

// The shutter factor of a product state shutter (x) |port>, after a port
// measurement collapsed the photon.
PureState extract_shutter_factor(const PureState& joint,
                                 const std::string& port) {
  Eigen::VectorXcd amps(2);
  amps << joint.amp(join_labels("S1", port)),
      joint.amp(join_labels("S2", port));
  return PureState::normalized(bases::shutter, std::move(amps));
}

int write_bit_for_port(const std::string& port) {
  return (port == "P1" || port == "P2t") ? 0 : 1;
}

const std::vector<NamedProjector>& port_projectors() {
  static const std::vector<NamedProjector> projectors = [] {
    std::vector<NamedProjector> out;
    const Operator id2 = Operator::identity(bases::shutter);
    for (const auto& port : bases::ports) {
      out.push_back({port, tensor(id2, Operator::diagonal_projector(
                                           bases::ports, {port}))});
    }
    return out;
  }();
  return projectors;
}

const std::vector<NamedProjector>& shutter_pm_projectors() {
  static const std::vector<NamedProjector> projectors = {
      {"+", tensor(Operator::projector_onto(shutter_plus()),
                   Operator::identity(bases::ports))},
      {"-", tensor(Operator::projector_onto(shutter_minus()),
                   Operator::identity(bases::ports))}};
  return projectors;
}

}  // namespace

std::vector<ProtocolOutcome> memory_write(const LogicalQubit& q) {
  static const Operator gate = ideal_shutter_gate();
  static const Operator mixer =
      tensor(Operator::identity(bases::shutter), port_hadamard());
  PureState state = tensor(shutter_plus(), encode_logical(q));
  state = apply(gate, state);
  state = apply(mixer, state);

  std::vector<ProtocolOutcome> outcomes;
  for (const Branch& branch : measure(state, port_projectors(), "port")) {
    const std::string port = branch.record_value("port");
    ProtocolOutcome out{.classical_bits = {{"a", write_bit_for_port(port)}},
                        .branch_label = port,
                        .probability = branch.probability,
                        .final_state = extract_shutter_factor(
                            branch.state.value(), port)};
    outcomes.push_back(std::move(out));
  }
  return outcomes;
}

std::vector<ProtocolOutcome> memory_read(const PureState& shutter, int a) {
  if (!same_basis(shutter.basis(), bases::shutter)) {
    throw precondition_error("memory_read expects a (S1, S2) shutter state");
  }
  if (a != 0 && a != 1) {
    throw precondition_error("bit a must be 0 or 1");
  }
  static const Operator gate = ideal_shutter_gate();
  const PureState probe = encode_logical({kInvSqrt2, kInvSqrt2});
  PureState state = apply(gate, tensor(shutter, probe));

  const PureState enc0 = encode_logical({1.0, 0.0});
  const PureState enc1 = encode_logical({0.0, 1.0});

  std::vector<ProtocolOutcome> outcomes;
  for (const Branch& branch : measure(state, shutter_pm_projectors(), "shutter")) {
    const int b = branch.record_value("shutter") == "+" ? 0 : 1;
    // The post-state factors as |±> (x) photon; project the photon onto the
    // logical span and check nothing was left outside it.
    const PureState& post = branch.state.value();
    const PureState pm = b == 0 ? shutter_plus() : shutter_minus();
    Eigen::VectorXcd logical(2);
    for (int z = 0; z < 2; ++z) {
      const PureState ref = tensor(pm, z == 0 ? enc0 : enc1);
      logical(z) = inner(ref, post);
    }
    const double residual = 1.0 - logical.squaredNorm();
    if (std::abs(residual) > kNormTol) {
      throw invariant_error("read output leaked outside the logical span");
    }
    ProtocolOutcome out{
        .classical_bits = {{"a", a}, {"b", b}},
        .branch_label = branch.record_value("shutter"),
        .probability = branch.probability,
        .final_state = PureState::normalized(kLogicalBasis1, logical)};
    outcomes.push_back(std::move(out));
  }
  return outcomes;
}

LogicalQubit apply_read_corrections(const PureState& logical_photon, int a,
                                    int b) {
  if (!same_basis(logical_photon.basis(), kLogicalBasis1)) {
    throw precondition_error("expected a (0, 1) logical state");
  }
  cx c0 = logical_photon.amps()(0);
  cx c1 = logical_photon.amps()(1);
  if (b == 1) {
    std::swap(c0, c1);
  }
  if (a == 0) {
    c0 = -c0;  // sign shift on |0>, keyed on the write bit
  }
  return LogicalQubit{c0, c1};
}

void TwoQubitAmps::validate() const {
  const double n2 =
      std::norm(alpha) + std::norm(beta) + std::norm(gamma) + std::norm(delta);
  if (std::abs(n2 - 1.0) > kNormTol) {
    throw precondition_error("two-qubit amplitudes are not normalized");
  }
}


namespace {

// Distinct label sets for the CNOT's four factors: control shutter, target
// shutter, probe photon A (control readout) and probe photon B (target
// readout).
std::vector<std::string> prefixed(const std::vector<std::string>& basis,
                                  const std::string& prefix) {
  std::vector<std::string> out;
  out.reserve(basis.size());
  for (const auto& label : basis) {
    out.push_back(prefix + label);
  }
  return out;
}

const std::vector<std::string> kShutterC = prefixed(bases::shutter, "C.");
const std::vector<std::string> kShutterT = prefixed(bases::shutter, "T.");
const std::vector<std::string> kPortsA = prefixed(bases::ports, "A.");
const std::vector<std::string> kPortsB = prefixed(bases::ports, "B.");

PureState relabel(const PureState& s, const std::vector<std::string>& basis) {
  return PureState(basis, s.amps(), s.weight());
}

double sign_bit(int bit) { return bit == 0 ? 1.0 : -1.0; }

// Slit-2 restriction: the (P2, P2t) pair passes through the device, the
// (P1, P1t) pair bypasses it untouched.
std::pair<std::string, cx> slit2_port_action(const std::string& shutter,
                                             const std::string& port) {
  if (port == "P1" || port == "P1t") return {port, 1.0};
  if (shutter == "S2") {
    return {port == "P2" ? std::string("P2t") : std::string("P2"), 1.0};
  }
  return {port, -1.0};
}

struct JointSpace {
  std::vector<std::string> basis;  // C-shutter x T-shutter x A x B

  JointSpace()
      : basis(product_labels(product_labels(kShutterC, kShutterT),
                             product_labels(kPortsA, kPortsB))) {}

  // Lifts an action on (one shutter factor, one photon factor) to the
  // joint basis. shutter_pos/photon_pos index the split label parts.
  Operator lift(int shutter_pos, int photon_pos,
                std::pair<std::string, cx> (*action)(const std::string&,
                                                     const std::string&),
                const std::string& shutter_prefix,
                const std::string& photon_prefix) const {
    return Operator::from_basis_action(
        basis, [&](const std::string& joint_label) {
          auto parts = split_label(joint_label);
          const std::string bare_shutter =
              parts[shutter_pos].substr(shutter_prefix.size());
          const std::string bare_port =
              parts[photon_pos].substr(photon_prefix.size());
          const auto [port_out, amp] = action(bare_shutter, bare_port);
          parts[photon_pos] = photon_prefix + port_out;
          std::string out = parts[0];
          for (std::size_t i = 1; i < parts.size(); ++i) {
            out = join_labels(out, parts[i]);
          }
          return std::make_pair(out, amp);
        });
  }
};

}  // namespace

PureState cnot_written_pair(const TwoQubitAmps& q, int a1, int a2) {
  q.validate();
  const PureState plus_c = relabel(shutter_plus(), kShutterC);
  const PureState minus_c = relabel(shutter_minus(), kShutterC);
  const PureState plus_t = relabel(shutter_plus(), kShutterT);
  const PureState minus_t = relabel(shutter_minus(), kShutterT);

  Eigen::VectorXcd amps = sign_bit(a1) * sign_bit(a2) * q.alpha *
                          tensor(plus_c, plus_t).amps();
  amps -= sign_bit(a2) * q.beta * tensor(plus_c, minus_t).amps();
  amps -= sign_bit(a1) * q.gamma * tensor(minus_c, plus_t).amps();
  amps += q.delta * tensor(minus_c, minus_t).amps();
  return PureState(product_labels(kShutterC, kShutterT), std::move(amps));
}

std::vector<ProtocolOutcome> cnot_protocol(const TwoQubitAmps& q, int a1,
                                           int a2) {
  if ((a1 != 0 && a1 != 1) || (a2 != 0 && a2 != 1)) {
    throw precondition_error("bits a1, a2 must be 0 or 1");
  }
  static const JointSpace space;

  // Probe A carries a phase conditioned on a1; probe B is the plain read
  // probe for the target shutter.
  Eigen::VectorXcd probe_a_amps =
      kInvSqrt2 * (encode_logical({1.0, 0.0}).amps() +
                   sign_bit(a1) * encode_logical({0.0, 1.0}).amps());
  const PureState probe_a = PureState(kPortsA, std::move(probe_a_amps));
  const PureState probe_b =
      relabel(encode_logical({kInvSqrt2, kInvSqrt2}), kPortsB);

  PureState state =
      tensor(tensor(cnot_written_pair(q, a1, a2), probe_a), probe_b);

  static const Operator interact_control =
      space.lift(0, 2, ideal_shutter_port_action, "C.", "A.");
  static const Operator route_through_target =
      space.lift(1, 2, slit2_port_action, "T.", "A.");
  static const Operator read_target =
      space.lift(1, 3, ideal_shutter_port_action, "T.", "B.");

  state = apply(interact_control, state);
  state = apply(route_through_target, state);
  state = apply(read_target, state);

  // Measure both shutters in the ± basis.
  static const std::vector<NamedProjector> projectors = [] {
    const Operator id16 =
        tensor(Operator::identity(kPortsA), Operator::identity(kPortsB));
    const std::array<std::pair<std::string, double>, 2> pm_outcomes = {
        {{"+", 1.0}, {"-", -1.0}}};
    std::vector<NamedProjector> out;
    for (const auto& [label_c, sign_c] : pm_outcomes) {
      for (const auto& [label_t, sign_t] : pm_outcomes) {
        out.push_back(
            {label_c + label_t,
             tensor(tensor(Operator::projector_onto(
                               shutter_pm(sign_c, kShutterC)),
                           Operator::projector_onto(
                               shutter_pm(sign_t, kShutterT))),
                    id16)});
      }
    }
    return out;
  }();

  // Logical reference states: photon A is the control slot, photon B the
  // target slot.
  static const PureState enc_a[2] = {
      relabel(encode_logical({1.0, 0.0}), kPortsA),
      relabel(encode_logical({0.0, 1.0}), kPortsA)};
  static const PureState enc_b[2] = {
      relabel(encode_logical({1.0, 0.0}), kPortsB),
      relabel(encode_logical({0.0, 1.0}), kPortsB)};

  std::vector<ProtocolOutcome> outcomes;
  for (const Branch& branch : measure(state, projectors, "shutters")) {
    const std::string label = branch.record_value("shutters");
    const PureState pm_c = shutter_pm(label[0] == '+' ? 1.0 : -1.0, kShutterC);
    const PureState pm_t = shutter_pm(label[1] == '+' ? 1.0 : -1.0, kShutterT);
    const PureState& post = branch.state.value();
    Eigen::Vector4cd logical;
    for (int za = 0; za < 2; ++za) {
      for (int zb = 0; zb < 2; ++zb) {
        const PureState ref =
            tensor(tensor(pm_c, pm_t), tensor(enc_a[za], enc_b[zb]));
        logical(za * 2 + zb) = inner(ref, post);
      }
    }
    if (std::abs(1.0 - logical.squaredNorm()) > kNormTol) {
      throw invariant_error("CNOT output leaked outside the logical span");
    }
    ProtocolOutcome out{
        .classical_bits = {{"a1", a1}, {"a2", a2}},
        .branch_label = label,
        .probability = branch.probability,
        .final_state = PureState::normalized(kLogicalBasis2, logical)};
    outcomes.push_back(std::move(out));
  }
  return outcomes;
}

namespace {

const std::array<std::string, 4> kBranchLabels = {"++", "+-", "-+", "--"};

// Solves all four branch corrections for one (a1, a2): feeding each basis
// amplitude alone through the protocol reveals where (and with which sign)
// it lands in every branch, and the correction inverts that signed
// permutation.
std::array<BranchCorrection, 4> solve_corrections(int a1, int a2) {
  std::array<std::array<int, 4>, 4> landed_at{};     // [branch][symbol]
  std::array<std::array<double, 4>, 4> landed_sign{};
  for (int k = 0; k < 4; ++k) {
    TwoQubitAmps marker;
    marker.alpha = k == 0 ? 1.0 : 0.0;
    marker.beta = k == 1 ? 1.0 : 0.0;
    marker.gamma = k == 2 ? 1.0 : 0.0;
    marker.delta = k == 3 ? 1.0 : 0.0;
    const auto outcomes = cnot_protocol(marker, a1, a2);
    for (const ProtocolOutcome& outcome : outcomes) {
      const auto it = std::find(kBranchLabels.begin(), kBranchLabels.end(),
                                outcome.branch_label);
      const int branch = static_cast<int>(it - kBranchLabels.begin());
      const Eigen::VectorXcd& amps = outcome.final_state.amps();
      Eigen::Index pos = 0;
      amps.cwiseAbs().maxCoeff(&pos);
      const cx amp = amps(pos);
      if (std::abs(std::abs(amp) - 1.0) > kNormTol ||
          std::abs(amp.imag()) > kNormTol) {
        throw invariant_error("branch amplitude is not a real sign");
      }
      landed_at[branch][k] = static_cast<int>(pos);
      landed_sign[branch][k] = amp.real() >= 0.0 ? 1.0 : -1.0;
    }
  }

  // Target positions of (alpha, beta, gamma, delta) after a CNOT with the
  // leftmost slot as control: |00>, |01>, |11>, |10>.
  constexpr std::array<int, 4> kTargetPos = {0, 1, 3, 2};

  std::array<BranchCorrection, 4> corrections;
  for (int branch = 0; branch < 4; ++branch) {
    // The bit-flip part must be a constant XOR between landing and target.
    const int flips = landed_at[branch][0] ^ kTargetPos[0];
    for (int k = 1; k < 4; ++k) {
      if ((landed_at[branch][k] ^ kTargetPos[k]) != flips) {
        throw invariant_error("no per-qubit flip correction exists for branch " +
                              kBranchLabels[branch]);
      }
    }
    BranchCorrection corr;
    corr.flip_control = (flips & 2) != 0;
    corr.flip_target = (flips & 1) != 0;
    // After the flips, amplitude k sits at kTargetPos[k] with its observed
    // sign; the sign correction cancels it.
    for (int k = 0; k < 4; ++k) {
      corr.signs[kTargetPos[k]] = landed_sign[branch][k];
    }
    if (corr.signs[0] < 0.0) {
      for (double& s : corr.signs) {
        s = -s;
      }
    }
    corrections[branch] = corr;
  }
  return corrections;
}

}  // namespace

BranchCorrection derive_branch_corrections(const std::string& branch, int a1,
                                           int a2) {
  const auto it =
      std::find(kBranchLabels.begin(), kBranchLabels.end(), branch);
  if (it == kBranchLabels.end()) {
    throw precondition_error("unknown branch label: " + branch);
  }
  if ((a1 != 0 && a1 != 1) || (a2 != 0 && a2 != 1)) {
    throw precondition_error("bits a1, a2 must be 0 or 1");
  }
  // Only 16 distinct corrections exist; solve them once.
  static const std::array<std::array<BranchCorrection, 4>, 4> table = [] {
    std::array<std::array<BranchCorrection, 4>, 4> all;
    for (int a1v = 0; a1v < 2; ++a1v) {
      for (int a2v = 0; a2v < 2; ++a2v) {
        all[a1v * 2 + a2v] = solve_corrections(a1v, a2v);
      }
    }
    return all;
  }();
  return table[a1 * 2 + a2][it - kBranchLabels.begin()];
}

PureState apply_branch_correction(const PureState& two_qubit_state,
                                  const BranchCorrection& corr) {
  if (!same_basis(two_qubit_state.basis(), kLogicalBasis2)) {
    throw precondition_error("expected a two-qubit logical state");
  }
  const int flips = (corr.flip_control ? 2 : 0) | (corr.flip_target ? 1 : 0);
  Eigen::Vector4cd out;
  for (int z = 0; z < 4; ++z) {
    out(z ^ flips) = two_qubit_state.amps()(z);
  }
  for (int z = 0; z < 4; ++z) {
    out(z) *= corr.signs[z];
  }
  return PureState(kLogicalBasis2, out, two_qubit_state.weight());
}

PureState cnot_target_state(const TwoQubitAmps& q) {
  q.validate();
  Eigen::Vector4cd amps;
  amps << q.alpha, q.beta, q.delta, q.gamma;
  return PureState(kLogicalBasis2, amps);
}

GateSubstitutionReport memory_roundtrip_with_gate(const LogicalQubit& q,
                                                  const Operator& gate) {
  q.validate();
  if (!same_basis(gate.basis(), shutter_photon_basis())) {
    throw precondition_error(
        "substituted gate must live on the shutter x port basis");
  }
  static const Operator mixer =
      tensor(Operator::identity(bases::shutter), port_hadamard());
  const PureState target =
      PureState::normalized(kLogicalBasis1,
                            Eigen::Vector2cd(q.alpha, q.beta));

  GateSubstitutionReport report;
  report.min_fidelity = 1.0;
  double fidelity_mass = 0.0;

  // Write. The gate may shrink the norm; the deficit is the photon leaking
  // out of the port sector and becomes explicit probability.
  Eigen::VectorXcd amps = tensor(shutter_plus(), encode_logical(q)).amps();
  amps = gate.matrix() * amps;
  const double kept_write = amps.squaredNorm();
  report.leaked_probability += 1.0 - kept_write;
  if (kept_write <= 0.0) {
    report.mean_fidelity = 0.0;
    report.min_fidelity = 0.0;
    return report;
  }
  amps = mixer.matrix() * (amps / std::sqrt(kept_write));

  for (const NamedProjector& np : port_projectors()) {
    const Eigen::VectorXcd projected = np.projector.matrix() * amps;
    const double p_branch = projected.squaredNorm() * kept_write;
    if (p_branch == 0.0) {
      continue;
    }
    const PureState shutter = extract_shutter_factor(
        PureState(shutter_photon_basis(), projected / projected.norm()),
        np.label);
    const int a = write_bit_for_port(np.label);

    // Read this branch with the same substituted gate.
    Eigen::VectorXcd read_amps =
        tensor(shutter, encode_logical({kInvSqrt2, kInvSqrt2})).amps();
    read_amps = gate.matrix() * read_amps;
    const double kept_read = read_amps.squaredNorm();
    report.leaked_probability += p_branch * (1.0 - kept_read);
    if (kept_read <= 0.0) {
      continue;
    }
    read_amps /= std::sqrt(kept_read);

    for (const NamedProjector& pm : shutter_pm_projectors()) {
      const Eigen::VectorXcd collapsed = pm.projector.matrix() * read_amps;
      const double p_read = collapsed.squaredNorm();
      if (p_read == 0.0) {
        continue;
      }
      const int b = pm.label == "+" ? 0 : 1;
      const PureState post(shutter_photon_basis(), collapsed / std::sqrt(p_read));
      const PureState pm_state = b == 0 ? shutter_plus() : shutter_minus();
      Eigen::Vector2cd logical;
      for (int z = 0; z < 2; ++z) {
        const PureState ref = tensor(
            pm_state, encode_logical({z == 0 ? 1.0 : 0.0, z == 0 ? 0.0 : 1.0}));
        logical(z) = inner(ref, post);
      }
      const double in_span = logical.squaredNorm();
      const double p_path = p_branch * kept_read * p_read;
      const double p_in = p_path * in_span;
      report.leaked_probability += p_path - p_in;
      if (in_span <= kNormTol) {
        continue;
      }
      const LogicalQubit rec = apply_read_corrections(
          PureState::normalized(kLogicalBasis1, logical), a, b);
      const double f = fidelity(
          PureState::normalized(kLogicalBasis1,
                                Eigen::Vector2cd(rec.alpha, rec.beta)),
          target);
      report.surviving_probability += p_in;
      report.min_fidelity = std::min(report.min_fidelity, f);
      fidelity_mass += p_in * f;
    }
  }

  report.mean_fidelity = report.surviving_probability > 0.0
                             ? fidelity_mass / report.surviving_probability
                             : 0.0;
  const double total =
      report.leaked_probability + report.surviving_probability;
  if (std::abs(total - 1.0) > 1e-9) {
    throw invariant_error("substituted-gate bookkeeping lost probability");
  }
  return report;
}

}  // namespace qshutter
