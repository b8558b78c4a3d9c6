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

#include "qshutter/shutter.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qshutter {

void ShutterCycleConfig::validate() const {
  if (!std::isfinite(theta)) {
    throw precondition_error("theta must be finite");
  }
  if (cycles < 1) {
    throw precondition_error("cycles must be >= 1");
  }
  if (cycles % 2 == 0) {
    throw precondition_error(
        "cycles must be odd: the device's closed-form evolution and the "
        "port-exchange behavior hold for odd cycle counts only");
  }
}

Operator build_u1(double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(4, 4);
  m(0, 0) = c;
  m(0, 1) = s;
  m(1, 0) = -s;
  m(1, 1) = c;
  m(2, 2) = c;
  m(2, 3) = s;
  m(3, 2) = -s;
  m(3, 3) = c;
  return Operator(bases::polarization4, std::move(m));
}

Operator pbs_swap() {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(4, 4);
  m(2, 0) = 1.0;  // H1 -> H2
  m(0, 2) = 1.0;  // H2 -> H1
  m(1, 1) = 1.0;  // V1 fixed
  m(3, 3) = 1.0;  // V2 fixed
  return Operator(bases::polarization4, std::move(m));
}

Operator build_cycle_unitary(double theta) {
  return compose(pbs_swap(), build_u1(theta));
}

Operator evolve_empty_closed(double theta, int n) {
  if (n < 1 || n % 2 == 0) {
    throw precondition_error(
        "evolve_empty_closed is valid for odd n >= 1 only");
  }
  const double a = (n + 1) * theta / 2.0;
  const double b = (n - 1) * theta / 2.0;
  const double sa = std::sin(a), ca = std::cos(a);
  const double sb = std::sin(b), cb = std::cos(b);
  Eigen::MatrixXcd m(4, 4);
  m << -sa * sb, ca * sb, ca * cb, sa * cb,   //
      -sa * cb, ca * cb, -ca * sb, -sa * sb,  //
      ca * cb, sa * cb, -sa * sb, ca * sb,    //
      -ca * sb, -sa * sb, -sa * cb, ca * cb;
  return Operator(bases::polarization4, std::move(m));
}

Operator limit_operator() {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(4, 4);
  m(0, 0) = -1.0;  // H1 -> -H1
  m(3, 1) = -1.0;  // V1 -> -V2
  m(2, 2) = -1.0;  // H2 -> -H2
  m(1, 3) = -1.0;  // V2 -> -V1
  return Operator(bases::polarization4, std::move(m));
}

std::vector<Branch> evolve_with_particle(const ShutterCycleConfig& cfg,
                                         const PureState& input) {
  cfg.validate();
  if (!cfg.particle_present) {
    throw precondition_error("evolve_with_particle needs particle_present");
  }
  if (!same_basis(input.basis(), bases::polarization4)) {
    throw precondition_error("input must live on (H1, V1, H2, V2)");
  }

  const Operator u1 = build_u1(cfg.theta);
  const Operator pbs = pbs_swap();
  Eigen::VectorXcd amps = input.amps();
  double survival = input.weight();
  double absorbed = 0.0;
  for (int cycle = 0; cycle < cfg.cycles && survival > 0.0; ++cycle) {
    amps = u1.matrix() * amps;
    const double p_absorb = std::norm(amps(1)) + std::norm(amps(3));
    absorbed += survival * p_absorb;
    survival *= 1.0 - p_absorb;
    amps(1) = cx(0.0, 0.0);
    amps(3) = cx(0.0, 0.0);
    const double remaining = amps.norm();
    if (remaining == 0.0) {
      survival = 0.0;
      break;
    }
    amps /= remaining;
    amps = pbs.matrix() * amps;
  }

  std::vector<Branch> branches;
  Branch gone;
  gone.record.emplace_back("event", "absorbed");
  gone.probability = absorbed;
  gone.absorbed = true;
  branches.push_back(std::move(gone));

  Branch survivor;
  survivor.record.emplace_back("event", "survived");
  survivor.probability = survival;
  if (survival > 0.0) {
    survivor.state =
        PureState(bases::polarization4, amps, std::min(survival, 1.0));
  }
  branches.push_back(std::move(survivor));

  if (std::abs(absorbed + survival - input.weight()) > kNormTol) {
    throw invariant_error("particle branches do not conserve probability");
  }
  return branches;
}

const std::vector<std::string>& shutter_photon_basis() {
  static const std::vector<std::string> basis =
      product_labels(bases::shutter, bases::ports);
  return basis;
}

namespace {

// Action of the shutter on one port given the shutter position. The occupied
// pair swaps its two ports; the empty pair is diagonal with the given sign.
std::pair<std::string, cx> gate_action(const std::string& shutter,
                                       const std::string& port,
                                       double empty_sign) {
  const bool at_slit1 = shutter == "S1";
  if (port == "P1") {
    return at_slit1 ? std::pair<std::string, cx>{"P1t", 1.0}
                    : std::pair<std::string, cx>{"P1", empty_sign};
  }
  if (port == "P1t") {
    return at_slit1 ? std::pair<std::string, cx>{"P1", 1.0}
                    : std::pair<std::string, cx>{"P1t", empty_sign};
  }
  if (port == "P2") {
    return at_slit1 ? std::pair<std::string, cx>{"P2", empty_sign}
                    : std::pair<std::string, cx>{"P2t", 1.0};
  }
  if (port == "P2t") {
    return at_slit1 ? std::pair<std::string, cx>{"P2t", empty_sign}
                    : std::pair<std::string, cx>{"P2", 1.0};
  }
  throw precondition_error("unknown port label: " + port);
}

Operator ideal_gate(double empty_sign) {
  return Operator::from_basis_action(
      shutter_photon_basis(), [empty_sign](const std::string& label) {
        const auto parts = split_label(label);
        const auto [port_out, amp] = gate_action(parts[0], parts[1], empty_sign);
        return std::make_pair(join_labels(parts[0], port_out), amp);
      });
}

}  // namespace

std::pair<std::string, cx> ideal_shutter_port_action(
    const std::string& shutter, const std::string& port) {
  return gate_action(shutter, port, -1.0);
}

Operator ideal_shutter_gate() { return ideal_gate(-1.0); }

Operator phase_free_shutter_gate() { return ideal_gate(1.0); }

RealizedGate realized_gate(int cycles, std::optional<double> theta) {
  ShutterCycleConfig cfg;
  cfg.cycles = cycles;
  cfg.theta = theta.value_or(std::numbers::pi / (cycles + 1.0));
  cfg.particle_present = true;
  cfg.validate();

  const Operator empty_evolution = evolve_empty_closed(cfg.theta, cfg.cycles);

  // Port p of each pair maps to mode H1 or H2 of its own device copy.
  struct PortSlot {
    const char* port;
    int copy;        // 0: pair (P1, P1t), 1: pair (P2, P2t)
    int mode_index;  // 0: the copy's H1, 2: the copy's H2
  };
  static constexpr PortSlot kSlots[] = {
      {"P1", 0, 0}, {"P1t", 0, 2}, {"P2", 1, 0}, {"P2t", 1, 2}};
  const char* pair_ports[2][2] = {{"P1", "P1t"}, {"P2", "P2t"}};

  const auto& basis = shutter_photon_basis();
  const auto index_of = [&basis](const std::string& label) -> Eigen::Index {
    return std::find(basis.begin(), basis.end(), label) - basis.begin();
  };
  Eigen::MatrixXcd gate = Eigen::MatrixXcd::Zero(8, 8);
  double worst_leak = 0.0, worst_empty = 0.0, worst_occupied = 0.0;

  for (const std::string& shutter : bases::shutter) {
    const int occupied_copy = shutter == "S1" ? 0 : 1;
    for (const PortSlot& slot : kSlots) {
      const Eigen::Index in_idx = index_of(join_labels(shutter, slot.port));
      Eigen::Vector4cd out_modes = Eigen::Vector4cd::Zero();
      double leak = 0.0;
      if (slot.copy == occupied_copy) {
        const PureState in = PureState::basis_state(
            bases::polarization4, bases::polarization4[slot.mode_index]);
        const std::vector<Branch> branches = evolve_with_particle(cfg, in);
        leak = branches[0].probability;
        if (branches[1].state.has_value()) {
          out_modes = std::sqrt(branches[1].probability) *
                      branches[1].state->amps();
        }
        worst_occupied = std::max(worst_occupied, leak);
      } else {
        out_modes = empty_evolution.matrix().col(slot.mode_index);
        leak = std::norm(out_modes(1)) + std::norm(out_modes(3));
        worst_empty = std::max(worst_empty, leak);
      }
      // H components of the copy become port amplitudes; V components leak.
      for (int mode : {0, 2}) {
        const char* out_port = pair_ports[slot.copy][mode == 0 ? 0 : 1];
        const Eigen::Index out_idx = index_of(join_labels(shutter, out_port));
        gate(out_idx, in_idx) = out_modes(mode);
      }
      worst_leak = std::max(worst_leak, leak);
    }
  }

  RealizedGate result{Operator(basis, std::move(gate)), worst_leak,
                      worst_empty, worst_occupied};
  return result;
}

Operator post_selected_gate(const Operator& gate) {
  Eigen::MatrixXcd m = gate.matrix();
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    const double n = m.col(j).norm();
    if (n == 0.0) {
      throw precondition_error("cannot post-select a fully absorbed column");
    }
    m.col(j) /= n;
  }
  return Operator(gate.basis(), std::move(m));
}

}  // namespace qshutter
