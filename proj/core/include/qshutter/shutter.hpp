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

#pragma once

#include <optional>

#include "qshutter/measure.hpp"

namespace qshutter {

/// Nested two-interferometer device on the (H1, V1, H2, V2) basis. Two
/// copies of it, sharing one movable particle, realize a quantum shutter
/// on the four photon ports (P1, P2, P1t, P2t).
struct ShutterCycleConfig {
  double theta = 0.0;
  int cycles = 1;  // odd, >= 1; the closed-form evolution needs odd N
  bool particle_present = false;

  void validate() const;  // throws precondition_error (evenness included)
};

/// Block-diagonal pair of rotations: one interferometer arm per line.
Operator build_u1(double theta);

/// The connecting polarizing beamsplitter: exchanges H1 and H2, fixes V1
/// and V2.
Operator pbs_swap();

/// One full cycle of the empty device: pbs_swap * build_u1(theta).
Operator build_cycle_unitary(double theta);

/// Closed form for build_cycle_unitary(theta)^n, odd n only, built from
/// half-angle entries cos/sin((n±1) theta/2). Even n throws
/// precondition_error.
Operator evolve_empty_closed(double theta, int n);

/// The n -> infinity evolution at theta = pi/(n+1):
/// H1 -> -H1, H2 -> -H2, V1 -> -V2, V2 -> -V1.
Operator limit_operator();

/// Occupied device: per cycle apply build_u1, absorb the V components
/// (the particle channel), then pbs_swap. Returns an absorbed branch with
/// the cumulative absorption probability plus the surviving branch. For
/// |H1> input and odd N the survivor is |H2> with probability cos^2N(theta).
std::vector<Branch> evolve_with_particle(const ShutterCycleConfig& cfg,
                                         const PureState& input);

/// (shutter S1,S2) x (photon P1,P2,P1t,P2t) composite basis, outer-major.
const std::vector<std::string>& shutter_photon_basis();

/// Action of the ideal gate on one port for a definite shutter position:
/// the pair holding the particle swaps its two ports (no sign), the empty
/// pair is diagonal with a -1. Shared by the 8x8 gate below and by the
/// protocol simulations that embed it into larger spaces.
std::pair<std::string, cx> ideal_shutter_port_action(
    const std::string& shutter, const std::string& port);

/// Ideal shutter gate with the asymptotic phases: the port pair holding
/// the particle swaps (P1<->P1t or P2<->P2t, no sign) while the empty
/// pair picks up a -1. Involution.
Operator ideal_shutter_gate();

/// Sign-free reference gate: blocked pair swaps, open pair is untouched.
Operator phase_free_shutter_gate();

struct RealizedGate {
  /// Port-sector amplitudes on the shutter x port basis; sub-unitary for
  /// finite N, converging to ideal_shutter_gate as odd N grows.
  Operator gate;
  /// Worst case over the 8 basis inputs of absorption probability plus
  /// V-polarized exit probability.
  double leakage = 0.0;
  double empty_pair_leakage = 0.0;
  double occupied_pair_leakage = 0.0;
};

/// Assembles the finite-N gate from two copies of the nested device: the
/// copy matching the shutter position runs evolve_with_particle, the other
/// runs evolve_empty_closed. Ports map as P1 = H1, P1t = H2 of copy 1 and
/// P2 = H1, P2t = H2 of copy 2. theta defaults to pi/(cycles+1).
RealizedGate realized_gate(int cycles, std::optional<double> theta = {});

/// Column-normalized gate: the action post-selected on no absorption and
/// an H-polarized (port) exit.
Operator post_selected_gate(const Operator& gate);

}  // namespace qshutter
