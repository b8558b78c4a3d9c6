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

#include <array>
#include <map>

#include "qshutter/shutter.hpp"

namespace qshutter {

/// alpha|0> + beta|1>, normalized.
struct LogicalQubit {
  cx alpha{1.0, 0.0};
  cx beta{0.0, 0.0};

  void validate() const;
};

/// One protocol measurement outcome: the classical bits collected so far,
/// the branch probability, and the conditional final state.
struct ProtocolOutcome {
  std::map<std::string, int> classical_bits;
  std::string branch_label;
  double probability = 0.0;
  PureState final_state;
};

inline const std::vector<std::string> kLogicalBasis1 = {"0", "1"};
inline const std::vector<std::string> kLogicalBasis2 = {"00", "01", "10",
                                                        "11"};

PureState shutter_plus();
PureState shutter_minus();

/// Dual-rail-with-phase port encoding:
///   |0> -> (P1 - P1t)/sqrt(2),  |1> -> (P2 + P2t)/sqrt(2).
PureState encode_logical(const LogicalQubit& q);

/// Hadamard-type mixer on the (P1, P2) pair and the (P1t, P2t) pair. The
/// per-pair matrix is ((-1, 1), (1, 1))/sqrt(2); this sign/order convention
/// is what makes the write contract below hold exactly, and is frozen here.
Operator port_hadamard();

/// Writes a qubit into the shutter: interact |+> (x) encode_logical(q)
/// through the ideal gate, mix the ports, measure the port. Four branches;
/// bit a is 0 for P1 or P2t and 1 for P2 or P1t; every branch leaves the
/// shutter in (-1)^a alpha|+> - beta|-> up to a global phase.
std::vector<ProtocolOutcome> memory_write(const LogicalQubit& q);

/// Reads the shutter by sending the probe encode_logical((|0>+|1>)/sqrt 2)
/// through the ideal gate and measuring the shutter in the ± basis
/// (b = 0 for +, b = 1 for -). The photon is left in the logical state
/// -(-1)^a alpha|b> + beta|b xor 1>.
std::vector<ProtocolOutcome> memory_read(const PureState& shutter, int a);

/// Undoes the read byproducts: NOT when b = 1, then a sign shift on |0>
/// keyed on a. Returns the originally written qubit (global phase free).
LogicalQubit apply_read_corrections(const PureState& logical_photon, int a,
                                    int b);

/// Two-qubit amplitudes (alpha, beta, gamma, delta) over |00>..|11>; the
/// leftmost ket slot is the control qubit.
struct TwoQubitAmps {
  cx alpha{1.0, 0.0};
  cx beta{0.0, 0.0};
  cx gamma{0.0, 0.0};
  cx delta{0.0, 0.0};

  void validate() const;
};

/// The shutter-pair state two memory_write calls leave behind:
/// (-1)^(a1+a2) alpha|++> - (-1)^a2 beta|+-> - (-1)^a1 gamma|-+> + delta|-->
/// (control shutter first, written with bit a2; target written with a1).
PureState cnot_written_pair(const TwoQubitAmps& q, int a1, int a2);

/// Runs the shutter CNOT: a probe conditioned on a1 interacts with the
/// control shutter and is routed through the target shutter's slit-2 pair,
/// then the target shutter is read out with a second probe; both shutters
/// are measured in the ± basis. Emits four equal-probability branches whose
/// final states are two-qubit logical states over (control, target).
std::vector<ProtocolOutcome> cnot_protocol(const TwoQubitAmps& q, int a1,
                                           int a2);

/// Classically controlled cleanup for one CNOT branch: per-qubit bit flips
/// applied first, then computational-basis sign flips (signs[0] normalized
/// to +1).
struct BranchCorrection {
  bool flip_control = false;
  bool flip_target = false;
  std::array<double, 4> signs = {1.0, 1.0, 1.0, 1.0};  // |00>,|01>,|10>,|11>
};

/// Solves for the correction extensionally: runs the protocol on the four
/// basis inputs and inverts the observed signed permutation. Throws
/// invariant_error if no flip+sign correction exists (must not happen).
BranchCorrection derive_branch_corrections(const std::string& branch, int a1,
                                           int a2);

PureState apply_branch_correction(const PureState& two_qubit_state,
                                  const BranchCorrection& corr);

/// alpha|00> + beta|01> + gamma|11> + delta|10>: the CNOT image of q with
/// the leftmost slot as control.
PureState cnot_target_state(const TwoQubitAmps& q);

/// Outcome of a write -> read -> correct cycle run on a substituted
/// (possibly sub-unitary) shutter gate such as realized_gate(N).gate.
struct GateSubstitutionReport {
  /// Probability of losing the photon (absorption or a wrong-polarization
  /// exit) during the write or any read branch.
  double leaked_probability = 0.0;
  double surviving_probability = 0.0;
  /// Worst and probability-weighted recovered fidelity over the surviving
  /// write x read branches. Both are exactly 1 for the ideal gate.
  double min_fidelity = 1.0;
  double mean_fidelity = 1.0;
};

/// Runs the memory round-trip with an arbitrary gate on the shutter x port
/// space in place of the ideal one, accounting the norm lost to leakage as
/// explicit probability.
GateSubstitutionReport memory_roundtrip_with_gate(const LogicalQubit& q,
                                                  const Operator& gate);

}  // namespace qshutter
