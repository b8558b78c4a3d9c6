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

#include "qshutter/measure.hpp"

namespace qshutter {

/// Single-interferometer interrogation: a photon cycles N times through a
/// weak polarization rotation; an absorbing object in the V arm either
/// swallows the photon or projects it back to |H>. With no object the N
/// rotations compose coherently.
struct InterrogationConfig {
  double theta = 0.0;  // radians, in (0, pi/2]
  int cycles = 1;      // N >= 1
  bool bomb_present = false;

  void validate() const;  // throws precondition_error
};

struct InterrogationResult {
  /// Exact cumulative absorption probability, accumulated branch by branch
  /// (1 - cos^2N(theta) for |H> input), never taken from a closed form.
  double explosion_probability = 0.0;
  /// The closed form sin^(2N)(theta), reported alongside for comparison;
  /// it does not equal the exact accumulation for N > 1.
  double sin_power_formula = 0.0;
  std::vector<Branch> surviving_branches;

  double survival_probability() const;
};

/// The 2x2 polarization rotator on (H, V):
///   ( cos t   sin t)
///   (-sin t   cos t)
/// This row orientation is canonical repo-wide; downstream sign claims
/// depend on it.
Operator rotation(double theta);

/// rotation(theta)^n via the rank-1 spectral form with eigenpairs
/// e^{±i theta} and (1, ±i)/sqrt(2); equals rotation(n*theta).
Operator rotation_power_closed(double theta, int n);

/// pi/(2n): the angle for which n no-object cycles map |H> to |V> exactly.
double optimal_theta(int n);

/// Runs the device on a horizontally polarized input photon.
InterrogationResult interrogate(const InterrogationConfig& cfg);

/// General-input variant (input over the (H, V) basis).
InterrogationResult interrogate_state(const InterrogationConfig& cfg,
                                      const PureState& input);

}  // namespace qshutter
