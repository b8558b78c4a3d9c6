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

#include "qshutter/interrogation.hpp"

#include <cmath>
#include <numbers>

namespace qshutter {

void InterrogationConfig::validate() const {
  if (!std::isfinite(theta) || theta <= 0.0 ||
      theta > std::numbers::pi / 2.0 + kNormTol) {
    throw precondition_error("theta must lie in (0, pi/2]");
  }
  if (cycles < 1) {
    throw precondition_error("cycles must be >= 1");
  }
}

double InterrogationResult::survival_probability() const {
  return branch_probability_sum(surviving_branches);
}

Operator rotation(double theta) {
  if (!std::isfinite(theta)) {
    throw precondition_error("theta must be finite");
  }
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  Eigen::MatrixXcd m(2, 2);
  m << c, s, -s, c;
  return Operator(bases::hv, std::move(m));
}

Operator rotation_power_closed(double theta, int n) {
  if (n < 0) {
    throw precondition_error("rotation_power_closed needs n >= 0");
  }
  // Rank-1 spectral form: eigenvalues e^{±i theta} with eigenvectors
  // (1, ±i)/sqrt(2); the n-th power just raises the eigenvalues.
  const cx i(0.0, 1.0);
  Eigen::Vector2cd e_plus, e_minus;
  e_plus << cx(1.0, 0.0), i;
  e_minus << cx(1.0, 0.0), -i;
  e_plus /= std::sqrt(2.0);
  e_minus /= std::sqrt(2.0);
  const cx lam_plus = std::exp(i * cx(static_cast<double>(n) * theta, 0.0));
  const cx lam_minus = std::exp(-i * cx(static_cast<double>(n) * theta, 0.0));
  Eigen::MatrixXcd m = lam_plus * (e_plus * e_plus.adjoint()) +
                       lam_minus * (e_minus * e_minus.adjoint());
  return Operator(bases::hv, std::move(m));
}

double optimal_theta(int n) {
  if (n < 1) {
    throw precondition_error("optimal_theta needs n >= 1");
  }
  return std::numbers::pi / (2.0 * static_cast<double>(n));
}

InterrogationResult interrogate(const InterrogationConfig& cfg) {
  return interrogate_state(cfg,
                           PureState::basis_state(bases::hv, "H"));
}

InterrogationResult interrogate_state(const InterrogationConfig& cfg,
                                      const PureState& input) {
  cfg.validate();
  if (!same_basis(input.basis(), bases::hv)) {
    throw precondition_error("interrogation input must live on the (H, V) basis");
  }

  InterrogationResult result;
  result.sin_power_formula =
      std::pow(std::sin(cfg.theta), 2.0 * cfg.cycles);

  if (!cfg.bomb_present) {
    const Operator evolution = rotation_power_closed(cfg.theta, cfg.cycles);
    Branch out;
    out.record.emplace_back("event", "survived");
    out.probability = input.weight();
    out.state = apply(evolution, input);
    result.explosion_probability = 0.0;
    result.surviving_branches.push_back(std::move(out));
    return result;
  }

  // Branch bookkeeping: per cycle rotate, then let the object absorb the
  // V component. The cumulative explosion probability is accumulated
  // cycle by cycle, never taken from a closed form.
  const Operator rot = rotation(cfg.theta);
  Eigen::VectorXcd amps = input.amps();
  double survival = input.weight();
  double explosion = 0.0;
  for (int cycle = 0; cycle < cfg.cycles && survival > 0.0; ++cycle) {
    amps = rot.matrix() * amps;
    const double p_absorb = std::norm(amps(1));
    explosion += survival * p_absorb;
    survival *= 1.0 - p_absorb;
    amps(1) = cx(0.0, 0.0);
    const double remaining = std::abs(amps(0));
    if (remaining == 0.0) {
      survival = 0.0;
      break;
    }
    amps(0) /= remaining;  // keep the phase, drop the magnitude
  }

  result.explosion_probability = explosion;
  Branch survivor;
  survivor.record.emplace_back("event", "survived");
  survivor.probability = survival;
  if (survival > 0.0) {
    survivor.state = PureState(bases::hv, amps, std::min(survival, 1.0));
  }
  result.surviving_branches.push_back(std::move(survivor));

  if (std::abs(explosion + survival - input.weight()) > kNormTol) {
    throw invariant_error("interrogation branches do not conserve probability");
  }
  return result;
}

}  // namespace qshutter
