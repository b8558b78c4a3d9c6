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

#include <Eigen/Dense>

#include "qshutter/common.hpp"

namespace qshutter {

/// A normalized complex amplitude vector over an ordered, labeled mode basis.
///
/// Normalization lives in the vector (sum of |amp|^2 is 1 within kNormTol);
/// the probability of the branch that produced this state lives in weight().
/// Values are immutable after construction.
class PureState {
 public:
  /// Requires unique labels, finite amplitudes, unit norm within kNormTol,
  /// and weight in [0, 1].
  PureState(std::vector<std::string> basis, Eigen::VectorXcd amps,
            double weight = 1.0);

  /// Basis state |label> with unit amplitude.
  static PureState basis_state(const std::vector<std::string>& basis,
                               const std::string& label, double weight = 1.0);

  /// Normalizes the given amplitudes. The vector must have nonzero norm.
  static PureState normalized(std::vector<std::string> basis,
                              Eigen::VectorXcd amps, double weight = 1.0);

  const std::vector<std::string>& basis() const { return basis_; }
  const Eigen::VectorXcd& amps() const { return amps_; }
  double weight() const { return weight_; }
  Eigen::Index dim() const { return amps_.size(); }

  /// Amplitude of a basis label; throws precondition_error on unknown label.
  cx amp(const std::string& label) const;
  Eigen::Index index_of(const std::string& label) const;

  PureState with_weight(double weight) const;

 private:
  std::vector<std::string> basis_;
  Eigen::VectorXcd amps_;
  double weight_;
};

/// <a|b>. Bases must match exactly (labels and order).
cx inner(const PureState& a, const PureState& b);

/// |<a|b>|^2 — global-phase-insensitive overlap of unit vectors.
double fidelity(const PureState& a, const PureState& b);

/// True when a and b agree entrywise up to one global phase, within tol.
bool equal_up_to_global_phase(const PureState& a, const PureState& b,
                              double tol = kNormTol);

bool same_basis(const std::vector<std::string>& a,
                const std::vector<std::string>& b);

}  // namespace qshutter
