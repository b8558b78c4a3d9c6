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

#include "qshutter/state.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace qshutter {

namespace {

void check_unique(const std::vector<std::string>& basis) {
  std::unordered_set<std::string> seen;
  for (const auto& label : basis) {
    if (!seen.insert(label).second) {
      throw precondition_error("duplicate basis label: " + label);
    }
  }
}

}  // namespace

PureState::PureState(std::vector<std::string> basis, Eigen::VectorXcd amps,
                     double weight)
    : basis_(std::move(basis)), amps_(std::move(amps)), weight_(weight) {
  if (static_cast<Eigen::Index>(basis_.size()) != amps_.size()) {
    throw precondition_error("basis/amplitude size mismatch");
  }
  check_unique(basis_);
  if (!amps_.allFinite() || !std::isfinite(weight_)) {
    throw invariant_error("non-finite amplitude or weight");
  }
  if (weight_ < 0.0 || weight_ > 1.0 + kNormTol) {
    throw precondition_error("weight outside [0, 1]");
  }
  const double norm2 = amps_.squaredNorm();
  if (std::abs(norm2 - 1.0) > kNormTol) {
    throw invariant_error("state not normalized: |norm^2 - 1| = " +
                          std::to_string(std::abs(norm2 - 1.0)));
  }
}

PureState PureState::basis_state(const std::vector<std::string>& basis,
                                 const std::string& label, double weight) {
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(basis.size());
  const auto it = std::find(basis.begin(), basis.end(), label);
  if (it == basis.end()) {
    throw precondition_error("unknown basis label: " + label);
  }
  amps(it - basis.begin()) = cx(1.0, 0.0);
  return PureState(basis, std::move(amps), weight);
}

PureState PureState::normalized(std::vector<std::string> basis,
                                Eigen::VectorXcd amps, double weight) {
  const double n = amps.norm();
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw precondition_error("cannot normalize a zero or non-finite vector");
  }
  return PureState(std::move(basis), amps / n, weight);
}

cx PureState::amp(const std::string& label) const {
  return amps_(index_of(label));
}

Eigen::Index PureState::index_of(const std::string& label) const {
  const auto it = std::find(basis_.begin(), basis_.end(), label);
  if (it == basis_.end()) {
    throw precondition_error("unknown basis label: " + label);
  }
  return it - basis_.begin();
}

PureState PureState::with_weight(double weight) const {
  return PureState(basis_, amps_, weight);
}

cx inner(const PureState& a, const PureState& b) {
  if (!same_basis(a.basis(), b.basis())) {
    throw precondition_error("inner product across mismatched bases");
  }
  return a.amps().dot(b.amps());  // Eigen's dot conjugates the left side
}

double fidelity(const PureState& a, const PureState& b) {
  return std::norm(inner(a, b));
}

bool equal_up_to_global_phase(const PureState& a, const PureState& b,
                              double tol) {
  if (!same_basis(a.basis(), b.basis())) {
    return false;
  }
  const cx overlap = inner(a, b);
  if (std::abs(overlap) < tol) {
    return false;
  }
  const cx phase = overlap / std::abs(overlap);
  return (a.amps() * phase - b.amps()).cwiseAbs().maxCoeff() <= tol;
}

bool same_basis(const std::vector<std::string>& a,
                const std::vector<std::string>& b) {
  return a == b;
}

}  // namespace qshutter
