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

#include "qshutter/measure.hpp"

#include <cmath>

namespace qshutter {

std::string Branch::record_value(const std::string& name) const {
  for (const auto& [key, value] : record) {
    if (key == name) {
      return value;
    }
  }
  throw precondition_error("no record entry named " + name);
}

namespace {

void validate_projectors(const PureState& s,
                         const std::vector<NamedProjector>& projectors) {
  if (projectors.empty()) {
    throw precondition_error("measurement needs at least one projector");
  }
  const Eigen::Index d = s.dim();
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(d, d);
  for (const auto& np : projectors) {
    const Operator& p = np.projector;
    if (!same_basis(p.basis(), s.basis())) {
      throw precondition_error("projector basis mismatch: " + np.label);
    }
    if (!p.is_hermitian(kOperatorTol)) {
      throw precondition_error("projector not Hermitian: " + np.label);
    }
    const Eigen::MatrixXcd& m = p.matrix();
    if ((m * m - m).cwiseAbs().maxCoeff() > kOperatorTol) {
      throw precondition_error("projector not idempotent: " + np.label);
    }
    sum += m;
  }
  for (std::size_t i = 0; i < projectors.size(); ++i) {
    for (std::size_t j = i + 1; j < projectors.size(); ++j) {
      const double cross = (projectors[i].projector.matrix() *
                            projectors[j].projector.matrix())
                               .cwiseAbs()
                               .maxCoeff();
      if (cross > kOperatorTol) {
        throw precondition_error("projectors not mutually orthogonal: " +
                                 projectors[i].label + ", " +
                                 projectors[j].label);
      }
    }
  }
  if ((sum - Eigen::MatrixXcd::Identity(d, d)).cwiseAbs().maxCoeff() >
      kOperatorTol) {
    throw precondition_error("projector set incomplete (sum != identity)");
  }
}

}  // namespace

std::vector<Branch> measure(const PureState& s,
                            const std::vector<NamedProjector>& projectors,
                            const std::string& record_name) {
  validate_projectors(s, projectors);

  std::vector<Branch> branches;
  branches.reserve(projectors.size());
  for (const auto& np : projectors) {
    Eigen::VectorXcd projected = np.projector.matrix() * s.amps();
    const double p_conditional = projected.squaredNorm();
    Branch branch;
    branch.record.emplace_back(record_name, np.label);
    branch.probability = p_conditional * s.weight();
    if (p_conditional > 0.0) {
      branch.state = PureState(s.basis(), projected / std::sqrt(p_conditional),
                               std::min(branch.probability, 1.0));
    }
    branches.push_back(std::move(branch));
  }

  const double total = branch_probability_sum(branches);
  if (std::abs(total - s.weight()) > kNormTol) {
    throw invariant_error("branch probabilities sum to " +
                          std::to_string(total) + ", expected state weight");
  }
  return branches;
}

double branch_probability_sum(const std::vector<Branch>& branches) {
  double total = 0.0;
  for (const auto& b : branches) {
    total += b.probability;
  }
  return total;
}

}  // namespace qshutter
