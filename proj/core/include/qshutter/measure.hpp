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
#include <utility>

#include "qshutter/operator.hpp"

namespace qshutter {

/// One measurement (or absorption) outcome: the classical record, its
/// probability, and the conditional post-measurement state. Absorbed
/// branches and zero-probability branches carry no state.
struct Branch {
  std::vector<std::pair<std::string, std::string>> record;
  double probability = 0.0;
  std::optional<PureState> state;
  bool absorbed = false;

  std::string record_value(const std::string& name) const;
};

struct NamedProjector {
  std::string label;
  Operator projector;
};

/// Projective measurement with branch bookkeeping.
///
/// The projectors must be Hermitian, idempotent, mutually orthogonal and
/// complete (checked within kOperatorTol). Emits one branch per projector
/// with probability <s|P|s> * s.weight and the renormalized post-state;
/// zero-probability branches are kept with an unset state. The emitted
/// probabilities must sum to the input weight within kNormTol or an
/// invariant_error is thrown.
std::vector<Branch> measure(const PureState& s,
                            const std::vector<NamedProjector>& projectors,
                            const std::string& record_name = "outcome");

double branch_probability_sum(const std::vector<Branch>& branches);

}  // namespace qshutter
