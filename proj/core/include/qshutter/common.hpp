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

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace qshutter {

using cx = std::complex<double>;

// Entrywise tolerance for operator identities (unitarity, oracle equality).
inline constexpr double kOperatorTol = 1e-10;
// Tolerance for norms and probabilities.
inline constexpr double kNormTol = 1e-12;

// Separator used when tensor products concatenate basis labels.
inline constexpr char kLabelSep = '*';

/// Base class for all library errors.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller violated a documented precondition (bad basis, bad parameter).
/// Maps to a usage error at the CLI boundary.
class precondition_error : public error {
 public:
  using error::error;
};

/// An internal numeric invariant failed (non-finite amplitude, branch
/// probabilities not summing to the input weight). Indicates a bug, not
/// a usage mistake.
class invariant_error : public error {
 public:
  using error::error;
};

std::string join_labels(const std::string& a, const std::string& b);
std::vector<std::string> split_label(const std::string& joint);

/// Cartesian product of two ordered label sets, outer-major.
std::vector<std::string> product_labels(const std::vector<std::string>& outer,
                                        const std::vector<std::string>& inner);

namespace bases {
inline const std::vector<std::string> hv = {"H", "V"};
inline const std::vector<std::string> polarization4 = {"H1", "V1", "H2", "V2"};
inline const std::vector<std::string> ports = {"P1", "P2", "P1t", "P2t"};
inline const std::vector<std::string> shutter = {"S1", "S2"};
}  // namespace bases

}  // namespace qshutter
