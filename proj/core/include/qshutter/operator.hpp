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

#include <functional>

#include <Eigen/Dense>

#include "qshutter/state.hpp"

namespace qshutter {

/// A square complex matrix acting on a labeled mode basis.
/// Columns are inputs, rows are outputs, both in basis order.
class Operator {
 public:
  Operator(std::vector<std::string> basis, Eigen::MatrixXcd entries);

  static Operator identity(const std::vector<std::string>& basis);

  /// Rank-1 projector |v><v| on v's basis.
  static Operator projector_onto(const PureState& v);

  /// Diagonal 0/1 projector selecting the given labels.
  static Operator diagonal_projector(const std::vector<std::string>& basis,
                                     const std::vector<std::string>& selected);

  /// Builds an operator from its action on basis labels. The action maps an
  /// input label to (output label, amplitude); useful for signed
  /// permutations such as the ideal shutter gates.
  static Operator from_basis_action(
      const std::vector<std::string>& basis,
      const std::function<std::pair<std::string, cx>(const std::string&)>&
          action);

  const std::vector<std::string>& basis() const { return basis_; }
  const Eigen::MatrixXcd& matrix() const { return entries_; }
  Eigen::Index dim() const { return entries_.rows(); }

  cx entry(const std::string& out, const std::string& in) const;
  Eigen::Index index_of(const std::string& label) const;

  Operator dagger() const;
  bool is_unitary(double tol = kOperatorTol) const;
  bool is_hermitian(double tol = kOperatorTol) const;
  /// Throws invariant_error when U†U deviates from I by more than tol.
  void require_unitary(double tol = kOperatorTol) const;

  /// Max entrywise deviation of U†U from the identity.
  double unitarity_defect() const;

 private:
  std::vector<std::string> basis_;
  Eigen::MatrixXcd entries_;
};

/// Kronecker product with concatenated basis labels (a outer, b inner).
/// Operand label sets must be disjoint.
Operator tensor(const Operator& a, const Operator& b);
/// Product of states; weights multiply.
PureState tensor(const PureState& a, const PureState& b);

/// Matrix-vector product. Bases must match exactly; the result is not
/// renormalized (a unitary must preserve the norm on its own).
PureState apply(const Operator& u, const PureState& s);

/// Operator composition a·b (apply b first). Bases must match.
Operator compose(const Operator& a, const Operator& b);

/// n-fold repeated multiplication, U^0 = I. Brute-force reference route.
Operator matrix_power_direct(const Operator& u, int n);

/// U^n via the spectral decomposition U = sum_i lambda_i |e_i><e_i|,
/// computed from a Schur factorization. The input must be normal (every
/// unitary is); otherwise throws precondition_error. Negative n is allowed
/// for unitaries.
Operator spectral_power(const Operator& u, int n);

/// Eigenvalues of a normal operator (unordered).
Eigen::VectorXcd normal_eigenvalues(const Operator& u);

}  // namespace qshutter
