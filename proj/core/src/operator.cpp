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

#include "qshutter/operator.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include <Eigen/Eigenvalues>

namespace qshutter {

Operator::Operator(std::vector<std::string> basis, Eigen::MatrixXcd entries)
    : basis_(std::move(basis)), entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols()) {
    throw precondition_error("operator matrix must be square");
  }
  if (static_cast<Eigen::Index>(basis_.size()) != entries_.rows()) {
    throw precondition_error("operator dimension must equal basis length");
  }
  std::unordered_set<std::string> seen;
  for (const auto& label : basis_) {
    if (!seen.insert(label).second) {
      throw precondition_error("duplicate basis label: " + label);
    }
  }
  if (!entries_.allFinite()) {
    throw invariant_error("non-finite operator entry");
  }
}

Operator Operator::identity(const std::vector<std::string>& basis) {
  return Operator(basis,
                  Eigen::MatrixXcd::Identity(basis.size(), basis.size()));
}

Operator Operator::projector_onto(const PureState& v) {
  return Operator(v.basis(), v.amps() * v.amps().adjoint());
}

Operator Operator::diagonal_projector(
    const std::vector<std::string>& basis,
    const std::vector<std::string>& selected) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(basis.size(), basis.size());
  for (const auto& label : selected) {
    const auto it = std::find(basis.begin(), basis.end(), label);
    if (it == basis.end()) {
      throw precondition_error("unknown basis label: " + label);
    }
    const Eigen::Index i = it - basis.begin();
    m(i, i) = cx(1.0, 0.0);
  }
  return Operator(basis, std::move(m));
}

Operator Operator::from_basis_action(
    const std::vector<std::string>& basis,
    const std::function<std::pair<std::string, cx>(const std::string&)>&
        action) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(basis.size(), basis.size());
  for (std::size_t in = 0; in < basis.size(); ++in) {
    const auto [out_label, amp] = action(basis[in]);
    const auto it = std::find(basis.begin(), basis.end(), out_label);
    if (it == basis.end()) {
      throw precondition_error("basis action left the basis: " + out_label);
    }
    m(it - basis.begin(), static_cast<Eigen::Index>(in)) = amp;
  }
  return Operator(basis, std::move(m));
}

cx Operator::entry(const std::string& out, const std::string& in) const {
  return entries_(index_of(out), index_of(in));
}

Eigen::Index Operator::index_of(const std::string& label) const {
  const auto it = std::find(basis_.begin(), basis_.end(), label);
  if (it == basis_.end()) {
    throw precondition_error("unknown basis label: " + label);
  }
  return it - basis_.begin();
}

Operator Operator::dagger() const {
  return Operator(basis_, entries_.adjoint());
}

double Operator::unitarity_defect() const {
  const Eigen::MatrixXcd gram = entries_.adjoint() * entries_;
  return (gram - Eigen::MatrixXcd::Identity(dim(), dim()))
      .cwiseAbs()
      .maxCoeff();
}

bool Operator::is_unitary(double tol) const {
  return unitarity_defect() <= tol;
}

bool Operator::is_hermitian(double tol) const {
  return (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

void Operator::require_unitary(double tol) const {
  const double defect = unitarity_defect();
  if (defect > tol) {
    throw invariant_error("operator is not unitary (defect " +
                          std::to_string(defect) + ")");
  }
}

namespace {

void check_disjoint(const std::vector<std::string>& a,
                    const std::vector<std::string>& b) {
  std::unordered_set<std::string> seen(a.begin(), a.end());
  for (const auto& label : b) {
    if (seen.count(label) != 0) {
      throw precondition_error("label collision in tensor product: " + label);
    }
  }
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

}  // namespace

Operator tensor(const Operator& a, const Operator& b) {
  check_disjoint(a.basis(), b.basis());
  return Operator(product_labels(a.basis(), b.basis()),
                  kron(a.matrix(), b.matrix()));
}

PureState tensor(const PureState& a, const PureState& b) {
  check_disjoint(a.basis(), b.basis());
  Eigen::VectorXcd amps(a.dim() * b.dim());
  for (Eigen::Index i = 0; i < a.dim(); ++i) {
    amps.segment(i * b.dim(), b.dim()) = a.amps()(i) * b.amps();
  }
  return PureState(product_labels(a.basis(), b.basis()), std::move(amps),
                   a.weight() * b.weight());
}

PureState apply(const Operator& u, const PureState& s) {
  if (!same_basis(u.basis(), s.basis())) {
    throw precondition_error("operator/state basis mismatch");
  }
  Eigen::VectorXcd out = u.matrix() * s.amps();
  if (!out.allFinite()) {
    throw invariant_error("non-finite amplitudes after apply");
  }
  return PureState(s.basis(), std::move(out), s.weight());
}

Operator compose(const Operator& a, const Operator& b) {
  if (!same_basis(a.basis(), b.basis())) {
    throw precondition_error("operator basis mismatch in compose");
  }
  return Operator(a.basis(), a.matrix() * b.matrix());
}

Operator matrix_power_direct(const Operator& u, int n) {
  if (n < 0) {
    throw precondition_error("matrix_power_direct needs n >= 0");
  }
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Identity(u.dim(), u.dim());
  for (int i = 0; i < n; ++i) {
    acc = u.matrix() * acc;
  }
  return Operator(u.basis(), std::move(acc));
}

namespace {

// Schur factorization of a normal matrix: U = Q T Q† with T diagonal, so
// Q's columns are an orthonormal eigenbasis and T's diagonal holds the
// eigenvalues. The off-diagonal mass of T measures non-normality.
struct SpectralParts {
  Eigen::MatrixXcd vectors;
  Eigen::VectorXcd values;
};

SpectralParts normal_spectral_parts(const Operator& u) {
  Eigen::ComplexSchur<Eigen::MatrixXcd> schur(u.matrix());
  if (schur.info() != Eigen::Success) {
    throw precondition_error("Schur factorization failed");
  }
  const Eigen::MatrixXcd& t = schur.matrixT();
  Eigen::MatrixXcd off = t;
  off.diagonal().setZero();
  const double scale = std::max(1.0, t.cwiseAbs().maxCoeff());
  if (off.cwiseAbs().maxCoeff() > 1e-8 * scale) {
    throw precondition_error(
        "spectral decomposition requires a normal operator");
  }
  return {schur.matrixU(), t.diagonal()};
}

}  // namespace

Operator spectral_power(const Operator& u, int n) {
  const SpectralParts parts = normal_spectral_parts(u);
  Eigen::VectorXcd powers(parts.values.size());
  for (Eigen::Index i = 0; i < parts.values.size(); ++i) {
    powers(i) = std::pow(parts.values(i), n);
  }
  Eigen::MatrixXcd result =
      parts.vectors * powers.asDiagonal() * parts.vectors.adjoint();
  if (!result.allFinite()) {
    throw invariant_error("non-finite spectral power (singular eigenvalue?)");
  }
  return Operator(u.basis(), std::move(result));
}

Eigen::VectorXcd normal_eigenvalues(const Operator& u) {
  return normal_spectral_parts(u).values;
}

}  // namespace qshutter
