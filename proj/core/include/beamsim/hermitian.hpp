// SPDX-License-Identifier: Apache-2.0
//
// beamsim: steering-vector estimation for MVDR robust adaptive beamforming
// Copyright (C) 2026 The beamsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <complex>

#include <Eigen/Dense>

namespace beamsim {

using cplx = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;

/// Complex Hermitian matrix. Every constructor projects its input onto the
/// Hermitian subspace, so the stored matrix equals its conjugate transpose
/// bit-for-bit and has an exactly real diagonal.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(Eigen::Index n);
  explicit HermitianMatrix(const CMatrix& m);

  static HermitianMatrix zero(Eigen::Index n) { return HermitianMatrix(n); }
  static HermitianMatrix identity(Eigen::Index n);
  /// v v^H
  static HermitianMatrix outer(const CVector& v);
  static HermitianMatrix diagonal(const RVector& d);

  Eigen::Index dim() const { return m_.rows(); }
  const CMatrix& matrix() const { return m_; }
  cplx operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

  double trace() const { return m_.diagonal().real().sum(); }
  /// x^H A x (real by construction).
  double quadratic_form(const CVector& x) const;
  double frobenius_norm() const { return m_.norm(); }
  RVector eigenvalues() const;

  HermitianMatrix operator+(const HermitianMatrix& o) const;
  HermitianMatrix operator-(const HermitianMatrix& o) const;
  HermitianMatrix operator*(double s) const;
  HermitianMatrix operator-() const { return *this * -1.0; }

 private:
  CMatrix m_;
};

inline HermitianMatrix operator*(double s, const HermitianMatrix& a) { return a * s; }

/// tr(A B) for Hermitian A, B.
double trace_product(const HermitianMatrix& a, const HermitianMatrix& b);

/// Real-symmetric image [[Re A, -Im A], [Im A, Re A]]. PSD-ness is preserved
/// both ways and tr(E(A) E(B)) = 2 tr(A B).
RMatrix real_embedding(const HermitianMatrix& a);

/// Inverse of real_embedding. Inputs that are not block-structured are
/// averaged onto the nearest structured matrix first.
HermitianMatrix from_real_embedding(const RMatrix& s);

/// Embeds [[A, 0], [0, corner]] of dimension dim(A) + 1.
HermitianMatrix augment(const HermitianMatrix& a, double corner = 0.0);

/// Inverse of a positive definite matrix through its Cholesky factor. Throws
/// std::domain_error if A is not positive definite or its condition number
/// exceeds max_condition.
HermitianMatrix inverse_pd(const HermitianMatrix& a, double max_condition = 1e12);

}  // namespace beamsim
