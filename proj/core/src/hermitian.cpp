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

#include "beamsim/hermitian.hpp"

#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace beamsim {

namespace {

CMatrix hermitian_part(const CMatrix& m) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("HermitianMatrix: input is not square");
  }
  CMatrix h = 0.5 * (m + m.adjoint());
  // Write the upper triangle into the lower one so the two halves are exact
  // conjugates rather than merely equal up to rounding.
  for (Eigen::Index j = 0; j < h.cols(); ++j) {
    h(j, j) = cplx(h(j, j).real(), 0.0);
    for (Eigen::Index i = j + 1; i < h.rows(); ++i) h(i, j) = std::conj(h(j, i));
  }
  return h;
}

}  // namespace

HermitianMatrix::HermitianMatrix(Eigen::Index n) : m_(CMatrix::Zero(n, n)) {}

HermitianMatrix::HermitianMatrix(const CMatrix& m) : m_(hermitian_part(m)) {}

HermitianMatrix HermitianMatrix::identity(Eigen::Index n) {
  return HermitianMatrix(CMatrix::Identity(n, n));
}

HermitianMatrix HermitianMatrix::outer(const CVector& v) {
  return HermitianMatrix(CMatrix(v * v.adjoint()));
}

HermitianMatrix HermitianMatrix::diagonal(const RVector& d) {
  return HermitianMatrix(CMatrix(d.cast<cplx>().asDiagonal()));
}

double HermitianMatrix::quadratic_form(const CVector& x) const {
  return x.dot(m_ * x).real();
}

RVector HermitianMatrix::eigenvalues() const {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m_, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

HermitianMatrix HermitianMatrix::operator+(const HermitianMatrix& o) const {
  return HermitianMatrix(CMatrix(m_ + o.m_));
}

HermitianMatrix HermitianMatrix::operator-(const HermitianMatrix& o) const {
  return HermitianMatrix(CMatrix(m_ - o.m_));
}

HermitianMatrix HermitianMatrix::operator*(double s) const {
  return HermitianMatrix(CMatrix(m_ * s));
}

double trace_product(const HermitianMatrix& a, const HermitianMatrix& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("trace_product: dimension mismatch");
  // tr(AB) = sum_ij A_ij B_ji = sum_ij A_ij conj(B_ij) for Hermitian B.
  return (a.matrix().array() * b.matrix().conjugate().array()).sum().real();
}

RMatrix real_embedding(const HermitianMatrix& a) {
  const Eigen::Index n = a.dim();
  RMatrix s(2 * n, 2 * n);
  const RMatrix re = a.matrix().real();
  const RMatrix im = a.matrix().imag();
  s.topLeftCorner(n, n) = re;
  s.bottomRightCorner(n, n) = re;
  s.topRightCorner(n, n) = -im;
  s.bottomLeftCorner(n, n) = im;
  return s;
}

HermitianMatrix from_real_embedding(const RMatrix& s) {
  if (s.rows() != s.cols() || s.rows() % 2 != 0) {
    throw std::invalid_argument("from_real_embedding: expected an even-sized square matrix");
  }
  const Eigen::Index n = s.rows() / 2;
  const RMatrix re = 0.5 * (s.topLeftCorner(n, n) + s.bottomRightCorner(n, n));
  const RMatrix im = 0.5 * (s.bottomLeftCorner(n, n) - s.topRightCorner(n, n));
  CMatrix m(n, n);
  m.real() = re;
  m.imag() = im;
  return HermitianMatrix(m);
}

HermitianMatrix augment(const HermitianMatrix& a, double corner) {
  const Eigen::Index n = a.dim();
  CMatrix m = CMatrix::Zero(n + 1, n + 1);
  m.topLeftCorner(n, n) = a.matrix();
  m(n, n) = corner;
  return HermitianMatrix(m);
}

HermitianMatrix inverse_pd(const HermitianMatrix& a, double max_condition) {
  const RVector ev = a.eigenvalues();
  if (ev.size() == 0) throw std::invalid_argument("inverse_pd: empty matrix");
  const double lmin = ev(0);
  const double lmax = ev(ev.size() - 1);
  if (!(lmin > 0.0)) throw std::domain_error("inverse_pd: matrix is not positive definite");
  if (lmax / lmin > max_condition) throw std::domain_error("inverse_pd: condition number too large");
  Eigen::LLT<CMatrix> llt(a.matrix());
  if (llt.info() != Eigen::Success) throw std::domain_error("inverse_pd: Cholesky factorization failed");
  return HermitianMatrix(CMatrix(llt.solve(CMatrix::Identity(a.dim(), a.dim()))));
}

}  // namespace beamsim
