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

#include "beamsim/rank_one.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include "beamsim/sdp.hpp"

namespace beamsim {

namespace {

double quad(const CMatrix& m, const CVector& v) { return v.dot(m * v).real(); }

// Makes x_r^H M x_r equal across the factors by pairwise rotations that keep
// sum_r x_r x_r^H fixed. With keep set, the rotation phase is chosen so that
// values of keep (already equalized) do not move.
void equalize(std::vector<CVector>& p, const CMatrix& m, double target, double tol,
              const CMatrix* keep) {
  const std::size_t n = p.size();
  std::vector<double> r(n);
  for (std::size_t iter = 0; iter < 4 * n + 4; ++iter) {
    for (std::size_t k = 0; k < n; ++k) r[k] = quad(m, p[k]) - target;
    const auto i = static_cast<std::size_t>(std::max_element(r.begin(), r.end()) - r.begin());
    const auto j = static_cast<std::size_t>(std::min_element(r.begin(), r.end()) - r.begin());
    if (r[i] <= tol && r[j] >= -tol) return;
    if (!(r[i] > 0.0 && r[j] < 0.0)) return;

    cplx phase(1.0, 0.0);
    if (keep != nullptr) {
      const cplx ck = p[i].dot(*keep * p[j]);
      if (std::abs(ck) > 0.0) phase = std::polar(1.0, std::numbers::pi / 2 - std::arg(ck));
    }
    const double beta = (phase * p[i].dot(m * p[j])).real();
    // r_j t^2 + 2 beta t + r_i = 0, real roots since r_i r_j < 0.
    const double disc = beta * beta - r[i] * r[j];
    const double q = -(beta + (beta >= 0.0 ? 1.0 : -1.0) * std::sqrt(disc));
    const double t = r[i] / q;
    const cplx g = t * phase;
    const double s = std::sqrt(1.0 + t * t);
    CVector w = (p[i] + g * p[j]) / s;
    CVector u = (-std::conj(g) * p[i] + p[j]) / s;
    p[i] = std::move(w);
    p[j] = std::move(u);
  }
}

struct QuadSystem {
  std::vector<CMatrix> b;
  std::vector<double> target;
  std::vector<double> scale;
};

Eigen::VectorXd system_residual(const QuadSystem& s, const CVector& u) {
  Eigen::VectorXd f(static_cast<Eigen::Index>(s.b.size()));
  for (std::size_t i = 0; i < s.b.size(); ++i) {
    f(static_cast<Eigen::Index>(i)) = (quad(s.b[i], u) - s.target[i]) / s.scale[i];
  }
  return f;
}

// Levenberg-Marquardt with min-norm steps on u^H B_i u = target_i (underdetermined).
bool lm_solve(const QuadSystem& s, CVector& u, int max_iter, double tol) {
  const Eigen::Index m = u.size();
  const Eigen::Index k = static_cast<Eigen::Index>(s.b.size());
  Eigen::VectorXd f = system_residual(s, u);
  double lambda = -1.0;
  for (int it = 0; it < max_iter; ++it) {
    if (f.cwiseAbs().maxCoeff() < tol) return true;
    RMatrix jac(k, 2 * m);
    for (Eigen::Index i = 0; i < k; ++i) {
      const CVector g = s.b[static_cast<std::size_t>(i)] * u;
      const double c = 2.0 / s.scale[static_cast<std::size_t>(i)];
      jac.row(i).head(m) = c * g.real().transpose();
      jac.row(i).tail(m) = c * g.imag().transpose();
    }
    const RMatrix jjt = jac * jac.transpose();
    if (lambda < 0.0) lambda = 1e-6 * std::max(jjt.trace() / static_cast<double>(k), 1e-300);
    bool accepted = false;
    for (int inner = 0; inner < 30; ++inner) {
      RMatrix lhs = jjt;
      lhs.diagonal().array() += lambda;
      const Eigen::VectorXd y = lhs.ldlt().solve(f);
      const Eigen::VectorXd d = -jac.transpose() * y;
      CVector un(m);
      un.real() = u.real() + d.head(m);
      un.imag() = u.imag() + d.tail(m);
      const Eigen::VectorXd fn = system_residual(s, un);
      if (fn.allFinite() && fn.norm() < f.norm()) {
        u = un;
        f = fn;
        lambda = std::max(lambda * 0.1, 1e-20);
        accepted = true;
        break;
      }
      lambda *= 10.0;
    }
    if (!accepted) return f.cwiseAbs().maxCoeff() < tol;
  }
  return f.cwiseAbs().maxCoeff() < tol;
}

// Solves u^H B_i u = beta_i in the coordinates of basis v (columns), x = v u.
D2Result solve_in_basis(const CMatrix& v, const std::array<HermitianMatrix, 4>& a,
                        const std::array<double, 4>& beta, const std::array<double, 4>& scale,
                        const std::vector<CVector>& starts, std::mt19937_64& rng, int extra_starts) {
  QuadSystem sys;
  for (int i = 0; i < 4; ++i) {
    CMatrix bi = v.adjoint() * a[static_cast<std::size_t>(i)].matrix() * v;
    bi = 0.5 * (bi + bi.adjoint()).eval();
    sys.b.push_back(std::move(bi));
    sys.target.push_back(beta[static_cast<std::size_t>(i)]);
    sys.scale.push_back(scale[static_cast<std::size_t>(i)]);
  }

  auto check = [&](const CVector& x) {
    double worst = 0.0;
    for (int i = 0; i < 4; ++i) {
      const auto ii = static_cast<std::size_t>(i);
      worst = std::max(worst, std::abs(a[ii].quadratic_form(x) - beta[ii]) / scale[ii]);
    }
    return worst;
  };

  D2Result out;
  out.status = D2Status::ConstructionFailed;
  double best = std::numeric_limits<double>::infinity();
  const Eigen::Index m = v.cols();
  std::normal_distribution<double> gauss(0.0, 1.0);
  double start_norm = 0.0;
  for (const auto& s : starts) start_norm = std::max(start_norm, s.norm());
  if (!(start_norm > 0.0)) start_norm = 1.0;

  const int total = static_cast<int>(starts.size()) + extra_starts;
  for (int k = 0; k < total; ++k) {
    CVector u;
    if (k < static_cast<int>(starts.size())) {
      u = starts[static_cast<std::size_t>(k)];
    } else {
      u.resize(m);
      for (Eigen::Index i = 0; i < m; ++i) u(i) = cplx(gauss(rng), gauss(rng));
      u *= start_norm / u.norm();
    }
    ++out.starts_tried;
    lm_solve(sys, u, 200, 1e-13);
    const CVector x = v * u;
    const double res = check(x);
    if (res < best) {
      best = res;
      out.x = x;
      out.max_relative_residual = res;
    }
    if (res <= 1e-9) break;
  }
  if (best <= 1e-6) out.status = D2Status::Success;
  return out;
}

std::array<double, 4> d2_scales(const std::array<HermitianMatrix, 4>& a, const std::array<double, 4>& beta,
                                double trx) {
  std::array<double, 4> s{};
  for (std::size_t i = 0; i < 4; ++i) {
    s[i] = std::max(std::abs(beta[i]), a[i].frobenius_norm() * trx);
    if (!(s[i] > 0.0)) s[i] = 1.0;
  }
  return s;
}

}  // namespace

DecompositionResult decompose_d1(const HermitianMatrix& x, const HermitianMatrix& a,
                                 const HermitianMatrix& b) {
  if (a.dim() != x.dim() || b.dim() != x.dim()) {
    throw std::invalid_argument("decompose_d1: dimension mismatch");
  }
  DecompositionResult out;
  std::vector<CVector> p = psd_factorize(x);
  if (p.empty()) return out;
  const double rr = static_cast<double>(p.size());

  CMatrix xt = CMatrix::Zero(x.dim(), x.dim());
  for (const auto& v : p) xt += v * v.adjoint();
  const HermitianMatrix xh(xt);
  const double trx = xh.trace();
  const double ta = trace_product(a, xh) / rr;
  const double tb = trace_product(b, xh) / rr;
  const double sa = a.frobenius_norm() * trx / rr;
  const double sb = b.frobenius_norm() * trx / rr;

  equalize(p, a.matrix(), ta, 1e-10 * sa, nullptr);
  equalize(p, b.matrix(), tb, 1e-10 * sb, &a.matrix());

  CMatrix rec = CMatrix::Zero(x.dim(), x.dim());
  for (const auto& v : p) {
    const double ra = a.quadratic_form(v) - ta;
    const double rb = b.quadratic_form(v) - tb;
    out.residuals.push_back({ra, rb});
    if (sa > 0.0) out.max_relative_residual = std::max(out.max_relative_residual, std::abs(ra) / sa);
    if (sb > 0.0) out.max_relative_residual = std::max(out.max_relative_residual, std::abs(rb) / sb);
    rec += v * v.adjoint();
  }
  out.reconstruction_error = (rec - x.matrix()).norm();
  out.vectors = std::move(p);
  return out;
}

std::string_view to_string(D2Status s) {
  switch (s) {
    case D2Status::Success: return "Success";
    case D2Status::RankTooLow: return "RankTooLow";
    case D2Status::Degenerate: return "Degenerate";
    case D2Status::ConstructionFailed: return "ConstructionFailed";
  }
  return "Unknown";
}

D2Result decompose_d2(const HermitianMatrix& x, const std::array<HermitianMatrix, 4>& a) {
  for (const auto& ai : a) {
    if (ai.dim() != x.dim()) throw std::invalid_argument("decompose_d2: dimension mismatch");
  }
  D2Result out;
  const std::vector<CVector> p = psd_factorize(x);
  const auto r = static_cast<Eigen::Index>(p.size());
  if (x.dim() < 3 || r < 3) {
    out.status = D2Status::RankTooLow;
    return out;
  }
  CMatrix v(x.dim(), r);
  for (Eigen::Index k = 0; k < r; ++k) v.col(k) = p[static_cast<std::size_t>(k)];
  const HermitianMatrix xt(CMatrix(v * v.adjoint()));
  const double trx = xt.trace();

  std::array<double, 4> beta{};
  bool all_zero_mats = true;
  bool all_zero_targets = true;
  for (std::size_t i = 0; i < 4; ++i) {
    beta[i] = trace_product(a[i], xt);
    if (a[i].frobenius_norm() > 0.0) all_zero_mats = false;
    if (std::abs(beta[i]) > 1e-12 * a[i].frobenius_norm() * trx) all_zero_targets = false;
  }
  if (all_zero_mats) {
    out.status = D2Status::Success;
    out.x = p.front();
    return out;
  }
  if (all_zero_targets) {
    out.status = D2Status::Degenerate;
    return out;
  }
  const auto scale = d2_scales(a, beta, trx);

  // Starts: D1 factors of I_r on the first two shifted equations, scaled to norm sqrt(r).
  const double dr = static_cast<double>(r);
  const HermitianMatrix eye = HermitianMatrix::identity(r);
  const HermitianMatrix b0(CMatrix(v.adjoint() * a[0].matrix() * v));
  const HermitianMatrix b1(CMatrix(v.adjoint() * a[1].matrix() * v));
  const auto d1 = decompose_d1(eye, b0 - eye * (beta[0] / dr), b1 - eye * (beta[1] / dr));
  std::vector<CVector> starts;
  for (const auto& u : d1.vectors) starts.push_back(u * std::sqrt(dr));
  for (std::size_t i = 0; i + 1 < d1.vectors.size(); ++i) {
    starts.push_back((d1.vectors[i] + cplx(0.0, 1.0) * d1.vectors[i + 1]) * std::sqrt(dr / 2.0));
  }
  std::mt19937_64 rng(0x5eedULL + static_cast<unsigned long long>(r));
  return solve_in_basis(v, a, beta, scale, starts, rng, 48);
}

D2Result extend_span_rank2(const HermitianMatrix& x, const std::array<HermitianMatrix, 4>& a,
                           const CVector& z) {
  for (const auto& ai : a) {
    if (ai.dim() != x.dim()) throw std::invalid_argument("extend_span_rank2: dimension mismatch");
  }
  if (z.size() != x.dim()) throw std::invalid_argument("extend_span_rank2: z has wrong size");
  D2Result out;
  const std::vector<CVector> p = psd_factorize(x);
  if (p.size() != 2) {
    if (p.size() >= 3) return decompose_d2(x, a);
    out.status = D2Status::RankTooLow;
    return out;
  }
  CMatrix v(x.dim(), 3);
  v.col(0) = p[0];
  v.col(1) = p[1];
  const HermitianMatrix xt(CMatrix(v.leftCols(2) * v.leftCols(2).adjoint()));
  const double trx = xt.trace();

  // Component of z outside Range(X).
  const Eigen::HouseholderQR<CMatrix> qr(v.leftCols(2));
  const CMatrix q = qr.householderQ() * CMatrix::Identity(x.dim(), 2);
  CVector zp = z - q * (q.adjoint() * z);
  if (zp.norm() <= 1e-8 * z.norm() || z.norm() == 0.0) {
    out.status = D2Status::Degenerate;
    return out;
  }
  v.col(2) = zp * (std::sqrt(trx / 2.0) / zp.norm());

  std::array<double, 4> beta{};
  bool all_zero_mats = true;
  for (std::size_t i = 0; i < 4; ++i) {
    beta[i] = trace_product(a[i], xt);
    if (a[i].frobenius_norm() > 0.0) all_zero_mats = false;
  }
  if (all_zero_mats) {
    out.status = D2Status::Success;
    out.x = p.front();
    return out;
  }
  const auto scale = d2_scales(a, beta, trx);
  const double s2 = std::sqrt(2.0);
  std::vector<CVector> starts;
  for (int k = 0; k < 3; ++k) {
    CVector u = CVector::Zero(3);
    u(k) = s2;
    starts.push_back(u);
  }
  CVector mix(3);
  mix << 1.0, cplx(0.0, 1.0), 1.0;
  starts.push_back(mix * (s2 / mix.norm()));
  std::mt19937_64 rng(0x2a2aULL);
  return solve_in_basis(v, a, beta, scale, starts, rng, 60);
}

CVector phase_rotate(const CVector& a, const CVector& a0) {
  const cplx c = a0.dot(a);
  if (std::abs(c) == 0.0) return a;
  return a * std::polar(1.0, -std::arg(c));
}

}  // namespace beamsim
