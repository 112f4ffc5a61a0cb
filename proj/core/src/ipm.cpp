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

#include "ipm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

namespace beamsim::detail {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

constexpr double kInf = std::numeric_limits<double>::infinity();

MatrixXd sym(const MatrixXd& m) { return 0.5 * (m + m.transpose()); }

// Largest alpha with X + alpha dX still PSD (kInf when unbounded).
double max_step_psd(const MatrixXd& x, const MatrixXd& dx) {
  Eigen::LLT<MatrixXd> llt(x);
  if (llt.info() != Eigen::Success) return 0.0;
  const MatrixXd l = llt.matrixL();
  MatrixXd w = l.triangularView<Eigen::Lower>().solve(dx);
  w = l.triangularView<Eigen::Lower>().solve(MatrixXd(w.transpose()));
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(sym(w), Eigen::EigenvaluesOnly);
  const double lmin = es.eigenvalues()(0);
  return lmin < 0.0 ? -1.0 / lmin : kInf;
}

double max_step_lp(const VectorXd& x, const VectorXd& dx) {
  double step = kInf;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (dx(i) < 0.0) step = std::min(step, -x(i) / dx(i));
  }
  return step;
}

struct Iterate {
  MatrixXd x;
  VectorXd xl;
  VectorXd y;
  MatrixXd s;
  VectorXd sl;
};

struct Direction {
  MatrixXd dx;
  VectorXd dxl;
  VectorXd dy;
  MatrixXd ds;
  VectorXd dsl;
};

class Solver {
 public:
  explicit Solver(const RealSdp& p) : n_(p.c.rows()), m_(static_cast<int>(p.a.size())), nl_(p.n_slack) {
    a_.resize(m_);
    b_.resize(m_);
    coef_ = VectorXd::Zero(m_);
    slack_ = p.slack;
    rownorm_.resize(m_);
    for (int i = 0; i < m_; ++i) {
      double s2 = p.a[i].squaredNorm() + (slack_[i] >= 0 ? 1.0 : 0.0);
      double nrm = s2 > 0.0 ? std::sqrt(s2) : 1.0;
      rownorm_(i) = nrm;
      a_[i] = p.a[i] / nrm;
      b_(i) = p.b(i) / nrm;
      if (slack_[i] >= 0) coef_(i) = 1.0 / nrm;
    }
    const double cn = p.c.norm();
    cscale_ = cn > 0.0 ? cn : 1.0;
    c_ = p.c / cscale_;
  }

  IpmResult run(int max_iterations, double target) {
    Iterate it = initial_point();
    Iterate best = it;
    double best_err = kInf;
    IpmResult out;
    out.status = IpmStatus::MaxIterations;
    int small_steps = 0;

    for (int k = 0; k < max_iterations; ++k) {
      out.iterations = k;
      const VectorXd rp = b_ - apply_a(it.x, it.xl);
      MatrixXd aty;
      VectorXd atyl;
      apply_at(it.y, aty, atyl);
      const MatrixXd rd = c_ - aty - it.s;
      const VectorXd rdl = -atyl - it.sl;
      const double ntot = static_cast<double>(n_ + nl_);
      const double mu = ((it.x.array() * it.s.array()).sum() + it.xl.dot(it.sl)) / ntot;
      const double pobj = (c_.array() * it.x.array()).sum();
      const double dobj = b_.dot(it.y);
      const double pinf = rp.norm() / (1.0 + b_.norm());
      const double dinf = std::sqrt(rd.squaredNorm() + rdl.squaredNorm()) / (1.0 + c_.norm());
      const double gap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj) + std::abs(dobj));
      const double err = std::max({pinf, dinf, gap});
      if (err < best_err) {
        best_err = err;
        best = it;
        out.pinf = pinf;
        out.dinf = dinf;
        out.gap = gap;
      }
      if (err < target) {
        out.status = IpmStatus::Converged;
        break;
      }
      if (primal_infeasible(it, dobj)) {
        out.status = IpmStatus::Infeasible;
        best = it;
        break;
      }
      if (dual_infeasible(it, pobj)) {
        out.status = IpmStatus::Unbounded;
        best = it;
        break;
      }

      Eigen::LLT<MatrixXd> sllt(it.s);
      if (sllt.info() != Eigen::Success) {
        out.status = IpmStatus::Breakdown;
        break;
      }
      const MatrixXd sinv = sym(sllt.solve(MatrixXd::Identity(n_, n_)));
      const VectorXd dl = it.xl.cwiseQuotient(it.sl);
      MatrixXd schur(m_, m_);
      for (int j = 0; j < m_; ++j) {
        const MatrixXd g = it.x * a_[j] * sinv;
        for (int i = 0; i < m_; ++i) schur(i, j) = (a_[i].array() * g.array()).sum();
      }
      for (int i = 0; i < m_; ++i) {
        for (int j = 0; j < m_; ++j) {
          if (slack_[i] >= 0 && slack_[i] == slack_[j]) schur(i, j) += coef_(i) * coef_(j) * dl(slack_[i]);
        }
      }
      schur = sym(schur);
      Eigen::LDLT<MatrixXd> factor(schur);
      if (factor.info() != Eigen::Success) {
        out.status = IpmStatus::Breakdown;
        break;
      }
      const MatrixXd xrdsinv = it.x * rd * sinv;

      auto solve_direction = [&](const MatrixXd& gm, const VectorXd& gl) {
        Direction d;
        VectorXd rhs = rp;
        for (int i = 0; i < m_; ++i) {
          rhs(i) -= (a_[i].array() * (gm - xrdsinv).array()).sum();
          if (slack_[i] >= 0) {
            const int q = slack_[i];
            rhs(i) -= coef_(i) * (gl(q) - it.xl(q) * rdl(q) / it.sl(q));
          }
        }
        d.dy = factor.solve(rhs);
        MatrixXd atdy;
        VectorXd atdyl;
        apply_at(d.dy, atdy, atdyl);
        d.ds = rd - atdy;
        d.dx = sym(gm - it.x * d.ds * sinv);
        d.dsl = rdl - atdyl;
        d.dxl = gl - it.xl.cwiseProduct(d.dsl).cwiseQuotient(it.sl);
        return d;
      };

      // Predictor.
      const Direction aff = solve_direction(-it.x, -it.xl);
      const double ap_aff = std::min(1.0, std::min(max_step_psd(it.x, aff.dx), max_step_lp(it.xl, aff.dxl)));
      const double ad_aff = std::min(1.0, std::min(max_step_psd(it.s, aff.ds), max_step_lp(it.sl, aff.dsl)));
      const double mu_aff =
          (((it.x + ap_aff * aff.dx).array() * (it.s + ad_aff * aff.ds).array()).sum() +
           (it.xl + ap_aff * aff.dxl).dot(it.sl + ad_aff * aff.dsl)) /
          ntot;
      const double ratio = std::clamp(mu_aff / mu, 0.0, 1.0);
      const double expon = std::max(1.0, 3.0 * std::min(ap_aff, ad_aff) * std::min(ap_aff, ad_aff));
      const double sigma = std::pow(ratio, expon);

      // Corrector.
      const MatrixXd gm = sigma * mu * sinv - it.x - aff.dx * aff.ds * sinv;
      VectorXd gl(nl_);
      for (int q = 0; q < nl_; ++q) gl(q) = sigma * mu / it.sl(q) - it.xl(q) - aff.dxl(q) * aff.dsl(q) / it.sl(q);
      const Direction d = solve_direction(gm, gl);

      const double gamma = 0.9 + 0.09 * std::min(ap_aff, ad_aff);
      const double ap = std::min(1.0, gamma * std::min(max_step_psd(it.x, d.dx), max_step_lp(it.xl, d.dxl)));
      const double ad = std::min(1.0, gamma * std::min(max_step_psd(it.s, d.ds), max_step_lp(it.sl, d.dsl)));
      if (!(ap > 0.0) || !(ad > 0.0) || !std::isfinite(ap) || !std::isfinite(ad)) {
        out.status = IpmStatus::Breakdown;
        break;
      }
      it.x = sym(it.x + ap * d.dx);
      it.xl += ap * d.dxl;
      it.y += ad * d.dy;
      it.s = sym(it.s + ad * d.ds);
      it.sl += ad * d.dsl;

      small_steps = (ap < 1e-9 && ad < 1e-9) ? small_steps + 1 : 0;
      if (small_steps >= 3) {
        out.status = IpmStatus::Stalled;
        break;
      }
    }

    out.x = best.x;
    out.xl = best.xl;
    out.s = best.s * cscale_;
    out.sl = best.sl * cscale_;
    out.y = best.y.cwiseQuotient(rownorm_) * cscale_;
    return out;
  }

 private:
  Iterate initial_point() const {
    const double dn = static_cast<double>(n_);
    double bterm = 0.0;
    double amax = 0.0;
    for (int i = 0; i < m_; ++i) {
      const double an = a_[i].norm();
      amax = std::max(amax, an);
      bterm = std::max(bterm, (1.0 + std::abs(b_(i))) / (1.0 + an));
    }
    const double xi = std::max({10.0, std::sqrt(dn), dn * bterm});
    const double eta = std::max({10.0, std::sqrt(dn), amax, c_.norm()});
    Iterate it;
    it.x = xi * MatrixXd::Identity(n_, n_);
    it.s = eta * MatrixXd::Identity(n_, n_);
    it.xl = VectorXd::Constant(nl_, xi);
    it.sl = VectorXd::Constant(nl_, eta);
    it.y = VectorXd::Zero(m_);
    return it;
  }

  VectorXd apply_a(const MatrixXd& x, const VectorXd& xl) const {
    VectorXd r(m_);
    for (int i = 0; i < m_; ++i) {
      r(i) = (a_[i].array() * x.array()).sum();
      if (slack_[i] >= 0) r(i) += coef_(i) * xl(slack_[i]);
    }
    return r;
  }

  void apply_at(const VectorXd& y, MatrixXd& out, VectorXd& outl) const {
    out = MatrixXd::Zero(n_, n_);
    outl = VectorXd::Zero(nl_);
    for (int i = 0; i < m_; ++i) {
      out += y(i) * a_[i];
      if (slack_[i] >= 0) outl(slack_[i]) += coef_(i) * y(i);
    }
  }

  // Farkas ray: b^T y > 0 with -A^T y PSD (up to 1e-8) proves {X : A(X) = b} ∩ PSD empty.
  bool primal_infeasible(const Iterate& it, double dobj) const {
    if (!(dobj > 1e3)) return false;
    MatrixXd z;
    VectorXd zl;
    apply_at(it.y / dobj, z, zl);
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(sym(z), Eigen::EigenvaluesOnly);
    const double zmax = es.eigenvalues().maxCoeff();
    const double zlmax = nl_ > 0 ? zl.maxCoeff() : -kInf;
    return zmax <= 1e-8 && zlmax <= 1e-8;
  }

  // Improving ray: <C, X> < 0 with A(X) ~ 0 and X PSD.
  bool dual_infeasible(const Iterate& it, double pobj) const {
    if (!(pobj < -1e3)) return false;
    const VectorXd r = apply_a(it.x / -pobj, it.xl / -pobj);
    return r.norm() <= 1e-8;
  }

  int n_;
  int m_;
  int nl_;
  std::vector<MatrixXd> a_;
  VectorXd b_;
  VectorXd coef_;
  std::vector<int> slack_;
  VectorXd rownorm_;
  MatrixXd c_;
  double cscale_ = 1.0;
};

}  // namespace

IpmResult solve_real_sdp(const RealSdp& problem, int max_iterations, double target) {
  Solver solver(problem);
  return solver.run(max_iterations, target);
}

}  // namespace beamsim::detail
