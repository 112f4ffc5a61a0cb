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

#include "beamsim/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "ipm.hpp"

namespace beamsim {

std::string_view to_string(SdpStatus s) {
  switch (s) {
    case SdpStatus::Optimal: return "Optimal";
    case SdpStatus::Infeasible: return "Infeasible";
    case SdpStatus::Unbounded: return "Unbounded";
    case SdpStatus::NumericalTrouble: return "NumericalTrouble";
  }
  return "Unknown";
}

void SdpProblem::validate() const {
  const Eigen::Index n = objective.dim();
  if (n == 0) throw std::invalid_argument("SdpProblem: empty objective");
  for (const auto& c : constraints) {
    if (c.matrix.dim() != n) throw std::invalid_argument("SdpProblem: constraint dimension mismatch");
    if (!std::isfinite(c.rhs)) throw std::invalid_argument("SdpProblem: non-finite right-hand side");
  }
}

SdpSolution solve_sdp(const SdpProblem& problem, const SdpTolerances& tol) {
  problem.validate();
  const Eigen::Index n = problem.dim();

  // Constraints with a zero matrix are either vacuous or make the program infeasible.
  std::vector<std::size_t> active;
  bool trivially_infeasible = false;
  for (std::size_t i = 0; i < problem.constraints.size(); ++i) {
    const auto& c = problem.constraints[i];
    if (c.matrix.frobenius_norm() > 0.0) {
      active.push_back(i);
      continue;
    }
    const bool ok = (c.sense == Sense::LessEqual && c.rhs >= 0.0) ||
                    (c.sense == Sense::GreaterEqual && c.rhs <= 0.0) ||
                    (c.sense == Sense::Equal && c.rhs == 0.0);
    if (!ok) trivially_infeasible = true;
  }

  detail::RealSdp real;
  real.c = 0.5 * real_embedding(problem.objective);
  real.b.resize(static_cast<Eigen::Index>(active.size()));
  std::vector<double> sign;
  for (std::size_t k : active) {
    const auto& c = problem.constraints[k];
    // ">=" rows are negated into "<=" rows so every inequality takes a slack with +1.
    const double sg = c.sense == Sense::GreaterEqual ? -1.0 : 1.0;
    sign.push_back(sg);
    real.a.push_back(sg * 0.5 * real_embedding(c.matrix));
    real.b(static_cast<Eigen::Index>(real.a.size()) - 1) = sg * c.rhs;
    real.slack.push_back(c.sense == Sense::Equal ? -1 : real.n_slack++);
  }

  detail::IpmResult r;
  if (trivially_infeasible) {
    r.status = detail::IpmStatus::Infeasible;
    r.x = RMatrix::Zero(2 * n, 2 * n);
    r.y = RVector::Zero(static_cast<Eigen::Index>(active.size()));
  } else {
    const double target = std::min({1e-12, 1e-3 * tol.feas_tol, 1e-3 * tol.gap_tol});
    r = detail::solve_real_sdp(real, tol.max_iterations, target);
  }

  SdpSolution sol;
  sol.iterations = r.iterations;
  sol.primal = from_real_embedding(r.x);
  sol.objective_value = trace_product(problem.objective, sol.primal);

  std::vector<double> duals(problem.constraints.size(), 0.0);
  for (std::size_t k = 0; k < active.size(); ++k) {
    duals[active[k]] = sign[k] * r.y(static_cast<Eigen::Index>(k));
  }
  double dobj = 0.0;
  double viol = 0.0;
  for (std::size_t i = 0; i < problem.constraints.size(); ++i) {
    const auto& c = problem.constraints[i];
    dobj += c.rhs * duals[i];
    const double v = trace_product(c.matrix, sol.primal) - c.rhs;
    switch (c.sense) {
      case Sense::LessEqual: viol = std::max(viol, v); break;
      case Sense::GreaterEqual: viol = std::max(viol, -v); break;
      case Sense::Equal: viol = std::max(viol, std::abs(v)); break;
    }
  }
  sol.duals = std::move(duals);
  sol.dual_objective = dobj;
  sol.max_violation = viol;
  sol.duality_gap = std::abs(sol.objective_value - dobj) /
                    (1.0 + std::abs(sol.objective_value) + std::abs(dobj));

  if (r.status == detail::IpmStatus::Infeasible) {
    sol.status = SdpStatus::Infeasible;
  } else if (r.status == detail::IpmStatus::Unbounded) {
    sol.status = SdpStatus::Unbounded;
  } else if (sol.max_violation <= tol.feas_tol && sol.duality_gap <= tol.gap_tol) {
    sol.status = SdpStatus::Optimal;
  } else {
    sol.status = SdpStatus::NumericalTrouble;
  }

  Eigen::SelfAdjointEigenSolver<CMatrix> es(sol.primal.matrix());
  sol.eigenvalues = es.eigenvalues();
  sol.eigenvectors = es.eigenvectors();
  sol.numerical_rank = numerical_rank(sol.primal);
  return sol;
}

int numerical_rank(const HermitianMatrix& y, double tol_fraction) {
  const RVector ev = y.eigenvalues();
  if (ev.size() == 0) return 0;
  const double lmax = ev.maxCoeff();
  if (!(lmax > 0.0)) return 0;
  return static_cast<int>((ev.array() > tol_fraction * lmax).count());
}

std::vector<CVector> psd_factorize(const HermitianMatrix& y, double tol_fraction) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(y.matrix());
  const RVector& ev = es.eigenvalues();
  std::vector<CVector> out;
  if (ev.size() == 0) return out;
  const double lmax = ev.maxCoeff();
  if (ev.minCoeff() < -1e-8 * std::max(1.0, std::abs(lmax))) {
    throw std::domain_error("psd_factorize: matrix has a negative eigenvalue beyond tolerance");
  }
  if (!(lmax > 0.0)) return out;
  for (Eigen::Index k = ev.size() - 1; k >= 0; --k) {
    if (ev(k) <= tol_fraction * lmax) break;
    CVector v = es.eigenvectors().col(k);
    Eigen::Index imax = 0;
    v.cwiseAbs().maxCoeff(&imax);
    v *= std::polar(1.0, -std::arg(v(imax)));
    out.push_back(std::sqrt(ev(k)) * v);
  }
  return out;
}

}  // namespace beamsim
