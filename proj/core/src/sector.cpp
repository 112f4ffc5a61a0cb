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

#include "beamsim/sector.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "beamsim/array_model.hpp"

namespace beamsim {

namespace {
constexpr double kDeg = std::numbers::pi / 180.0;
}

SectorModel build_sector_model(double theta_min, double theta_max, int n, double grid_step) {
  if (!(theta_min < theta_max)) throw std::invalid_argument("build_sector_model: empty sector");
  if (theta_min < -90.0 || theta_max > 90.0) throw std::invalid_argument("build_sector_model: sector outside [-90, 90]");
  if (!(grid_step > 0.0)) throw std::invalid_argument("build_sector_model: grid_step must be positive");
  const double cells = 180.0 / grid_step;
  const auto m = static_cast<long>(std::llround(cells));
  if (m < 2 || std::abs(cells - static_cast<double>(m)) > 1e-9 * cells) {
    throw std::invalid_argument("build_sector_model: grid_step must divide 180 degrees");
  }

  SectorModel out;
  out.theta_min = theta_min;
  out.theta_max = theta_max;
  out.grid_step = grid_step;
  out.n = n;
  const double w = grid_step * kDeg;
  CMatrix c = CMatrix::Zero(n, n);
  CMatrix ct = CMatrix::Zero(n, n);
  const double eps = 1e-9 * grid_step;
  for (long k = 0; k < m; ++k) {
    const double mid = -90.0 + (static_cast<double>(k) + 0.5) * grid_step;
    const CVector d = steering_vector(mid, n);
    if (mid >= theta_min - eps && mid <= theta_max + eps) {
      c.noalias() += w * d * d.adjoint();
      out.sector_grid.push_back(mid);
    } else {
      ct.noalias() += w * d * d.adjoint();
    }
  }
  if (out.sector_grid.empty()) throw std::invalid_argument("build_sector_model: sector narrower than one grid cell");
  const auto edges = static_cast<long>(std::floor((theta_max - theta_min) / grid_step + 1e-9));
  for (long j = 0; j <= edges; ++j) out.sector_grid.push_back(theta_min + static_cast<double>(j) * grid_step);
  out.sector_grid.push_back(theta_max);
  std::sort(out.sector_grid.begin(), out.sector_grid.end());
  out.sector_grid.erase(std::unique(out.sector_grid.begin(), out.sector_grid.end(),
                                    [&](double a, double b) { return std::abs(a - b) <= eps; }),
                        out.sector_grid.end());

  out.c = HermitianMatrix(c);
  out.c_tilde = HermitianMatrix(ct);
  out.delta0 = -std::numeric_limits<double>::infinity();
  out.delta1 = std::numeric_limits<double>::infinity();
  for (double th : out.sector_grid) {
    const CVector d = steering_vector(th, n);
    out.delta0 = std::max(out.delta0, out.c_tilde.quadratic_form(d));
    out.delta1 = std::min(out.delta1, out.c.quadratic_form(d));
  }
  out.a0 = steering_vector(0.5 * (theta_min + theta_max), n);
  return out;
}

HermitianMatrix UncertaintyModel::shape() const { return HermitianMatrix(CMatrix(q * q.adjoint())); }

bool UncertaintyModel::is_identity() const {
  return q.rows() == q.cols() && q.isApprox(CMatrix::Identity(q.rows(), q.cols()), 0.0);
}

void UncertaintyModel::validate() const {
  if (!(eta1 >= 0.0 && eta1 < 1.0)) throw std::invalid_argument("UncertaintyModel: eta1 must lie in [0, 1)");
  if (!(eta2 >= 0.0)) throw std::invalid_argument("UncertaintyModel: eta2 must be >= 0");
  if (!(epsilon > 0.0)) throw std::invalid_argument("UncertaintyModel: epsilon must be positive");
  if (q.rows() != a0.size()) throw std::invalid_argument("UncertaintyModel: Q and a0 sizes differ");
  if ((q.adjoint() * a0).norm() == 0.0) throw std::invalid_argument("UncertaintyModel: Q^H a0 vanishes");
}

UncertaintyModel build_similarity_model(const CVector& a0, double eta1, double eta2, double epsilon) {
  UncertaintyModel u;
  u.eta1 = eta1;
  u.eta2 = eta2;
  u.epsilon = epsilon;
  u.q = CMatrix::Identity(a0.size(), a0.size());
  u.a0 = a0;
  u.validate();
  return u;
}

UncertaintyModel build_similarity_model(const SectorModel& sector, double eta1, double eta2, double epsilon) {
  return build_similarity_model(sector.a0, eta1, eta2, epsilon);
}

std::vector<double> ellipsoid_angles(double theta_min, double theta_max, int l) {
  if (l < 2) throw std::invalid_argument("ellipsoid_angles: need at least two samples");
  std::vector<double> out(static_cast<std::size_t>(l));
  const double mid = 0.5 * (theta_min + theta_max);
  for (int i = 0; i < l; ++i) {
    out[static_cast<std::size_t>(i)] =
        mid + (-0.5 + static_cast<double>(i) / static_cast<double>(l - 1)) * (theta_max - theta_min);
  }
  return out;
}

UncertaintyModel build_ellipsoid_model(double theta_min, double theta_max, int n, int l, double ridge,
                                       double eta1, double eta2, double epsilon) {
  if (!(theta_min < theta_max)) throw std::invalid_argument("build_ellipsoid_model: empty sector");
  const auto angles = ellipsoid_angles(theta_min, theta_max, l);
  CMatrix a(n, l);
  for (int i = 0; i < l; ++i) a.col(i) = steering_vector(angles[static_cast<std::size_t>(i)], n);
  const CVector mean = a.rowwise().mean();
  const CMatrix centered = a.colwise() - mean;
  CMatrix p = centered * centered.adjoint() / static_cast<double>(l);
  p.diagonal().array() += ridge;
  p = HermitianMatrix(p).matrix();

  Eigen::LLT<CMatrix> pl(p);
  if (pl.info() != Eigen::Success) throw std::runtime_error("build_ellipsoid_model: P is not positive definite");
  const CMatrix pinv = HermitianMatrix(CMatrix(pl.solve(CMatrix::Identity(n, n)))).matrix();
  Eigen::LLT<CMatrix> ql(pinv);
  if (ql.info() != Eigen::Success) throw std::runtime_error("build_ellipsoid_model: P^{-1} is not positive definite");

  UncertaintyModel u;
  u.eta1 = eta1;
  u.eta2 = eta2;
  u.epsilon = epsilon;
  u.q = ql.matrixL();
  u.a0 = mean;
  u.validate();
  return u;
}

void dump_sector_model(std::ostream& os, const SectorModel& m, double curve_step) {
  os << std::setprecision(12);
  os << "# sector " << m.theta_min << " " << m.theta_max << " n " << m.n << " grid_step " << m.grid_step << "\n";
  os << "delta0 " << m.delta0 << "\n";
  os << "delta1 " << m.delta1 << "\n";
  os << "# theta_deg dH_C_d dH_Ctilde_d\n";
  const auto steps = static_cast<long>(std::llround(180.0 / curve_step));
  for (long k = 0; k <= steps; ++k) {
    const double th = -90.0 + static_cast<double>(k) * curve_step;
    const CVector d = steering_vector(std::clamp(th, -90.0, 90.0), m.n);
    os << th << " " << m.c.quadratic_form(d) << " " << m.c_tilde.quadratic_form(d) << "\n";
  }
}

}  // namespace beamsim
