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

#include "support.hpp"

#include <algorithm>
#include <numbers>
#include <random>

namespace beamsim::testing {

CVector random_vector(Eigen::Index n, Rng& rng) { return complex_gaussian(n, 1.0, rng); }

HermitianMatrix random_hermitian(Eigen::Index n, Rng& rng) {
  CMatrix g(n, n);
  for (Eigen::Index k = 0; k < n; ++k) g.col(k) = complex_gaussian(n, 1.0, rng);
  return HermitianMatrix(CMatrix(0.5 * (g + g.adjoint())));
}

HermitianMatrix random_psd(Eigen::Index n, Eigen::Index rank, Rng& rng) {
  CMatrix g(n, rank);
  for (Eigen::Index k = 0; k < rank; ++k) g.col(k) = complex_gaussian(n, 1.0, rng);
  return HermitianMatrix(CMatrix(g * g.adjoint()));
}

Draw example_draw(const ExampleSetup& setup, double snr_db, std::uint64_t seed, std::uint64_t run) {
  ScenarioConfig cfg = setup.scenario;
  cfg.snr_db = snr_db;
  Rng rng = run_rng(seed, run);
  Draw d;
  d.block = generate_snapshots(cfg, rng);
  d.r_hat = sample_covariance(d.block.samples);
  return d;
}

SmallInstance small_instance(int n, Rng& rng) {
  std::uniform_int_distribution<int> lo(-40, 30);
  std::uniform_int_distribution<int> half_width(3, 10);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  SmallInstance s;
  s.cfg.n_elements = n;
  s.cfg.theta_min = lo(rng);
  s.cfg.theta_max = s.cfg.theta_min + 2 * half_width(rng);
  s.cfg.presumed_direction = 0.5 * (s.cfg.theta_min + s.cfg.theta_max);
  s.cfg.actual_direction = s.cfg.theta_min + u(rng) * (s.cfg.theta_max - s.cfg.theta_min);
  const double side = u(rng) < 0.5 ? -1.0 : 1.0;
  const double edge = side < 0 ? s.cfg.theta_min : s.cfg.theta_max;
  s.cfg.interferers = {{std::clamp(edge + side * (15.0 + 30.0 * u(rng)), -89.0, 89.0), 10.0 + 20.0 * u(rng)}};
  s.cfg.snr_db = -5.0 + 25.0 * u(rng);
  s.cfg.snapshots = 2 * n + static_cast<int>(u(rng) * 8 * n);
  s.sector = build_sector_model(s.cfg.theta_min, s.cfg.theta_max, n);
  const SnapshotBlock b = generate_snapshots(s.cfg, rng);
  s.r_hat = sample_covariance(b.samples);
  return s;
}

oracle::QcqpSpec oracle_spec(Problem p, const SectorModel& sector, const HermitianMatrix& r_hat, double eta1,
                             double eta2, double epsilon) {
  const Eigen::Index n = r_hat.dim();
  oracle::QcqpSpec s;
  const CMatrix inv = r_hat.matrix().inverse();
  s.objective = 0.5 * (inv + inv.adjoint());
  const bool use_c = p == Problem::KvhVariant || p == Problem::Alg3;
  s.sector = use_c ? sector.c.matrix() : sector.c_tilde.matrix();
  s.sector_rhs = use_c ? sector.delta1 : sector.delta0;
  s.sector_upper = !use_c;
  const double nn = static_cast<double>(n);
  const bool ball = p == Problem::Alg1 || p == Problem::Alg3;
  s.norm_min = ball ? (1.0 - eta1) * nn : nn;
  s.norm_max = ball ? (1.0 + eta2) * nn : nn;
  s.has_ball = ball;
  s.shape = CMatrix::Identity(n, n);
  // own centre response rather than the library's
  s.a0 = CVector(n);
  const double c = 0.5 * (sector.theta_min + sector.theta_max) * std::numbers::pi / 180.0;
  for (Eigen::Index k = 0; k < n; ++k) s.a0(k) = std::polar(1.0, std::numbers::pi * static_cast<double>(k) * std::sin(c));
  s.epsilon = epsilon;
  s.anchor = s.a0;
  s.theta_min = sector.theta_min;
  s.theta_max = sector.theta_max;
  return s;
}

}  // namespace beamsim::testing
