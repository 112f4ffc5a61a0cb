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

#include <cmath>

#include "catch_amalgamated.hpp"

#include "beamsim/array_model.hpp"
#include "beamsim/beamformer.hpp"
#include "support/support.hpp"

using namespace beamsim;
using Catch::Matchers::WithinAbs;

TEST_CASE("MVDR weight examples", "[beamformer]") {
  const CVector a = steering_vector(7.0, 12);
  const CVector w = mvdr_weights(HermitianMatrix::identity(12), a);
  CHECK((w - a / 12.0).norm() < 1e-14);
  CHECK_THAT(output_power(HermitianMatrix::identity(12), a), WithinAbs(1.0 / 12.0, 1e-15));

  RVector d(2);
  d << 1.0, 2.0;
  CVector ones = CVector::Ones(2);
  const CVector w2 = mvdr_weights(HermitianMatrix::diagonal(d), ones);
  CHECK(std::abs(w2(0) - 2.0 / 3.0) < 1e-15);
  CHECK(std::abs(w2(1) - 1.0 / 3.0) < 1e-15);

  CHECK_THROWS(mvdr_weights(HermitianMatrix::zero(2), ones));
}

TEST_CASE("MVDR identities on random instances", "[beamformer]") {
  Rng rng(10);
  for (int t = 0; t < 200; ++t) {
    const Eigen::Index n = 3 + t % 10;
    const HermitianMatrix r = testing::random_psd(n, n + 2, rng);
    const CVector a = testing::random_vector(n, rng);
    const CVector w = mvdr_weights(r, a);
    CHECK(std::abs(w.dot(a) - 1.0) < 1e-10);
    const double p = output_power(r, a);
    CHECK(std::abs(p - r.quadratic_form(w)) <= 1e-10 * p);
    CHECK_THAT(output_power(3.0 * r, a), WithinAbs(3.0 * p, 1e-10 * p));
  }
}

TEST_CASE("output SINR", "[beamformer]") {
  ScenarioConfig cfg;
  cfg.interferers = {{-15.0, 30.0}, {15.0, 30.0}};
  const HermitianMatrix rin = interference_plus_noise_cov(cfg);
  const CVector a = steering_vector(7.0, 12);
  const double ps = 1000.0;
  const double opt = optimal_sinr(a, ps, rin);
  const CVector wopt = rin.matrix().ldlt().solve(a);
  CHECK_THAT(output_sinr(wopt, a, ps, rin), WithinAbs(opt, 1e-9 * opt));
  CHECK_THAT(output_sinr(wopt * cplx(-2.0, 0.5), a, ps, rin), WithinAbs(opt, 1e-9 * opt));

  // orthogonal to the true response
  CVector w = CVector::Zero(12);
  w(0) = std::conj(a(1));
  w(1) = -std::conj(a(0));
  CHECK(output_sinr(w, a, ps, rin) < 1e-20);

  Rng rng(5);
  for (int t = 0; t < 500; ++t) CHECK(output_sinr(testing::random_vector(12, rng), a, ps, rin) <= opt + 1e-9);
  CHECK(to_db(100.0) == 20.0);
}

TEST_CASE("evaluate_beamformer", "[beamformer]") {
  Rng rng(6);
  const HermitianMatrix r = testing::random_psd(6, 10, rng);
  ScenarioConfig cfg;
  cfg.n_elements = 6;
  cfg.interferers = {{30.0, 20.0}};
  const HermitianMatrix rin = interference_plus_noise_cov(cfg);
  const CVector est = steering_vector(4.0, 6);
  const CVector tru = steering_vector(6.0, 6);
  const BeamformerOutput o = evaluate_beamformer(r, est, tru, 10.0, rin);
  CHECK((o.weights - mvdr_weights(r, est)).norm() < 1e-14);
  CHECK_THAT(o.output_power_db, WithinAbs(10.0 * std::log10(output_power(r, est)), 1e-12));
  CHECK_THAT(o.output_sinr_db, WithinAbs(10.0 * std::log10(output_sinr(o.weights, tru, 10.0, rin)), 1e-12));
}
