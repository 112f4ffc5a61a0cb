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
#include <numbers>
#include <sstream>

#include "catch_amalgamated.hpp"

#include "beamsim/array_model.hpp"
#include "beamsim/sector.hpp"
#include "support/support.hpp"

using namespace beamsim;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

// closed form of the full-range integral: pi J0(pi (m - n))
CMatrix full_range_integral(int n) {
  CMatrix f(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) f(i, j) = std::numbers::pi * std::cyl_bessel_j(0.0, std::numbers::pi * std::abs(i - j));
  return f;
}

}  // namespace

TEST_CASE("full range leaves an empty complement", "[sector]") {
  const SectorModel m = build_sector_model(-90.0, 90.0, 6);
  CHECK(m.c_tilde.frobenius_norm() == 0.0);
  CHECK(m.delta0 == 0.0);
}

TEST_CASE("diagonal of C is the sector width", "[sector]") {
  for (auto [lo, hi] : {std::pair{0.0, 10.0}, std::pair{50.0, 60.0}, std::pair{-30.0, 12.5}}) {
    const SectorModel m = build_sector_model(lo, hi, 8);
    for (int k = 0; k < 8; ++k) CHECK_THAT(m.c(k, k).real(), WithinAbs((hi - lo) * kDeg, 1e-12));
    CHECK_THAT(m.c_tilde(0, 0).real(), WithinAbs((180.0 - (hi - lo)) * kDeg, 1e-12));
  }
}

TEST_CASE("C + C~ matches the full-range integral", "[sector]") {
  const SectorModel m = build_sector_model(0.0, 10.0, 12);
  const CMatrix sum = m.c.matrix() + m.c_tilde.matrix();
  CHECK((sum - full_range_integral(12)).norm() < 1e-9);
}

TEST_CASE("PSD and positivity", "[sector]") {
  const SectorModel m = build_sector_model(0.0, 10.0, 12);
  CHECK(m.c.eigenvalues().minCoeff() > -1e-12);
  CHECK(m.c_tilde.eigenvalues().minCoeff() > -1e-12);
  CHECK(m.delta0 > 0.0);
  CHECK(m.delta1 > 0.0);
  CHECK((m.a0 - steering_vector(5.0, 12)).norm() == 0.0);
}

TEST_CASE("benchmark lines on the sector grid", "[sector]") {
  const SectorModel m = build_sector_model(0.0, 10.0, 12, 0.1);
  double hi0 = -1.0, lo1 = 1e300;
  for (double th : m.sector_grid) {
    CHECK(th >= 0.0);
    CHECK(th <= 10.0);
    const CVector d = steering_vector(th, 12);
    CHECK(m.c_tilde.quadratic_form(d) <= m.delta0);
    CHECK(m.c.quadratic_form(d) >= m.delta1);
    hi0 = std::max(hi0, m.c_tilde.quadratic_form(d));
    lo1 = std::min(lo1, m.c.quadratic_form(d));
  }
  // extrema are attained inside the sector
  CHECK(hi0 == m.delta0);
  CHECK(lo1 == m.delta1);
  for (double th : {-15.0, 15.0}) {
    const CVector d = steering_vector(th, 12);
    CHECK(m.c_tilde.quadratic_form(d) > m.delta0);
    CHECK(m.c.quadratic_form(d) < m.delta1);
  }
}

TEST_CASE("benchmark lines converge when the step is halved", "[sector]") {
  const SectorModel a = build_sector_model(0.0, 10.0, 12, 0.1);
  const SectorModel b = build_sector_model(0.0, 10.0, 12, 0.05);
  CHECK_THAT(b.delta0, WithinRel(a.delta0, 1e-3));
  CHECK_THAT(b.delta1, WithinRel(a.delta1, 1e-3));
}

TEST_CASE("rescaling C~ and delta0 keeps the feasible set", "[sector]") {
  const SectorModel m = build_sector_model(0.0, 10.0, 12);
  const double kappa = 1.0 / kDeg;  // degree measure instead of radians
  const HermitianMatrix ct = kappa * m.c_tilde;
  Rng rng(3);
  int agree = 0;
  for (int t = 0; t < 2000; ++t) {
    CVector a = steering_vector(-20.0 + 0.02 * t, 12) + 0.05 * testing::random_vector(12, rng);
    const bool in1 = m.c_tilde.quadratic_form(a) <= m.delta0;
    const bool in2 = ct.quadratic_form(a) <= kappa * m.delta0;
    agree += in1 == in2;
  }
  CHECK(agree == 2000);
}

TEST_CASE("sector model errors", "[sector]") {
  CHECK_THROWS_AS(build_sector_model(10.0, 0.0, 12), std::invalid_argument);
  CHECK_THROWS_AS(build_sector_model(0.0, 100.0, 12), std::invalid_argument);
  CHECK_THROWS_AS(build_sector_model(0.0, 10.0, 12, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(build_sector_model(0.0, 10.0, 12, 0.7), std::invalid_argument);
  CHECK_THROWS_AS(build_sector_model(0.0, 0.01, 12, 0.1), std::invalid_argument);
}

TEST_CASE("similarity model", "[sector]") {
  const SectorModel m = build_sector_model(0.0, 10.0, 12);
  const UncertaintyModel u = build_similarity_model(m, 0.5, 0.5, 0.3 * 12);
  CHECK(u.is_identity());
  CHECK(u.a0 == m.a0);
  CHECK(u.epsilon == 0.3 * 12);
  CHECK_THROWS_AS(build_similarity_model(m, 0.5, 0.5, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(build_similarity_model(m, 1.0, 0.5, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(build_similarity_model(m, 0.5, -0.1, 1.0), std::invalid_argument);
  CHECK_NOTHROW(build_similarity_model(m, 0.0, 0.0, 1.0));
}

TEST_CASE("ellipsoid model with two samples", "[sector]") {
  const auto ang = ellipsoid_angles(0.0, 10.0, 2);
  REQUIRE(ang.size() == 2);
  CHECK(ang[0] == 0.0);
  CHECK(ang[1] == 10.0);
  const UncertaintyModel u = build_ellipsoid_model(0.0, 10.0, 6, 2, 0.1, 0.5, 0.5, 2.7);
  const CVector d1 = steering_vector(0.0, 6), d2 = steering_vector(10.0, 6);
  const CVector mean = 0.5 * (d1 + d2);
  CHECK((u.a0 - mean).norm() < 1e-14);
  const CMatrix p = 0.1 * CMatrix::Identity(6, 6) +
                    0.5 * ((d1 - mean) * (d1 - mean).adjoint() + (d2 - mean) * (d2 - mean).adjoint());
  CHECK((u.shape().matrix() * p - CMatrix::Identity(6, 6)).norm() < 1e-8);
  CHECK_FALSE(u.is_identity());
}

TEST_CASE("ellipsoid models of the built-in examples", "[sector]") {
  for (auto [lo, hi, l] : {std::tuple{0.0, 10.0, 100}, std::tuple{50.0, 60.0, 64}}) {
    const UncertaintyModel u = build_ellipsoid_model(lo, hi, 12, l, 0.1, 0.5, 0.5, 0.45 * 12);
    const auto ang = ellipsoid_angles(lo, hi, l);
    CHECK_THAT(ang.front(), WithinAbs(lo, 1e-12));
    CHECK_THAT(ang.back(), WithinAbs(hi, 1e-12));
    CMatrix s(12, l);
    for (int i = 0; i < l; ++i) s.col(i) = steering_vector(ang[static_cast<std::size_t>(i)], 12);
    const CVector mean = s.rowwise().mean();
    const CMatrix c = s.colwise() - mean;
    const CMatrix p = c * c.adjoint() / static_cast<double>(l) + 0.1 * CMatrix::Identity(12, 12);
    CHECK((u.a0 - mean).norm() < 1e-12);
    CHECK((u.shape().matrix() * p - CMatrix::Identity(12, 12)).norm() < 1e-8);
    CHECK((u.q.adjoint() * u.a0).norm() > 0.0);
  }
  CHECK_THROWS(ellipsoid_angles(0.0, 10.0, 1));
}

TEST_CASE("text dump", "[sector]") {
  const SectorModel m = build_sector_model(0.0, 10.0, 4);
  std::ostringstream os;
  dump_sector_model(os, m, 1.0);
  const std::string s = os.str();
  CHECK(s.find("delta0 ") != std::string::npos);
  CHECK(s.find("delta1 ") != std::string::npos);
  int rows = 0;
  std::istringstream is(s);
  std::string line;
  while (std::getline(is, line)) rows += !line.empty() && line[0] != '#' && line.rfind("delta", 0) != 0;
  CHECK(rows == 181);
}
