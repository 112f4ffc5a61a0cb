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

#include "beamsim/beamformer.hpp"
#include "beamsim/estimators.hpp"
#include "beamsim/experiments.hpp"
#include "oracles/oracles.hpp"
#include "support/support.hpp"

using namespace beamsim;
using Catch::Matchers::WithinAbs;

namespace {

double rel_gap(const EstimateResult& e) { return std::abs(e.gap()) / std::max(1.0, std::abs(e.sdp_value)); }

oracle::QcqpSpec ellipsoid_spec(const SectorModel& s, bool use_c, const HermitianMatrix& r_hat,
                                const UncertaintyModel& u) {
  const Eigen::Index n = r_hat.dim();
  oracle::QcqpSpec o = testing::oracle_spec(use_c ? testing::Problem::Alg3 : testing::Problem::Alg1, s, r_hat,
                                            u.eta1, u.eta2, u.epsilon);
  o.shape = u.q * u.q.adjoint();
  o.a0 = u.a0;
  o.anchor = u.a0 * std::sqrt(static_cast<double>(n)) / u.a0.norm();
  return o;
}

struct Ex {
  ExampleSetup setup;
  SweepModels models;
  explicit Ex(int id) : setup(builtin_example(id)), models(build_models(setup)) {}
};

}  // namespace

TEST_CASE("identity covariance", "[estimators]") {
  const SectorModel s = build_sector_model(0.0, 10.0, 12);
  const HermitianMatrix id = HermitianMatrix::identity(12);
  const EstimateResult k = solve_kvh(id, s);
  CHECK(k.certificate == Certificate::GloballyOptimal);
  CHECK_THAT(k.achieved_value, WithinAbs(12.0, 1e-6));
  const EstimateResult v = solve_kvh_variant(id, s);
  CHECK(v.certificate == Certificate::GloballyOptimal);
  CHECK_THAT(v.achieved_value, WithinAbs(12.0, 1e-6));
  CHECK(v.max_violation <= 1e-7);
}

TEST_CASE("example 1 draws are certified for the D1 solvers", "[estimators]") {
  const Ex ex(1);
  for (int run = 0; run < 4; ++run) {
    const auto d = testing::example_draw(ex.setup, 10.0 * run, 5, static_cast<std::uint64_t>(run));
    const std::pair<testing::Problem, EstimateResult> cases[] = {
        {testing::Problem::Kvh, solve_kvh(d.r_hat, ex.models.sector)},
        {testing::Problem::KvhVariant, solve_kvh_variant(d.r_hat, ex.models.sector)},
        {testing::Problem::Alg1, solve_alg1(d.r_hat, ex.models.sector, ex.models.similarity)},
        {testing::Problem::Alg3, solve_alg3(d.r_hat, ex.models.sector, ex.models.similarity)}};
    for (const auto& [prob, e] : cases) {
      INFO("run " << run << " problem " << static_cast<int>(prob));
      CHECK(e.certificate == Certificate::GloballyOptimal);
      CHECK(e.branch == Branch::D1Extraction);
      CHECK(rel_gap(e) <= 1e-6);
      const auto spec = testing::oracle_spec(prob, ex.models.sector, d.r_hat, 0.5, 0.5, 0.3 * 12);
      CHECK(oracle::qcqp_violation(spec, e.a_star) <= 1e-7);
      CHECK_THAT(oracle::qcqp_objective(spec, e.a_star), WithinAbs(e.achieved_value, 1e-8 * e.achieved_value));
    }
  }
}

TEST_CASE("alg1 and alg3 extraction identities", "[estimators]") {
  const Ex ex(1);
  const auto d = testing::example_draw(ex.setup, 20.0, 8, 0);
  const CVector& a0 = ex.models.similarity.a0;
  for (bool use_c : {false, true}) {
    const EstimateResult e = use_c ? solve_alg3(d.r_hat, ex.models.sector, ex.models.similarity)
                                   : solve_alg1(d.r_hat, ex.models.sector, ex.models.similarity);
    const HermitianMatrix& s = use_c ? ex.models.sector.c : ex.models.sector.c_tilde;
    const cplx ip = a0.dot(e.a_star);
    CHECK(std::abs(ip.imag()) <= 1e-10 * std::abs(ip));
    CHECK(ip.real() >= 0.0);
    CHECK_THAT(std::norm(ip), WithinAbs(e.b3, 1e-6 * e.b3));
    CHECK_THAT(s.quadratic_form(e.a_star), WithinAbs(e.b1, 1e-6 * std::max(1.0, e.b1)));
    CHECK_THAT(e.a_star.squaredNorm(), WithinAbs(e.b2, 1e-6 * e.b2));
  }
}

TEST_CASE("small similarity ball pulls the estimate to a0", "[estimators]") {
  ExampleSetup setup = builtin_example(1);
  setup.scenario.actual_direction = setup.scenario.presumed_direction;
  const SweepModels m = build_models(setup);
  const auto d = testing::example_draw(setup, 10.0, 1, 0);
  for (double eps : {1e-2, 1e-4}) {
    const UncertaintyModel u = build_similarity_model(m.sector.a0, 0.5, 0.5, eps);
    const EstimateResult e = solve_alg1(d.r_hat, m.sector, u);
    REQUIRE(e.certificate != Certificate::Failed);
    CHECK((e.a_star - u.a0).squaredNorm() <= eps + 1e-7);
  }
}

TEST_CASE("ellipsoid solvers with Q = I agree with the ball solvers", "[estimators]") {
  const Ex ex(1);
  for (int run = 0; run < 3; ++run) {
    const auto d = testing::example_draw(ex.setup, 15.0, 2, static_cast<std::uint64_t>(run));
    const EstimateResult a1 = solve_alg1(d.r_hat, ex.models.sector, ex.models.similarity);
    const EstimateResult a2 = solve_alg2(d.r_hat, ex.models.sector, ex.models.similarity);
    const EstimateResult a3 = solve_alg3(d.r_hat, ex.models.sector, ex.models.similarity);
    const EstimateResult a4 = solve_alg4(d.r_hat, ex.models.sector, ex.models.similarity);
    CHECK(a2.certificate == Certificate::GloballyOptimal);
    CHECK(a4.certificate == Certificate::GloballyOptimal);
    CHECK(std::abs(a1.achieved_value - a2.achieved_value) <= 1e-6 * std::max(1.0, a1.achieved_value));
    CHECK(std::abs(a3.achieved_value - a4.achieved_value) <= 1e-6 * std::max(1.0, a3.achieved_value));
  }
}

TEST_CASE("ellipsoid examples", "[estimators]") {
  for (int id : {3, 4}) {
    const Ex ex(id);
    for (int run = 0; run < 3; ++run) {
      const auto d = testing::example_draw(ex.setup, 10.0, 3, static_cast<std::uint64_t>(run));
      for (bool use_c : {false, true}) {
        const EstimateResult e = use_c ? solve_alg4(d.r_hat, ex.models.sector, ex.models.ellipsoid)
                                       : solve_alg2(d.r_hat, ex.models.sector, ex.models.ellipsoid);
        INFO("example " << id << " run " << run << " C " << use_c << " branch " << to_string(e.branch));
        CHECK(e.certificate != Certificate::Failed);
        CHECK(e.branch != Branch::None);
        CHECK(e.sdp_status == SdpStatus::Optimal);
        const auto spec = ellipsoid_spec(ex.models.sector, use_c, d.r_hat, ex.models.ellipsoid);
        CHECK(oracle::qcqp_violation(spec, e.a_star) <= 1e-7);
        if (e.certificate == Certificate::GloballyOptimal) CHECK(rel_gap(e) <= 1e-6);
      }
    }
  }
}

TEST_CASE("inactive ball routes through the similarity-slack branch", "[estimators]") {
  const Ex ex(1);
  const auto d = testing::example_draw(ex.setup, 10.0, 4, 0);
  const UncertaintyModel wide = build_similarity_model(ex.models.sector.a0, 0.0, 0.0, 100.0 * 12);
  const EstimateResult e = solve_alg2(d.r_hat, ex.models.sector, wide);
  INFO("branch " << to_string(e.branch) << " rank " << e.numerical_rank);
  CHECK(e.certificate == Certificate::GloballyOptimal);
  CHECK(e.similarity_slack);
  CHECK(e.numerical_rank > 1);
  CHECK(e.branch == Branch::SimilaritySlack);
  CHECK((e.a_star - wide.a0).squaredNorm() < wide.epsilon);
}

TEST_CASE("inactive sector constraint routes through the sector-slack branch", "[estimators]") {
  SectorModel s = build_sector_model(0.0, 10.0, 12);
  s.delta1 *= 1e-3;
  const UncertaintyModel u = build_similarity_model(s.a0, 0.5, 0.5, 0.3 * 12);
  const EstimateResult e = solve_alg4(HermitianMatrix::identity(12), s, u);
  INFO("branch " << to_string(e.branch) << " rank " << e.numerical_rank);
  CHECK(e.certificate == Certificate::GloballyOptimal);
  CHECK(e.sector_slack);
  CHECK(e.numerical_rank > 1);
  CHECK(e.branch == Branch::SectorSlack);
  CHECK(s.c.quadratic_form(e.a_star) > s.delta1);
  CHECK_THAT(e.achieved_value, WithinAbs(6.0, 1e-6));
}

TEST_CASE("estimate direction is scale invariant", "[estimators]") {
  const Ex ex(1);
  const auto d = testing::example_draw(ex.setup, 20.0, 6, 1);
  const HermitianMatrix scaled = 7.5 * d.r_hat;
  const EstimateResult a = solve_alg1(d.r_hat, ex.models.sector, ex.models.similarity);
  const EstimateResult b = solve_alg1(scaled, ex.models.sector, ex.models.similarity);
  CHECK((a.a_star - b.a_star).norm() <= 1e-5 * a.a_star.norm());
  CHECK_THAT(b.achieved_value * 7.5, WithinAbs(a.achieved_value, 1e-6 * a.achieved_value));
  const EstimateResult k1 = solve_kvh(d.r_hat, ex.models.sector);
  const EstimateResult k2 = solve_kvh(scaled, ex.models.sector);
  // KVH has a free global phase
  CHECK(std::abs(std::abs(k1.a_star.dot(k2.a_star)) - 12.0) <= 1e-5 * 12.0);
}

TEST_CASE("empty constraint set is reported", "[estimators]") {
  const SectorModel s = build_sector_model(0.0, 10.0, 12);
  const UncertaintyModel far = build_similarity_model(CVector(3.0 * s.a0), 0.5, 0.5, 0.1 * 12);
  const EstimateResult e = solve_alg1(HermitianMatrix::identity(12), s, far);
  CHECK(e.certificate == Certificate::Failed);
  CHECK(e.sdp_status == SdpStatus::Infeasible);
}

TEST_CASE("degenerate norm band", "[estimators]") {
  const Ex ex(1);
  const auto d = testing::example_draw(ex.setup, 5.0, 9, 0);
  const UncertaintyModel u = build_similarity_model(ex.models.sector.a0, 0.0, 0.0, 0.3 * 12);
  const EstimateResult e = solve_alg3(d.r_hat, ex.models.sector, u);
  CHECK(e.certificate == Certificate::GloballyOptimal);
  CHECK_THAT(e.a_star.squaredNorm(), WithinAbs(12.0, 1e-7));
}

TEST_CASE("full-range sector", "[estimators]") {
  const SectorModel s = build_sector_model(-90.0, 90.0, 6);
  Rng rng(4);
  const HermitianMatrix r = testing::random_psd(6, 6, rng) + HermitianMatrix::identity(6);
  const UncertaintyModel u = build_similarity_model(steering_vector(0.0, 6), 0.5, 0.5, 0.3 * 6);
  CHECK(solve_alg1(r, s, u).certificate == Certificate::GloballyOptimal);
  CHECK(solve_kvh(r, s).certificate == Certificate::GloballyOptimal);
}

TEST_CASE("relaxation value bounds sampled feasible points", "[estimators]") {
  const Ex ex(1);
  const auto d = testing::example_draw(ex.setup, 10.0, 12, 0);
  const EstimateResult e = solve_alg1(d.r_hat, ex.models.sector, ex.models.similarity);
  const auto spec = testing::oracle_spec(testing::Problem::Alg1, ex.models.sector, d.r_hat, 0.5, 0.5, 0.3 * 12);
  oracle::SearchOptions so;
  so.samples = 20000;
  so.polish_starts = 2;
  const auto r = oracle::qcqp_search(spec, so);
  CHECK(r.feasible > 1000);
  CHECK(r.best >= e.sdp_value - 1e-6);
  CHECK(output_power(d.r_hat, r.best_point) <= output_power(d.r_hat, e.a_star) * (1.0 + 1e-6));
}

TEST_CASE("N = 3 instances agree with the sampling oracle", "[estimators]") {
  Rng rng(2024);
  for (int t = 0; t < 3; ++t) {
    const auto inst = testing::small_instance(3, rng);
    const UncertaintyModel u = build_similarity_model(inst.sector, 0.5, 0.5, 0.3 * 3);
    const std::pair<testing::Problem, EstimateResult> cases[] = {
        {testing::Problem::Kvh, solve_kvh(inst.r_hat, inst.sector)},
        {testing::Problem::KvhVariant, solve_kvh_variant(inst.r_hat, inst.sector)},
        {testing::Problem::Alg1, solve_alg1(inst.r_hat, inst.sector, u)},
        {testing::Problem::Alg3, solve_alg3(inst.r_hat, inst.sector, u)}};
    for (const auto& [prob, e] : cases) {
      const auto spec = testing::oracle_spec(prob, inst.sector, inst.r_hat, 0.5, 0.5, 0.3 * 3);
      oracle::SearchOptions so;
      so.samples = 50000;
      so.seed = 7 + t;
      const auto r = oracle::qcqp_search(spec, so);
      INFO("instance " << t << " problem " << static_cast<int>(prob) << " solver " << e.achieved_value << " oracle "
                       << r.best);
      CHECK(e.certificate == Certificate::GloballyOptimal);
      CHECK(r.best >= e.achieved_value * (1.0 - 1e-3));
      CHECK(r.best <= e.achieved_value * (1.0 + 1e-3));
    }
  }
}
