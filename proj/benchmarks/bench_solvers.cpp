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

#include <benchmark/benchmark.h>

#include "beamsim/array_model.hpp"
#include "beamsim/experiments.hpp"
#include "beamsim/rank_one.hpp"
#include "beamsim/sdp.hpp"

namespace {

struct Fixture {
  beamsim::ExampleSetup setup;
  beamsim::SweepModels models;
  beamsim::HermitianMatrix r_hat;

  explicit Fixture(int example) : setup(beamsim::builtin_example(example)) {
    models = beamsim::build_models(setup);
    setup.scenario.snr_db = 20.0;
    auto rng = beamsim::run_rng(7, 0);
    r_hat = beamsim::sample_covariance(beamsim::generate_snapshots(setup.scenario, rng).samples);
  }
};

const Fixture& ex1() {
  static const Fixture f(1);
  return f;
}

const Fixture& ex4() {
  static const Fixture f(4);
  return f;
}

void BM_Kvh(benchmark::State& st) {
  const auto& f = ex1();
  for (auto _ : st) benchmark::DoNotOptimize(beamsim::solve_kvh(f.r_hat, f.models.sector));
}
BENCHMARK(BM_Kvh)->Unit(benchmark::kMillisecond);

void BM_Alg1(benchmark::State& st) {
  const auto& f = ex1();
  for (auto _ : st) benchmark::DoNotOptimize(beamsim::solve_alg1(f.r_hat, f.models.sector, f.models.similarity));
}
BENCHMARK(BM_Alg1)->Unit(benchmark::kMillisecond);

void BM_Alg3(benchmark::State& st) {
  const auto& f = ex1();
  for (auto _ : st) benchmark::DoNotOptimize(beamsim::solve_alg3(f.r_hat, f.models.sector, f.models.similarity));
}
BENCHMARK(BM_Alg3)->Unit(benchmark::kMillisecond);

void BM_Alg2(benchmark::State& st) {
  const auto& f = ex4();
  for (auto _ : st) benchmark::DoNotOptimize(beamsim::solve_alg2(f.r_hat, f.models.sector, f.models.ellipsoid));
}
BENCHMARK(BM_Alg2)->Unit(benchmark::kMillisecond);

void BM_Alg4(benchmark::State& st) {
  const auto& f = ex4();
  for (auto _ : st) benchmark::DoNotOptimize(beamsim::solve_alg4(f.r_hat, f.models.sector, f.models.ellipsoid));
}
BENCHMARK(BM_Alg4)->Unit(benchmark::kMillisecond);

void BM_SectorModel(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(beamsim::build_sector_model(0.0, 10.0, static_cast<int>(st.range(0))));
}
BENCHMARK(BM_SectorModel)->Arg(12)->Arg(24)->Unit(benchmark::kMillisecond);

// rank-3 PSD X of size n, four random Hermitian A_i
void BM_D2(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  beamsim::Rng rng(11);
  beamsim::CMatrix p(n, 3);
  for (int k = 0; k < 3; ++k) p.col(k) = beamsim::complex_gaussian(n, 1.0, rng);
  const beamsim::HermitianMatrix x(beamsim::CMatrix(p * p.adjoint()));
  std::array<beamsim::HermitianMatrix, 4> a;
  for (auto& m : a) {
    beamsim::CMatrix g(n, n);
    for (int k = 0; k < n; ++k) g.col(k) = beamsim::complex_gaussian(n, 1.0, rng);
    m = beamsim::HermitianMatrix(g);
  }
  for (auto _ : st) benchmark::DoNotOptimize(beamsim::decompose_d2(x, a));
}
BENCHMARK(BM_D2)->Arg(6)->Arg(13)->Unit(benchmark::kMicrosecond);

void BM_D1(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  beamsim::Rng rng(5);
  beamsim::CMatrix p(n, n);
  for (int k = 0; k < n; ++k) p.col(k) = beamsim::complex_gaussian(n, 1.0, rng);
  const beamsim::HermitianMatrix x(beamsim::CMatrix(p * p.adjoint()));
  beamsim::CMatrix g(n, n), h(n, n);
  for (int k = 0; k < n; ++k) {
    g.col(k) = beamsim::complex_gaussian(n, 1.0, rng);
    h.col(k) = beamsim::complex_gaussian(n, 1.0, rng);
  }
  const beamsim::HermitianMatrix a(g), b(h);
  for (auto _ : st) benchmark::DoNotOptimize(beamsim::decompose_d1(x, a, b));
}
BENCHMARK(BM_D1)->Arg(6)->Arg(13)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
