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

#pragma once

#include <cstdint>

#include "beamsim/array_model.hpp"
#include "beamsim/experiments.hpp"
#include "beamsim/hermitian.hpp"
#include "beamsim/sector.hpp"
#include "../oracles/oracles.hpp"

namespace beamsim::testing {

CVector random_vector(Eigen::Index n, Rng& rng);
HermitianMatrix random_hermitian(Eigen::Index n, Rng& rng);
/// G G^H with G n x rank Gaussian.
HermitianMatrix random_psd(Eigen::Index n, Eigen::Index rank, Rng& rng);

/// One snapshot draw of a built-in example at the given SNR.
struct Draw {
  SnapshotBlock block;
  HermitianMatrix r_hat;
};
Draw example_draw(const ExampleSetup& setup, double snr_db, std::uint64_t seed, std::uint64_t run);

/// Random small scenario: sector of integer degrees, one interferer outside,
/// T in [2N, 10N].
struct SmallInstance {
  ScenarioConfig cfg;
  SectorModel sector;
  HermitianMatrix r_hat;
};
SmallInstance small_instance(int n, Rng& rng);

enum class Problem { Kvh, KvhVariant, Alg1, Alg3 };

/// Oracle description of the source problem. The objective is R^-1 formed
/// with Eigen's LU inverse.
oracle::QcqpSpec oracle_spec(Problem p, const SectorModel& sector, const HermitianMatrix& r_hat, double eta1,
                             double eta2, double epsilon);

}  // namespace beamsim::testing
