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
#include <iosfwd>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "beamsim/hermitian.hpp"

namespace beamsim {

using Rng = std::mt19937_64;

struct Interferer {
  double angle_deg = 0.0;
  double inr_db = 0.0;
};

struct ScenarioConfig {
  int n_elements = 12;
  double element_spacing = 0.5;  // wavelengths; only 0.5 is supported
  double theta_min = 0.0;        // degrees
  double theta_max = 10.0;
  double presumed_direction = 5.0;
  double actual_direction = 7.0;
  std::vector<Interferer> interferers;
  double snr_db = 0.0;
  int snapshots = 100;
  double phase_distortion_std = 0.0;  // radians
  std::uint64_t rng_seed = 0;

  /// sigma_s^2 with unit noise power.
  double signal_power() const;
  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

/// key = value per line, '#' starts a comment. Keys:
///   n_elements, element_spacing, theta_min, theta_max, presumed_direction,
///   actual_direction, snr_db, snapshots, phase_distortion_std, rng_seed,
///   interferer = <angle_deg>, <inr_db>   (repeatable)
/// Unknown keys go to `extra` when given, otherwise they are an error. Keys
/// absent from the file keep their value in `base`; any interferer line
/// replaces the whole interferer list of `base`.
ScenarioConfig parse_scenario(std::istream& in, std::map<std::string, std::string>* extra = nullptr,
                              const ScenarioConfig& base = {});
ScenarioConfig load_scenario(const std::string& path, std::map<std::string, std::string>* extra = nullptr,
                             const ScenarioConfig& base = {});

struct SnapshotBlock {
  CMatrix samples;                                   // N x T
  CVector true_steering;                             // distorted actual a
  HermitianMatrix true_interference_plus_noise_cov;  // R_{i+n}
};

/// Half-wavelength ULA response, entry n = exp(j pi n sin(theta)), n = 0..N-1.
CVector steering_vector(double theta_deg, int n);

/// Multiplies entry n by exp(j sum_{k<=n} delta_k), delta_k ~ N(0, sigma^2).
CVector apply_phase_distortion(const CVector& d, double sigma, Rng& rng);

/// Circularly-symmetric complex Gaussian vector, E|z_i|^2 = power.
CVector complex_gaussian(Eigen::Index n, double power, Rng& rng);

/// Draws the distortion once, then T snapshots of signal + interference + noise.
SnapshotBlock generate_snapshots(const ScenarioConfig& cfg, Rng& rng);

/// sum_m INR_m d(theta_m) d(theta_m)^H + I
HermitianMatrix interference_plus_noise_cov(const ScenarioConfig& cfg);

/// (1/T) sum_k x(k) x(k)^H
HermitianMatrix sample_covariance(const CMatrix& samples);

/// Independent stream for one Monte Carlo run.
Rng run_rng(std::uint64_t master_seed, std::uint64_t run_index);

}  // namespace beamsim
