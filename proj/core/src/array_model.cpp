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

#include "beamsim/array_model.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace beamsim {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& v, const std::string& key, int line) {
  std::size_t pos = 0;
  double out = 0.0;
  try {
    out = std::stod(v, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != v.size() || v.empty()) {
    throw std::invalid_argument("line " + std::to_string(line) + ": bad number for " + key + ": '" + v + "'");
  }
  return out;
}

}  // namespace

double ScenarioConfig::signal_power() const { return std::pow(10.0, snr_db / 10.0); }

void ScenarioConfig::validate() const {
  if (n_elements < 1) throw std::invalid_argument("ScenarioConfig: n_elements must be positive");
  if (element_spacing != 0.5) throw std::invalid_argument("ScenarioConfig: element_spacing must be 0.5");
  if (!(theta_min < theta_max)) throw std::invalid_argument("ScenarioConfig: theta_min must be below theta_max");
  if (theta_min < -90.0 || theta_max > 90.0) throw std::invalid_argument("ScenarioConfig: sector outside [-90, 90]");
  if (std::abs(presumed_direction) > 90.0 || std::abs(actual_direction) > 90.0) {
    throw std::invalid_argument("ScenarioConfig: direction outside [-90, 90]");
  }
  if (snapshots < 1) throw std::invalid_argument("ScenarioConfig: snapshots must be >= 1");
  if (!(phase_distortion_std >= 0.0)) throw std::invalid_argument("ScenarioConfig: phase_distortion_std must be >= 0");
  for (const auto& it : interferers) {
    if (std::abs(it.angle_deg) > 90.0) throw std::invalid_argument("ScenarioConfig: interferer outside [-90, 90]");
    if (it.angle_deg >= theta_min && it.angle_deg <= theta_max) {
      throw std::invalid_argument("ScenarioConfig: interferer inside the sector");
    }
  }
}

ScenarioConfig parse_scenario(std::istream& in, std::map<std::string, std::string>* extra,
                              const ScenarioConfig& base) {
  ScenarioConfig cfg = base;
  bool own_interferers = false;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (s.empty()) continue;
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("line " + std::to_string(line) + ": expected key = value");
    const std::string key = trim(s.substr(0, eq));
    const std::string val = trim(s.substr(eq + 1));
    if (key == "n_elements") {
      cfg.n_elements = static_cast<int>(to_double(val, key, line));
    } else if (key == "element_spacing") {
      cfg.element_spacing = to_double(val, key, line);
    } else if (key == "theta_min") {
      cfg.theta_min = to_double(val, key, line);
    } else if (key == "theta_max") {
      cfg.theta_max = to_double(val, key, line);
    } else if (key == "presumed_direction") {
      cfg.presumed_direction = to_double(val, key, line);
    } else if (key == "actual_direction") {
      cfg.actual_direction = to_double(val, key, line);
    } else if (key == "snr_db") {
      cfg.snr_db = to_double(val, key, line);
    } else if (key == "snapshots") {
      cfg.snapshots = static_cast<int>(to_double(val, key, line));
    } else if (key == "phase_distortion_std") {
      cfg.phase_distortion_std = to_double(val, key, line);
    } else if (key == "rng_seed") {
      cfg.rng_seed = std::stoull(val);
    } else if (key == "interferer") {
      const auto comma = val.find(',');
      if (comma == std::string::npos) {
        throw std::invalid_argument("line " + std::to_string(line) + ": interferer = <angle_deg>, <inr_db>");
      }
      if (!own_interferers) cfg.interferers.clear();
      own_interferers = true;
      cfg.interferers.push_back({to_double(trim(val.substr(0, comma)), key, line),
                                 to_double(trim(val.substr(comma + 1)), key, line)});
    } else if (extra != nullptr) {
      (*extra)[key] = val;
    } else {
      throw std::invalid_argument("line " + std::to_string(line) + ": unknown key '" + key + "'");
    }
  }
  cfg.validate();
  return cfg;
}

ScenarioConfig load_scenario(const std::string& path, std::map<std::string, std::string>* extra,
                             const ScenarioConfig& base) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  return parse_scenario(f, extra, base);
}

CVector steering_vector(double theta_deg, int n) {
  if (!(theta_deg >= -90.0 && theta_deg <= 90.0)) {
    throw std::invalid_argument("steering_vector: angle outside [-90, 90]");
  }
  if (n < 1) throw std::invalid_argument("steering_vector: n must be positive");
  const double s = std::sin(theta_deg * kDeg);
  CVector d(n);
  for (int k = 0; k < n; ++k) d(k) = std::polar(1.0, std::numbers::pi * k * s);
  return d;
}

CVector apply_phase_distortion(const CVector& d, double sigma, Rng& rng) {
  if (!(sigma >= 0.0)) throw std::invalid_argument("apply_phase_distortion: sigma must be >= 0");
  if (sigma == 0.0) return d;
  std::normal_distribution<double> g(0.0, sigma);
  CVector out = d;
  double phase = 0.0;
  for (Eigen::Index k = 0; k < d.size(); ++k) {
    phase += g(rng);
    out(k) *= std::polar(1.0, phase);
  }
  return out;
}

CVector complex_gaussian(Eigen::Index n, double power, Rng& rng) {
  std::normal_distribution<double> g(0.0, std::sqrt(power / 2.0));
  CVector z(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double re = g(rng);
    const double im = g(rng);
    z(k) = cplx(re, im);
  }
  return z;
}

HermitianMatrix interference_plus_noise_cov(const ScenarioConfig& cfg) {
  const int n = cfg.n_elements;
  CMatrix r = CMatrix::Identity(n, n);
  for (const auto& it : cfg.interferers) {
    const CVector d = steering_vector(it.angle_deg, n);
    r += std::pow(10.0, it.inr_db / 10.0) * d * d.adjoint();
  }
  return HermitianMatrix(r);
}

SnapshotBlock generate_snapshots(const ScenarioConfig& cfg, Rng& rng) {
  cfg.validate();
  const int n = cfg.n_elements;
  const int t = cfg.snapshots;
  SnapshotBlock out;
  out.true_steering = apply_phase_distortion(steering_vector(cfg.actual_direction, n), cfg.phase_distortion_std, rng);
  out.true_interference_plus_noise_cov = interference_plus_noise_cov(cfg);

  const CVector s = complex_gaussian(t, cfg.signal_power(), rng);
  CMatrix x = out.true_steering * s.transpose();
  for (const auto& it : cfg.interferers) {
    const CVector i = complex_gaussian(t, std::pow(10.0, it.inr_db / 10.0), rng);
    x += steering_vector(it.angle_deg, n) * i.transpose();
  }
  for (int k = 0; k < t; ++k) x.col(k) += complex_gaussian(n, 1.0, rng);
  out.samples = std::move(x);
  return out;
}

HermitianMatrix sample_covariance(const CMatrix& samples) {
  if (samples.cols() < 1) throw std::invalid_argument("sample_covariance: no snapshots");
  return HermitianMatrix(CMatrix(samples * samples.adjoint() / static_cast<double>(samples.cols())));
}

Rng run_rng(std::uint64_t master_seed, std::uint64_t run_index) {
  std::seed_seq seq{static_cast<std::uint32_t>(master_seed), static_cast<std::uint32_t>(master_seed >> 32),
                    static_cast<std::uint32_t>(run_index), static_cast<std::uint32_t>(run_index >> 32)};
  return Rng(seq);
}

}  // namespace beamsim
