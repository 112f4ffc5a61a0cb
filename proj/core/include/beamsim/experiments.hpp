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
#include <string>
#include <string_view>
#include <vector>

#include "beamsim/array_model.hpp"
#include "beamsim/estimators.hpp"
#include "beamsim/sector.hpp"

namespace beamsim {

/// kvh = sector-constrained baseline, new1/new2 = similarity ball with C~ / C,
/// new3/new4 = ellipsoid with C~ / C.
enum class BeamformerKind { Kvh, New1, New2, New3, New4 };

std::string_view to_string(BeamformerKind k);
/// Throws std::invalid_argument on an unknown name.
BeamformerKind parse_beamformer(std::string_view name);
std::vector<BeamformerKind> parse_beamformer_list(const std::string& csv);

enum class CenterRule { Presumed, SampleMean };

struct ExampleSetup {
  int example_id = 1;
  ScenarioConfig scenario;  // snr_db and snapshots are set per grid point
  double grid_step = 0.1;
  double eta1 = 0.5;
  double eta2 = 0.5;
  double similarity_epsilon = 0.3;  // times N
  double ellipsoid_epsilon = 0.45;  // times N
  int ellipsoid_samples = 100;
  double ridge = 0.1;
  CenterRule center = CenterRule::Presumed;
  std::vector<BeamformerKind> beamformers;
};

/// Defaults of the four built-in scenarios. Throws on an unknown id.
ExampleSetup builtin_example(int example_id);

/// Reads a scenario file on top of the setup. Besides the scenario keys it
/// accepts eta, eta1, eta2, similarity_epsilon, ellipsoid_epsilon,
/// ellipsoid_samples, ridge, grid_step and center = presumed | mean.
void apply_config_file(ExampleSetup& setup, const std::string& path);

struct SweepSpec {
  int example_id = 1;
  std::vector<double> snr_grid;
  std::vector<int> snapshot_grid;
  int runs = 50;
  std::vector<BeamformerKind> beamformers;
  std::uint64_t master_seed = 1;
  std::string output_path;
  bool record_timing = true;
  int threads = 1;

  void validate() const;
};

/// min, min + step, ... up to max inclusive.
std::vector<double> snr_range(double lo, double hi, double step);

/// SNR over [-10, 60] in 5 dB steps, T = 100, 50 runs, the example's beamformers.
SweepSpec default_sweep(int example_id);

struct ResultRow {
  int example_id = 0;
  std::string beamformer;
  double snr_db = 0.0;
  int snapshots = 0;
  int run_index = 0;
  double output_sinr_db = 0.0;
  double output_power_db = 0.0;
  std::string certificate;
  std::string branch;
  double sdp_value = 0.0;
  double solve_ms = 0.0;
};

/// Column order of the CSV header.
extern const char* const kResultHeader;

void write_csv_header(std::ostream& os);
void write_csv_row(std::ostream& os, const ResultRow& row);
void write_csv(std::ostream& os, const std::vector<ResultRow>& rows);
/// Throws std::runtime_error naming the line of the first malformed row.
std::vector<ResultRow> read_csv(std::istream& is);

/// Models shared by every cell of a sweep.
struct SweepModels {
  SectorModel sector;
  UncertaintyModel similarity;
  UncertaintyModel ellipsoid;
  bool has_ellipsoid = false;
};

SweepModels build_models(const ExampleSetup& setup);

/// Everything computed for one (SNR, T, run) cell.
struct CellResult {
  std::vector<ResultRow> rows;
  std::vector<EstimateResult> estimates;  // parallel to rows
  std::vector<double> distortionless_error;  // |w^H a* - 1|
  std::vector<double> power_identity_error;  // |P - w^H R w| / P
  double optimal_sinr_db = 0.0;
};

CellResult run_cell(const ExampleSetup& setup, const SweepModels& models, double snr_db, int snapshots,
                    int run_index, const std::vector<BeamformerKind>& beamformers, std::uint64_t master_seed,
                    bool record_timing);

/// Rows ordered by (snapshots, snr, run, beamformer). Writes the CSV when
/// spec.output_path is set.
std::vector<ResultRow> run_sweep(const SweepSpec& spec, const ExampleSetup& setup);

struct SummaryRow {
  int example_id = 0;
  std::string beamformer;
  double snr_db = 0.0;
  int snapshots = 0;
  int count = 0;  // rows with a finite SINR
  int failures = 0;
  double mean_sinr_db = 0.0;
  double std_sinr_db = 0.0;
  double mean_power_db = 0.0;
  double std_power_db = 0.0;
};

/// Mean and sample standard deviation in the dB domain per (beamformer, grid point).
std::vector<SummaryRow> summarize(const std::vector<ResultRow>& rows);
void print_summary(std::ostream& os, const std::vector<SummaryRow>& table);

}  // namespace beamsim
