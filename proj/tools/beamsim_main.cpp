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

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "beamsim/experiments.hpp"
#include "beamsim/sector.hpp"

namespace {

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t pos = 0;
    const int v = std::stoi(item, &pos);
    if (pos != item.size()) throw std::invalid_argument("bad integer '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

struct RunArgs {
  int example = 1;
  double snr_min = -10.0;
  double snr_max = 60.0;
  double snr_step = 5.0;
  int snapshots = 0;
  std::string snapshot_sweep;
  int runs = 50;
  std::uint64_t seed = 1;
  std::string beamformers;
  std::string out;
  std::string config;
  bool allow_failures = false;
  bool deterministic = false;
  int threads = 1;
  bool quiet = false;
};

int do_run(const RunArgs& a) {
  beamsim::ExampleSetup setup = beamsim::builtin_example(a.example);
  if (!a.config.empty()) beamsim::apply_config_file(setup, a.config);

  beamsim::SweepSpec spec = beamsim::default_sweep(a.example);
  spec.snr_grid = beamsim::snr_range(a.snr_min, a.snr_max, a.snr_step);
  if (!a.snapshot_sweep.empty()) {
    spec.snapshot_grid = parse_int_list(a.snapshot_sweep);
  } else if (a.snapshots > 0) {
    spec.snapshot_grid = {a.snapshots};
  } else {
    spec.snapshot_grid = {setup.scenario.snapshots};
  }
  spec.runs = a.runs;
  spec.master_seed = a.seed;
  spec.beamformers = a.beamformers.empty() ? setup.beamformers : beamsim::parse_beamformer_list(a.beamformers);
  spec.output_path = a.out;
  spec.record_timing = !a.deterministic;
  spec.threads = a.threads;

  const auto rows = beamsim::run_sweep(spec, setup);
  const auto failed = std::count_if(rows.begin(), rows.end(), [](const beamsim::ResultRow& r) {
    return r.certificate == "Failed";
  });

  if (a.out.empty()) {
    beamsim::write_csv(std::cout, rows);
  } else if (!a.quiet) {
    beamsim::print_summary(std::cout, beamsim::summarize(rows));
  }
  std::cerr << rows.size() << " rows, " << failed << " failed\n";
  if (failed > 0 && !a.allow_failures) return 2;
  return 0;
}

int do_summarize(const std::string& path) {
  std::ifstream f(path);
  if (!f) {
    std::cerr << "cannot open " << path << "\n";
    return 1;
  }
  const auto rows = beamsim::read_csv(f);
  beamsim::print_summary(std::cout, beamsim::summarize(rows));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MVDR beamforming with estimated steering vectors"};
  app.require_subcommand(1);

  RunArgs ra;
  auto* run = app.add_subcommand("run", "Monte Carlo sweep of one example");
  run->add_option("--example", ra.example, "Example id")->check(CLI::Range(1, 4))->required();
  run->add_option("--snr-min", ra.snr_min, "Lowest SNR [dB]");
  run->add_option("--snr-max", ra.snr_max, "Highest SNR [dB]");
  run->add_option("--snr-step", ra.snr_step, "SNR step [dB]")->check(CLI::PositiveNumber);
  auto* snap = run->add_option("--snapshots", ra.snapshots, "Snapshots per run")->check(CLI::PositiveNumber);
  run->add_option("--snapshot-sweep", ra.snapshot_sweep, "Comma-separated snapshot counts")->excludes(snap);
  run->add_option("--runs", ra.runs, "Runs per grid point")->check(CLI::PositiveNumber);
  run->add_option("--seed", ra.seed, "Master seed");
  run->add_option("--beamformers", ra.beamformers, "Comma-separated subset of kvh,new1,new2,new3,new4");
  run->add_option("--out", ra.out, "CSV output path (stdout when absent)");
  run->add_option("--config", ra.config, "Scenario overrides, key = value per line")->check(CLI::ExistingFile);
  run->add_option("--threads", ra.threads, "Worker threads")->check(CLI::PositiveNumber);
  run->add_flag("--allow-failures", ra.allow_failures, "Exit 0 even if some rows failed");
  run->add_flag("--deterministic", ra.deterministic, "Write solve_ms = 0 so reruns are byte-identical");
  run->add_flag("-q,--quiet", ra.quiet, "No summary table");

  std::string in_path;
  auto* sum = app.add_subcommand("summarize", "Mean / std table of a result file");
  sum->add_option("--in", in_path, "Result CSV")->required();

  double tmin = 0.0, tmax = 10.0, step = 0.1, curve_step = 0.5;
  int n = 12;
  auto* dump = app.add_subcommand("sector-dump", "Print delta0, delta1 and the benchmark curves");
  dump->add_option("--theta-min", tmin, "Sector lower edge [deg]")->required();
  dump->add_option("--theta-max", tmax, "Sector upper edge [deg]")->required();
  dump->add_option("--n", n, "Array size")->check(CLI::PositiveNumber)->required();
  dump->add_option("--grid-step", step, "Integration step [deg]");
  dump->add_option("--curve-step", curve_step, "Angle step of the printed curves [deg]");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return do_run(ra);
    if (*sum) return do_summarize(in_path);
    if (*dump) {
      beamsim::dump_sector_model(std::cout, beamsim::build_sector_model(tmin, tmax, n, step), curve_step);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "beamsim: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
