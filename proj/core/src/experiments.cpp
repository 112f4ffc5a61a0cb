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

#include "beamsim/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "beamsim/beamformer.hpp"

namespace beamsim {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_num(const std::string& s, int line, const char* what) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) {
    throw std::runtime_error("line " + std::to_string(line) + ": bad " + what + " '" + s + "'");
  }
  return v;
}

int parse_int(const std::string& s, int line, const char* what) {
  const double v = parse_num(s, line, what);
  if (v != std::floor(v)) throw std::runtime_error("line " + std::to_string(line) + ": " + what + " is not an integer");
  return static_cast<int>(v);
}

}  // namespace

const char* const kResultHeader =
    "example_id,beamformer,snr_db,snapshots,run_index,output_sinr_db,output_power_db,certificate,branch,sdp_value,"
    "solve_ms";

std::string_view to_string(BeamformerKind k) {
  switch (k) {
    case BeamformerKind::Kvh: return "kvh";
    case BeamformerKind::New1: return "new1";
    case BeamformerKind::New2: return "new2";
    case BeamformerKind::New3: return "new3";
    case BeamformerKind::New4: return "new4";
  }
  return "unknown";
}

BeamformerKind parse_beamformer(std::string_view name) {
  for (auto k : {BeamformerKind::Kvh, BeamformerKind::New1, BeamformerKind::New2, BeamformerKind::New3,
                 BeamformerKind::New4}) {
    if (to_string(k) == name) return k;
  }
  throw std::invalid_argument("unknown beamformer '" + std::string(name) + "'");
}

std::vector<BeamformerKind> parse_beamformer_list(const std::string& csv) {
  std::vector<BeamformerKind> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto k = parse_beamformer(item);
    if (std::find(out.begin(), out.end(), k) == out.end()) out.push_back(k);
  }
  if (out.empty()) throw std::invalid_argument("empty beamformer list");
  return out;
}

ExampleSetup builtin_example(int example_id) {
  ExampleSetup s;
  s.example_id = example_id;
  ScenarioConfig& c = s.scenario;
  c.n_elements = 12;
  c.snapshots = 100;
  c.theta_min = 0.0;
  c.theta_max = 10.0;
  c.interferers = {{-15.0, 30.0}, {15.0, 30.0}};
  const std::vector<BeamformerKind> three{BeamformerKind::Kvh, BeamformerKind::New1, BeamformerKind::New2};
  const std::vector<BeamformerKind> five{BeamformerKind::Kvh, BeamformerKind::New1, BeamformerKind::New2,
                                         BeamformerKind::New3, BeamformerKind::New4};
  switch (example_id) {
    case 1:
      c.presumed_direction = 5.0;
      c.actual_direction = 7.0;
      s.beamformers = three;
      break;
    case 2:
      c.presumed_direction = 9.0;
      c.actual_direction = 9.0;
      c.phase_distortion_std = 0.01;
      s.beamformers = three;
      break;
    case 3:
      c.presumed_direction = 9.0;
      c.actual_direction = 9.0;
      c.phase_distortion_std = 0.01;
      s.center = CenterRule::SampleMean;
      s.beamformers = five;
      break;
    case 4:
      c.theta_min = 50.0;
      c.theta_max = 60.0;
      c.presumed_direction = 55.0;
      c.actual_direction = 55.0;
      c.interferers = {{25.0, 30.0}, {85.0, 30.0}};
      c.phase_distortion_std = 0.02;
      s.ellipsoid_samples = 64;
      s.center = CenterRule::SampleMean;
      s.beamformers = five;
      break;
    default:
      throw std::invalid_argument("unknown example id " + std::to_string(example_id));
  }
  c.validate();
  return s;
}

void apply_config_file(ExampleSetup& setup, const std::string& path) {
  std::map<std::string, std::string> extra;
  setup.scenario = load_scenario(path, &extra, setup.scenario);
  for (const auto& [key, val] : extra) {
    const int line = 0;
    if (key == "eta") {
      setup.eta1 = setup.eta2 = parse_num(val, line, "eta");
    } else if (key == "eta1") {
      setup.eta1 = parse_num(val, line, "eta1");
    } else if (key == "eta2") {
      setup.eta2 = parse_num(val, line, "eta2");
    } else if (key == "similarity_epsilon") {
      setup.similarity_epsilon = parse_num(val, line, "similarity_epsilon");
    } else if (key == "ellipsoid_epsilon") {
      setup.ellipsoid_epsilon = parse_num(val, line, "ellipsoid_epsilon");
    } else if (key == "ellipsoid_samples") {
      setup.ellipsoid_samples = parse_int(val, line, "ellipsoid_samples");
    } else if (key == "ridge") {
      setup.ridge = parse_num(val, line, "ridge");
    } else if (key == "grid_step") {
      setup.grid_step = parse_num(val, line, "grid_step");
    } else if (key == "center") {
      if (val == "presumed") {
        setup.center = CenterRule::Presumed;
      } else if (val == "mean") {
        setup.center = CenterRule::SampleMean;
      } else {
        throw std::invalid_argument(path + ": center must be 'presumed' or 'mean'");
      }
    } else {
      throw std::invalid_argument(path + ": unknown key '" + key + "'");
    }
  }
}

void SweepSpec::validate() const {
  if (runs < 1) throw std::invalid_argument("SweepSpec: runs must be >= 1");
  if (snr_grid.empty()) throw std::invalid_argument("SweepSpec: empty SNR grid");
  if (snapshot_grid.empty()) throw std::invalid_argument("SweepSpec: empty snapshot grid");
  if (beamformers.empty()) throw std::invalid_argument("SweepSpec: no beamformers");
  for (int t : snapshot_grid) {
    if (t < 1) throw std::invalid_argument("SweepSpec: snapshots must be >= 1");
  }
  if (threads < 1) throw std::invalid_argument("SweepSpec: threads must be >= 1");
}

std::vector<double> snr_range(double lo, double hi, double step) {
  if (!(step > 0.0) || hi < lo) throw std::invalid_argument("snr_range: bad range");
  std::vector<double> out;
  const auto n = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
  for (long k = 0; k <= n; ++k) out.push_back(lo + static_cast<double>(k) * step);
  return out;
}

SweepSpec default_sweep(int example_id) {
  SweepSpec s;
  s.example_id = example_id;
  s.snr_grid = snr_range(-10.0, 60.0, 5.0);
  s.snapshot_grid = {100};
  s.runs = 50;
  s.beamformers = builtin_example(example_id).beamformers;
  return s;
}

void write_csv_header(std::ostream& os) { os << kResultHeader << "\n"; }

void write_csv_row(std::ostream& os, const ResultRow& r) {
  os << r.example_id << ',' << r.beamformer << ',' << fmt(r.snr_db) << ',' << r.snapshots << ',' << r.run_index
     << ',' << fmt(r.output_sinr_db) << ',' << fmt(r.output_power_db) << ',' << r.certificate << ',' << r.branch
     << ',' << fmt(r.sdp_value) << ',' << fmt(r.solve_ms) << "\n";
}

void write_csv(std::ostream& os, const std::vector<ResultRow>& rows) {
  write_csv_header(os);
  for (const auto& r : rows) write_csv_row(os, r);
}

std::vector<ResultRow> read_csv(std::istream& is) {
  std::vector<ResultRow> rows;
  std::string line;
  int ln = 0;
  if (!std::getline(is, line)) throw std::runtime_error("line 1: missing header");
  ++ln;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kResultHeader) throw std::runtime_error("line 1: unexpected header");
  while (std::getline(is, line)) {
    ++ln;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string item;
    while (std::getline(ss, item, ',')) f.push_back(item);
    if (!line.empty() && line.back() == ',') f.emplace_back();
    if (f.size() != 11) {
      throw std::runtime_error("line " + std::to_string(ln) + ": expected 11 fields, got " + std::to_string(f.size()));
    }
    ResultRow r;
    r.example_id = parse_int(f[0], ln, "example_id");
    r.beamformer = f[1];
    r.snr_db = parse_num(f[2], ln, "snr_db");
    r.snapshots = parse_int(f[3], ln, "snapshots");
    r.run_index = parse_int(f[4], ln, "run_index");
    r.output_sinr_db = parse_num(f[5], ln, "output_sinr_db");
    r.output_power_db = parse_num(f[6], ln, "output_power_db");
    r.certificate = f[7];
    r.branch = f[8];
    r.sdp_value = parse_num(f[9], ln, "sdp_value");
    r.solve_ms = parse_num(f[10], ln, "solve_ms");
    if (r.beamformer.empty() || r.certificate.empty()) {
      throw std::runtime_error("line " + std::to_string(ln) + ": empty beamformer or certificate");
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

SweepModels build_models(const ExampleSetup& setup) {
  const ScenarioConfig& c = setup.scenario;
  c.validate();
  const int n = c.n_elements;
  const auto dn = static_cast<double>(n);
  SweepModels m;
  m.sector = build_sector_model(c.theta_min, c.theta_max, n, setup.grid_step);
  m.ellipsoid = build_ellipsoid_model(c.theta_min, c.theta_max, n, setup.ellipsoid_samples, setup.ridge, setup.eta1,
                                      setup.eta2, setup.ellipsoid_epsilon * dn);
  m.has_ellipsoid = true;
  const CVector a0 =
      setup.center == CenterRule::Presumed ? steering_vector(c.presumed_direction, n) : m.ellipsoid.a0;
  m.similarity = build_similarity_model(a0, setup.eta1, setup.eta2, setup.similarity_epsilon * dn);
  return m;
}

CellResult run_cell(const ExampleSetup& setup, const SweepModels& models, double snr_db, int snapshots,
                    int run_index, const std::vector<BeamformerKind>& beamformers, std::uint64_t master_seed,
                    bool record_timing) {
  ScenarioConfig cfg = setup.scenario;
  cfg.snr_db = snr_db;
  cfg.snapshots = snapshots;
  Rng rng = run_rng(master_seed, static_cast<std::uint64_t>(run_index));
  const SnapshotBlock block = generate_snapshots(cfg, rng);
  const HermitianMatrix r_hat = sample_covariance(block.samples);
  const HermitianMatrix& r_in = block.true_interference_plus_noise_cov;
  const double ps = cfg.signal_power();

  CellResult out;
  out.optimal_sinr_db = to_db(optimal_sinr(block.true_steering, ps, r_in));
  for (const auto kind : beamformers) {
    ResultRow row;
    row.example_id = setup.example_id;
    row.beamformer = std::string(to_string(kind));
    row.snr_db = snr_db;
    row.snapshots = snapshots;
    row.run_index = run_index;

    EstimateResult est;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      switch (kind) {
        case BeamformerKind::Kvh: est = solve_kvh(r_hat, models.sector); break;
        case BeamformerKind::New1: est = solve_alg1(r_hat, models.sector, models.similarity); break;
        case BeamformerKind::New2: est = solve_alg3(r_hat, models.sector, models.similarity); break;
        case BeamformerKind::New3: est = solve_alg2(r_hat, models.sector, models.ellipsoid); break;
        case BeamformerKind::New4: est = solve_alg4(r_hat, models.sector, models.ellipsoid); break;
      }
    } catch (const std::exception& ex) {
      est = EstimateResult{};
      est.certificate = Certificate::Failed;
      est.message = ex.what();
    }
    const auto t1 = std::chrono::steady_clock::now();
    row.solve_ms = record_timing ? std::chrono::duration<double, std::milli>(t1 - t0).count() : 0.0;
    row.certificate = std::string(to_string(est.certificate));
    row.branch = std::string(to_string(est.branch));
    row.sdp_value = est.sdp_value;

    double dl_err = kNaN;
    double pw_err = kNaN;
    if (est.certificate != Certificate::Failed && est.a_star.size() == r_hat.dim()) {
      const BeamformerOutput bf = evaluate_beamformer(r_hat, est.a_star, block.true_steering, ps, r_in);
      row.output_sinr_db = bf.output_sinr_db;
      row.output_power_db = bf.output_power_db;
      dl_err = std::abs(bf.weights.dot(est.a_star) - 1.0);
      const double p = output_power(r_hat, est.a_star);
      pw_err = std::abs(p - r_hat.quadratic_form(bf.weights)) / p;
    } else {
      row.output_sinr_db = kNaN;
      row.output_power_db = kNaN;
    }
    out.rows.push_back(std::move(row));
    out.estimates.push_back(std::move(est));
    out.distortionless_error.push_back(dl_err);
    out.power_identity_error.push_back(pw_err);
  }
  return out;
}

std::vector<ResultRow> run_sweep(const SweepSpec& spec, const ExampleSetup& setup) {
  spec.validate();
  const SweepModels models = build_models(setup);

  struct Cell {
    int snapshots;
    double snr;
    int run;
  };
  std::vector<Cell> cells;
  for (int t : spec.snapshot_grid) {
    for (double snr : spec.snr_grid) {
      for (int r = 0; r < spec.runs; ++r) cells.push_back({t, snr, r});
    }
  }
  std::vector<std::vector<ResultRow>> slots(cells.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      const Cell& c = cells[i];
      slots[i] = run_cell(setup, models, c.snr, c.snapshots, c.run, spec.beamformers, spec.master_seed,
                          spec.record_timing)
                     .rows;
    }
  };
  if (spec.threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int k = 0; k < spec.threads; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  std::vector<ResultRow> rows;
  rows.reserve(cells.size() * spec.beamformers.size());
  for (auto& s : slots) {
    for (auto& r : s) rows.push_back(std::move(r));
  }
  if (!spec.output_path.empty()) {
    std::ofstream f(spec.output_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + spec.output_path);
    write_csv(f, rows);
  }
  return rows;
}

std::vector<SummaryRow> summarize(const std::vector<ResultRow>& rows) {
  using Key = std::tuple<int, std::string, int, double>;
  struct Acc {
    std::vector<double> sinr;
    std::vector<double> power;
    int failures = 0;
  };
  std::map<Key, Acc> groups;
  for (const auto& r : rows) {
    Acc& a = groups[{r.example_id, r.beamformer, r.snapshots, r.snr_db}];
    if (r.certificate == "Failed") ++a.failures;
    if (std::isfinite(r.output_sinr_db)) a.sinr.push_back(r.output_sinr_db);
    if (std::isfinite(r.output_power_db)) a.power.push_back(r.output_power_db);
  }
  auto stats = [](const std::vector<double>& v, double& mean, double& sd) {
    mean = kNaN;
    sd = kNaN;
    if (v.empty()) return;
    double s = 0.0;
    for (double x : v) s += x;
    mean = s / static_cast<double>(v.size());
    double q = 0.0;
    for (double x : v) q += (x - mean) * (x - mean);
    sd = v.size() > 1 ? std::sqrt(q / static_cast<double>(v.size() - 1)) : 0.0;
  };
  std::vector<SummaryRow> out;
  for (const auto& [key, acc] : groups) {
    SummaryRow s;
    s.example_id = std::get<0>(key);
    s.beamformer = std::get<1>(key);
    s.snapshots = std::get<2>(key);
    s.snr_db = std::get<3>(key);
    s.count = static_cast<int>(acc.sinr.size());
    s.failures = acc.failures;
    stats(acc.sinr, s.mean_sinr_db, s.std_sinr_db);
    stats(acc.power, s.mean_power_db, s.std_power_db);
    out.push_back(std::move(s));
  }
  return out;
}

void print_summary(std::ostream& os, const std::vector<SummaryRow>& table) {
  os << std::left << std::setw(8) << "example" << std::setw(11) << "beamformer" << std::right << std::setw(9)
     << "snr_db" << std::setw(10) << "snapshots" << std::setw(7) << "count" << std::setw(9) << "failed"
     << std::setw(12) << "sinr_mean" << std::setw(11) << "sinr_std" << std::setw(12) << "power_mean"
     << std::setw(11) << "power_std" << "\n";
  os << std::fixed << std::setprecision(4);
  for (const auto& s : table) {
    os << std::left << std::setw(8) << s.example_id << std::setw(11) << s.beamformer << std::right
       << std::setw(9) << std::setprecision(2) << s.snr_db << std::setw(10) << s.snapshots << std::setw(7)
       << s.count << std::setw(9) << s.failures << std::setprecision(4) << std::setw(12) << s.mean_sinr_db
       << std::setw(11) << s.std_sinr_db << std::setw(12) << s.mean_power_db << std::setw(11) << s.std_power_db
       << "\n";
  }
  os.unsetf(std::ios::fixed);
}

}  // namespace beamsim
