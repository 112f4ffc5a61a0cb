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

#include <vector>

#include <Eigen/Dense>

namespace beamsim::detail {

/// Real block SDP in standard form:
///   minimize <C, X>  s.t.  <A_i, X> + x_{slack(i)} = b_i,  X PSD,  x >= 0.
/// Rows without a slack (slack[i] < 0) are plain equalities.
struct RealSdp {
  Eigen::MatrixXd c;
  std::vector<Eigen::MatrixXd> a;
  Eigen::VectorXd b;
  std::vector<int> slack;
  int n_slack = 0;
};

enum class IpmStatus { Converged, Infeasible, Unbounded, MaxIterations, Stalled, Breakdown };

struct IpmResult {
  Eigen::MatrixXd x;
  Eigen::VectorXd xl;
  Eigen::VectorXd y;
  Eigen::MatrixXd s;
  Eigen::VectorXd sl;
  IpmStatus status = IpmStatus::Breakdown;
  int iterations = 0;
  double pinf = 0.0;
  double dinf = 0.0;
  double gap = 0.0;
};

IpmResult solve_real_sdp(const RealSdp& problem, int max_iterations, double target);

}  // namespace beamsim::detail
