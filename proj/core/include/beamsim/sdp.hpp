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

#include <optional>
#include <string_view>
#include <vector>

#include "beamsim/hermitian.hpp"

namespace beamsim {

enum class Sense { LessEqual, Equal, GreaterEqual };

struct SdpConstraint {
  HermitianMatrix matrix;
  Sense sense = Sense::Equal;
  double rhs = 0.0;
};

/// minimize tr(objective * Y) subject to tr(A_i Y) {<=,=,>=} b_i, Y PSD Hermitian.
struct SdpProblem {
  HermitianMatrix objective;
  std::vector<SdpConstraint> constraints;

  Eigen::Index dim() const { return objective.dim(); }
  /// Throws std::invalid_argument on empty or dimension-mismatched data.
  void validate() const;
};

struct SdpTolerances {
  double feas_tol = 1e-8;  // absolute, on tr(A_i Y) - b_i
  double gap_tol = 1e-8;   // relative, |p - d| / (1 + |p| + |d|)
  int max_iterations = 120;
};

enum class SdpStatus { Optimal, Infeasible, Unbounded, NumericalTrouble };

std::string_view to_string(SdpStatus s);

struct SdpSolution {
  HermitianMatrix primal;
  double objective_value = 0.0;
  double dual_objective = 0.0;
  SdpStatus status = SdpStatus::NumericalTrouble;
  double duality_gap = 0.0;    // relative
  double max_violation = 0.0;  // absolute, over all constraints
  /// One multiplier per input constraint, in input order, with the sign
  /// convention of the Lagrangian tr(C Y) - sum_i z_i (tr(A_i Y) - b_i):
  /// z_i <= 0 for "<=", z_i >= 0 for ">=", free for "=".
  std::optional<std::vector<double>> duals;
  int iterations = 0;
  int numerical_rank = 0;
  RVector eigenvalues;   // ascending
  CMatrix eigenvectors;  // columns match eigenvalues
};

/// Primal-dual interior-point solve (HKM direction, Mehrotra predictor-corrector)
/// on the real-symmetric embedding of the Hermitian program.
SdpSolution solve_sdp(const SdpProblem& problem, const SdpTolerances& tol = {});

/// Number of eigenvalues above tol_fraction * lambda_max.
int numerical_rank(const HermitianMatrix& y, double tol_fraction = 1e-7);

/// Y = sum_r p_r p_r^H over the numerical range of Y, largest eigenvalue first.
/// Each p_r is a scaled eigenvector whose largest-magnitude entry is real
/// positive. Throws std::domain_error if Y has an eigenvalue below
/// -1e-8 * max(1, lambda_max).
std::vector<CVector> psd_factorize(const HermitianMatrix& y, double tol_fraction = 1e-7);

}  // namespace beamsim
