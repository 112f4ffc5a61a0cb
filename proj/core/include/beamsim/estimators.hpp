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

#include <string>
#include <string_view>

#include "beamsim/hermitian.hpp"
#include "beamsim/sdp.hpp"
#include "beamsim/sector.hpp"

namespace beamsim {

enum class Certificate { GloballyOptimal, Approximate, Failed };

/// How the estimate was pulled out of the relaxed optimum.
enum class Branch {
  None,
  D1Extraction,       // kvh, kvh variant, alg1, alg3
  RankOne,            // Y* already rank one
  SectorSlack,        // sector constraint inactive at Y*
  SimilaritySlack,    // similarity / ellipsoid constraint inactive at Y*
  PhaseShifted,       // active similarity, a0^H K x* not real nonnegative
  RankThreeD2,        // rank(Y*) >= 3, four-matrix decomposition
  RankTwoSpan,        // rank(Y*) = 2, span extension
  FeasibleFallback,   // feasible D1 factor, optimality not certified
};

std::string_view to_string(Certificate c);
std::string_view to_string(Branch b);

struct EstimateResult {
  CVector a_star;
  double sdp_value = 0.0;
  double achieved_value = 0.0;
  Certificate certificate = Certificate::Failed;
  Branch branch = Branch::None;
  SdpStatus sdp_status = SdpStatus::NumericalTrouble;
  double b1 = 0.0;  // tr(S X*) for the sector matrix S of the problem
  double b2 = 0.0;  // tr(X*)
  double b3 = 0.0;  // a0^H X* a0
  int numerical_rank = 0;
  /// Largest violation of the source problem's constraints at a_star.
  double max_violation = 0.0;

  // Conditions evaluated on the relaxed optimum (homogeneous forms only).
  bool sector_slack = false;
  bool similarity_slack = false;
  bool phase_condition = false;
  bool rank_at_least_three = false;
  bool d2_failed = false;

  std::string message;

  double gap() const { return achieved_value - sdp_value; }
};

/// min a^H R^-1 a  s.t.  a^H C~ a <= delta0, ||a||^2 = N
EstimateResult solve_kvh(const HermitianMatrix& r_hat, const SectorModel& sector);
/// min a^H R^-1 a  s.t.  a^H C a >= delta1, ||a||^2 = N
EstimateResult solve_kvh_variant(const HermitianMatrix& r_hat, const SectorModel& sector);

/// Sector constraint with C~ and delta0, norm band, similarity ball. Needs Q = I.
EstimateResult solve_alg1(const HermitianMatrix& r_hat, const SectorModel& sector, const UncertaintyModel& sim);
/// Sector constraint with C~ and delta0, norm band, general ellipsoid.
EstimateResult solve_alg2(const HermitianMatrix& r_hat, const SectorModel& sector, const UncertaintyModel& ell);
/// Sector constraint with C and delta1, norm band, similarity ball. Needs Q = I.
EstimateResult solve_alg3(const HermitianMatrix& r_hat, const SectorModel& sector, const UncertaintyModel& sim);
/// Sector constraint with C and delta1, norm band, general ellipsoid.
EstimateResult solve_alg4(const HermitianMatrix& r_hat, const SectorModel& sector, const UncertaintyModel& ell);

/// Constraint data of the source problems, shared with tests and oracles.
struct QcqpInstance {
  HermitianMatrix objective;  // R^-1
  HermitianMatrix sector;     // C~ or C
  double sector_rhs = 0.0;
  bool sector_upper = true;   // true: a^H S a <= rhs, false: >= rhs
  double norm_min = 0.0;
  double norm_max = 0.0;      // ||a||^2 in [norm_min, norm_max]
  bool has_ball = false;
  HermitianMatrix shape;      // Q Q^H
  CVector a0;
  double epsilon = 0.0;

  double objective_value(const CVector& a) const;
  /// Largest positive constraint violation (0 when feasible).
  double violation(const CVector& a) const;
};

QcqpInstance kvh_instance(const HermitianMatrix& r_inv, const SectorModel& sector, bool variant);
QcqpInstance uncertainty_instance(const HermitianMatrix& r_inv, const SectorModel& sector, bool use_c,
                                  const UncertaintyModel& model);

}  // namespace beamsim
