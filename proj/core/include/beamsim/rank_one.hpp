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

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "beamsim/hermitian.hpp"

namespace beamsim {

struct DecompositionResult {
  std::vector<CVector> vectors;
  /// residuals[r] = {x_r^H A x_r - tr(AX)/R, x_r^H B x_r - tr(BX)/R}
  std::vector<std::array<double, 2>> residuals;
  /// max |residual| / (||M||_F tr(X) / R) over vectors and both matrices
  double max_relative_residual = 0.0;
  /// ||sum_r x_r x_r^H - X||_F
  double reconstruction_error = 0.0;
};

/// X = sum_r x_r x_r^H with x_r^H A x_r = tr(AX)/R and x_r^H B x_r = tr(BX)/R
/// for every r, R = numerical_rank(X). Throws std::domain_error when X is not PSD.
DecompositionResult decompose_d1(const HermitianMatrix& x, const HermitianMatrix& a,
                                 const HermitianMatrix& b);

enum class D2Status { Success, RankTooLow, Degenerate, ConstructionFailed };

std::string_view to_string(D2Status s);

struct D2Result {
  D2Status status = D2Status::ConstructionFailed;
  std::optional<CVector> x;
  /// max_i |x^H A_i x - tr(A_i X)| / max(|tr(A_i X)|, ||A_i||_F tr(X))
  double max_relative_residual = 0.0;
  int starts_tried = 0;
};

/// Finds x in Range(X) with x^H A_i x = tr(A_i X) for i = 1..4. Needs rank(X) >= 3.
/// A result with status Success always meets the equalities to 1e-6 relative.
D2Result decompose_d2(const HermitianMatrix& x, const std::array<HermitianMatrix, 4>& a);

/// Rank-two variant: the vector is sought in span(Range(X), z). Targets are the
/// same traces tr(A_i X).
D2Result extend_span_rank2(const HermitianMatrix& x, const std::array<HermitianMatrix, 4>& a,
                           const CVector& z);

/// a * exp(-j arg(a0^H a)). Returns a unchanged when a0^H a = 0.
CVector phase_rotate(const CVector& a, const CVector& a0);

}  // namespace beamsim
