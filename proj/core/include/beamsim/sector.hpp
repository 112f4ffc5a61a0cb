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

#include <iosfwd>
#include <vector>

#include "beamsim/hermitian.hpp"

namespace beamsim {

struct SectorModel {
  HermitianMatrix c_tilde;  // integral of d d^H over [-90, 90] minus the sector
  HermitianMatrix c;        // integral over the sector
  double delta0 = 0.0;      // max over the sector grid of d^H c_tilde d
  double delta1 = 0.0;      // min over the sector grid of d^H c d
  CVector a0;               // d(center)
  double theta_min = 0.0;
  double theta_max = 0.0;
  double grid_step = 0.1;
  int n = 0;
  /// In-sector angles used for delta0 / delta1 (cell midpoints and cell edges).
  std::vector<double> sector_grid;
};

/// Composite midpoint rule in radians at grid_step degrees. A cell belongs to
/// the sector when its midpoint does.
SectorModel build_sector_model(double theta_min, double theta_max, int n, double grid_step = 0.1);

struct UncertaintyModel {
  double eta1 = 0.5;
  double eta2 = 0.5;
  double epsilon = 0.0;
  CMatrix q;  // shape, Q Q^H enters the constraint
  CVector a0;

  /// Q Q^H
  HermitianMatrix shape() const;
  bool is_identity() const;
  void validate() const;
};

/// Q = I, a0 = sector centre response.
UncertaintyModel build_similarity_model(const SectorModel& sector, double eta1, double eta2, double epsilon);
/// Q = I with an explicit centre.
UncertaintyModel build_similarity_model(const CVector& a0, double eta1, double eta2, double epsilon);

/// L equally spaced sector responses; a0 = their mean, P = their covariance +
/// ridge I, Q the lower Cholesky factor of P^{-1}.
UncertaintyModel build_ellipsoid_model(double theta_min, double theta_max, int n, int l, double ridge,
                                       double eta1, double eta2, double epsilon);

/// Angles of the ellipsoid sample set.
std::vector<double> ellipsoid_angles(double theta_min, double theta_max, int l);

/// Text dump: scalars, then "theta d^H C d d^H C~ d" rows over [-90, 90].
void dump_sector_model(std::ostream& os, const SectorModel& m, double curve_step = 0.5);

}  // namespace beamsim
