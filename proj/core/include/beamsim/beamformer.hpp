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

#include "beamsim/hermitian.hpp"

namespace beamsim {

struct BeamformerOutput {
  CVector weights;
  double output_sinr_db = 0.0;
  double output_power_db = 0.0;
};

/// w = R^-1 a / (a^H R^-1 a)
CVector mvdr_weights(const HermitianMatrix& r_hat, const CVector& a);

/// 1 / (a^H R^-1 a)
double output_power(const HermitianMatrix& r_hat, const CVector& a);

/// sigma_s^2 |w^H a| ^2 / (w^H R_in w)
double output_sinr(const CVector& w, const CVector& a_true, double signal_power, const HermitianMatrix& r_in);

/// sigma_s^2 a^H R_in^-1 a, the largest SINR any weight vector reaches.
double optimal_sinr(const CVector& a_true, double signal_power, const HermitianMatrix& r_in);

/// Weights for the estimate plus SINR and power in dB.
BeamformerOutput evaluate_beamformer(const HermitianMatrix& r_hat, const CVector& a_est, const CVector& a_true,
                                     double signal_power, const HermitianMatrix& r_in);

double to_db(double linear);

}  // namespace beamsim
