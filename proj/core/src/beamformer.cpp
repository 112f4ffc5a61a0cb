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

#include "beamsim/beamformer.hpp"

#include <cmath>
#include <stdexcept>

namespace beamsim {

namespace {

CVector solve_pd(const HermitianMatrix& r, const CVector& a) {
  if (a.size() != r.dim()) throw std::invalid_argument("beamformer: size mismatch");
  Eigen::LLT<CMatrix> llt(r.matrix());
  if (llt.info() != Eigen::Success) throw std::domain_error("beamformer: covariance is not positive definite");
  return llt.solve(a);
}

}  // namespace

CVector mvdr_weights(const HermitianMatrix& r_hat, const CVector& a) {
  if (a.norm() == 0.0) throw std::invalid_argument("mvdr_weights: zero steering vector");
  const CVector ra = solve_pd(r_hat, a);
  return ra / a.dot(ra).real();
}

double output_power(const HermitianMatrix& r_hat, const CVector& a) {
  return 1.0 / a.dot(solve_pd(r_hat, a)).real();
}

double output_sinr(const CVector& w, const CVector& a_true, double signal_power, const HermitianMatrix& r_in) {
  if (w.norm() == 0.0) throw std::invalid_argument("output_sinr: zero weights");
  return signal_power * std::norm(w.dot(a_true)) / r_in.quadratic_form(w);
}

double optimal_sinr(const CVector& a_true, double signal_power, const HermitianMatrix& r_in) {
  return signal_power * a_true.dot(solve_pd(r_in, a_true)).real();
}

BeamformerOutput evaluate_beamformer(const HermitianMatrix& r_hat, const CVector& a_est, const CVector& a_true,
                                     double signal_power, const HermitianMatrix& r_in) {
  BeamformerOutput out;
  out.weights = mvdr_weights(r_hat, a_est);
  out.output_sinr_db = to_db(output_sinr(out.weights, a_true, signal_power, r_in));
  out.output_power_db = to_db(output_power(r_hat, a_est));
  return out;
}

double to_db(double linear) { return 10.0 * std::log10(linear); }

}  // namespace beamsim
