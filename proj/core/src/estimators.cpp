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

#include "beamsim/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>

#include "beamsim/array_model.hpp"
#include "beamsim/rank_one.hpp"

namespace beamsim {

namespace {

constexpr double kFeasTol = 1e-7;
constexpr double kGapTol = 1e-6;
constexpr double kSlackMargin = 1e-7;
constexpr double kTinyT = 1e-6;

bool strictly_below(double value, double rhs) { return rhs - value > kSlackMargin * std::max(1.0, std::abs(rhs)); }

bool tight(double achieved, double sdp) { return std::abs(achieved - sdp) <= kGapTol * std::max(1.0, std::abs(sdp)); }

HermitianMatrix corner(Eigen::Index n) {
  CMatrix m = CMatrix::Zero(n + 1, n + 1);
  m(n, n) = 1.0;
  return HermitianMatrix(m);
}

HermitianMatrix homogeneous_ball(const HermitianMatrix& k, const CVector& a0) {
  const Eigen::Index n = k.dim();
  const CVector ka0 = k.matrix() * a0;
  CMatrix m(n + 1, n + 1);
  m.topLeftCorner(n, n) = k.matrix();
  m.topRightCorner(n, 1) = -ka0;
  m.bottomLeftCorner(1, n) = -ka0.adjoint();
  m(n, n) = a0.dot(ka0).real();
  return HermitianMatrix(m);
}

// (A0; A1 sector, A2 norm, A3 ball, A4 pin) of the homogenized program.
struct Homogeneous {
  SdpProblem problem;
  HermitianMatrix a1;  // sector, in the "<= s0" orientation
  double s0 = 0.0;
  HermitianMatrix a2;
  HermitianMatrix a3;
  HermitianMatrix a4;
};

Homogeneous build_homogeneous(const QcqpInstance& inst) {
  const Eigen::Index n = inst.objective.dim();
  Homogeneous h;
  h.a1 = augment(inst.sector_upper ? inst.sector : -inst.sector);
  h.s0 = inst.sector_upper ? inst.sector_rhs : -inst.sector_rhs;
  h.a2 = augment(HermitianMatrix::identity(n));
  h.a3 = homogeneous_ball(inst.shape, inst.a0);
  h.a4 = corner(n);
  h.problem.objective = augment(inst.objective);
  h.problem.constraints.push_back({augment(inst.sector), inst.sector_upper ? Sense::LessEqual : Sense::GreaterEqual,
                                   inst.sector_rhs});
  if (inst.norm_min == inst.norm_max) {
    h.problem.constraints.push_back({h.a2, Sense::Equal, inst.norm_min});
  } else {
    h.problem.constraints.push_back({h.a2, Sense::GreaterEqual, inst.norm_min});
    h.problem.constraints.push_back({h.a2, Sense::LessEqual, inst.norm_max});
  }
  h.problem.constraints.push_back({h.a3, Sense::LessEqual, inst.epsilon});
  h.problem.constraints.push_back({h.a4, Sense::Equal, 1.0});
  return h;
}

bool solved(EstimateResult& e, const SdpSolution& sol) {
  e.sdp_status = sol.status;
  e.sdp_value = sol.objective_value;
  e.numerical_rank = sol.numerical_rank;
  if (sol.status == SdpStatus::Infeasible || sol.status == SdpStatus::Unbounded) {
    e.certificate = Certificate::Failed;
    e.message = std::string("relaxation ") + std::string(to_string(sol.status));
    return false;
  }
  return true;
}

// Fills achieved value and violation, and sets the certificate.
void finalize(EstimateResult& e, const QcqpInstance& inst, bool certify) {
  e.achieved_value = inst.objective_value(e.a_star);
  e.max_violation = inst.violation(e.a_star);
  if (!(e.max_violation <= kFeasTol)) {
    e.certificate = Certificate::Failed;
    if (e.message.empty()) e.message = "estimate violates the constraints";
    return;
  }
  const bool ok = certify && e.sdp_status == SdpStatus::Optimal && tight(e.achieved_value, e.sdp_value);
  e.certificate = ok ? Certificate::GloballyOptimal : Certificate::Approximate;
}

// Index of the factor with the smallest Rayleigh quotient of m.
std::size_t min_quotient(const std::vector<CVector>& v, const HermitianMatrix& m) {
  std::size_t best = 0;
  double bq = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < v.size(); ++k) {
    const double q = m.quadratic_form(v[k]) / v[k].squaredNorm();
    if (q < bq) {
      bq = q;
      best = k;
    }
  }
  return best;
}

EstimateResult kvh_impl(const HermitianMatrix& r_hat, const SectorModel& sector, bool variant) {
  const HermitianMatrix rinv = inverse_pd(r_hat);
  const QcqpInstance inst = kvh_instance(rinv, sector, variant);
  const Eigen::Index n = rinv.dim();
  const auto dn = static_cast<double>(n);

  SdpProblem p;
  p.objective = rinv;
  p.constraints.push_back({inst.sector, variant ? Sense::GreaterEqual : Sense::LessEqual, inst.sector_rhs});
  p.constraints.push_back({HermitianMatrix::identity(n), Sense::Equal, dn});
  const SdpSolution sol = solve_sdp(p);

  EstimateResult e;
  if (!solved(e, sol)) return e;
  const HermitianMatrix& x = sol.primal;
  e.b1 = trace_product(inst.sector, x);
  e.b2 = x.trace();
  const HermitianMatrix eye = HermitianMatrix::identity(n);
  const auto d1 = decompose_d1(x, inst.sector - eye * (e.b1 / e.b2), eye);
  const CVector& v = d1.vectors[min_quotient(d1.vectors, rinv)];
  e.a_star = v * (std::sqrt(dn) / v.norm());
  e.branch = Branch::D1Extraction;
  finalize(e, inst, true);
  return e;
}

EstimateResult ball_impl(const HermitianMatrix& r_hat, const SectorModel& sector, const UncertaintyModel& sim,
                         bool use_c) {
  if (!sim.is_identity()) throw std::invalid_argument("similarity-model solver needs Q = I");
  const HermitianMatrix rinv = inverse_pd(r_hat);
  const QcqpInstance inst = uncertainty_instance(rinv, sector, use_c, sim);
  const Homogeneous h = build_homogeneous(inst);
  const SdpSolution sol = solve_sdp(h.problem);

  EstimateResult e;
  if (!solved(e, sol)) return e;
  const Eigen::Index n = rinv.dim();
  const HermitianMatrix x(CMatrix(sol.primal.matrix().topLeftCorner(n, n)));
  e.b1 = trace_product(inst.sector, x);
  e.b2 = x.trace();
  e.b3 = x.quadratic_form(sim.a0);
  const HermitianMatrix eye = HermitianMatrix::identity(n);
  const auto d1 = decompose_d1(x, inst.sector - eye * (e.b1 / e.b2),
                               HermitianMatrix::outer(sim.a0) - eye * (e.b3 / e.b2));
  const CVector& v = d1.vectors[min_quotient(d1.vectors, rinv)];
  e.a_star = phase_rotate(v * (std::sqrt(e.b2) / v.norm()), sim.a0);
  e.branch = Branch::D1Extraction;
  finalize(e, inst, true);
  return e;
}

struct Candidate {
  CVector a;
  Branch branch = Branch::None;
  bool certifiable = true;
};

EstimateResult general_impl(const HermitianMatrix& r_hat, const SectorModel& sector, const UncertaintyModel& model,
                            bool use_c) {
  const HermitianMatrix rinv = inverse_pd(r_hat);
  const QcqpInstance inst = uncertainty_instance(rinv, sector, use_c, model);
  const Homogeneous h = build_homogeneous(inst);
  const SdpSolution sol = solve_sdp(h.problem);

  EstimateResult e;
  if (!solved(e, sol)) return e;
  const Eigen::Index n = rinv.dim();
  const HermitianMatrix& y = sol.primal;
  const HermitianMatrix x(CMatrix(y.matrix().topLeftCorner(n, n)));
  const CVector xs = y.matrix().topRightCorner(n, 1);
  e.b1 = trace_product(inst.sector, x);
  e.b2 = x.trace();
  e.b3 = x.quadratic_form(model.a0);

  const HermitianMatrix a1p = h.a1 + h.a4 * (-h.s0);
  const HermitianMatrix a2p = h.a2 + h.a4 * (-e.b2);
  const HermitianMatrix a3p = h.a3 + h.a4 * (-inst.epsilon);
  const int rank = sol.numerical_rank;

  e.sector_slack = strictly_below(trace_product(h.a1, y), h.s0);
  e.similarity_slack = strictly_below(trace_product(h.a3, y), inst.epsilon);
  const cplx c = model.a0.dot(inst.shape.matrix() * xs);
  const bool nonneg = std::abs(c) == 0.0 ||
                      (std::abs(c.imag()) <= 1e-8 * std::abs(c) && c.real() >= -1e-8 * std::max(1.0, std::abs(c)));
  e.phase_condition = !e.similarity_slack && !nonneg;
  e.rank_at_least_three = rank >= 3;

  auto objective = [&](const CVector& a) { return rinv.quadratic_form(a); };

  // Qualifying factor with t != 0 and the smallest objective.
  auto pick = [&](const std::vector<CVector>& ys, const std::function<bool(const CVector&)>& accept)
      -> std::optional<CVector> {
    std::optional<CVector> best;
    double bv = std::numeric_limits<double>::infinity();
    for (const auto& yk : ys) {
      const cplx t = yk(n);
      if (!(std::abs(t) > kTinyT * yk.norm())) continue;
      if (!accept(yk)) continue;
      const CVector a = yk.head(n) / t;
      const double v = objective(a);
      if (v < bv) {
        bv = v;
        best = a;
      }
    }
    return best;
  };
  auto from_vector = [&](const CVector& yk) -> std::optional<CVector> {
    const cplx t = yk(n);
    if (!(std::abs(t) > kTinyT * yk.norm())) return std::nullopt;
    return CVector(yk.head(n) / t);
  };

  std::vector<Candidate> tried;
  auto attempt = [&](std::optional<CVector> a, Branch b, bool certifiable) {
    if (!a) return false;
    tried.push_back({*a, b, certifiable});
    if (!certifiable) return false;
    return inst.violation(*a) <= kFeasTol && sol.status == SdpStatus::Optimal &&
           tight(inst.objective_value(*a), sol.objective_value);
  };

  const std::array<HermitianMatrix, 4> amats{h.a1, h.a2, h.a3, h.a4};
  bool done = false;
  if (rank == 1) {
    const auto p = psd_factorize(y);
    done = attempt(from_vector(p.front()), Branch::RankOne, true);
  }
  if (!done && e.sector_slack) {
    const auto d = decompose_d1(y, a2p, a3p);
    done = attempt(pick(d.vectors, [&](const CVector& v) { return a1p.quadratic_form(v) < 0.0; }),
                   Branch::SectorSlack, true);
  }
  if (!done && e.similarity_slack) {
    const auto d = decompose_d1(y, a1p, a2p);
    done = attempt(pick(d.vectors, [&](const CVector& v) { return a3p.quadratic_form(v) < 0.0; }),
                   Branch::SimilaritySlack, true);
  }
  if (!done && e.phase_condition) {
    CVector dg = CVector::Ones(n + 1);
    dg(n) = std::polar(1.0, std::arg(c));
    const HermitianMatrix ybar(CMatrix(dg.asDiagonal() * y.matrix() * dg.conjugate().asDiagonal()));
    const auto d = decompose_d1(ybar, a1p, a2p);
    done = attempt(pick(d.vectors, [&](const CVector& v) { return a3p.quadratic_form(v) < 0.0; }),
                   Branch::PhaseShifted, true);
  }
  if (!done && rank >= 3) {
    const D2Result d2 = decompose_d2(y, amats);
    if (d2.status == D2Status::Success) {
      done = attempt(from_vector(*d2.x), Branch::RankThreeD2, true);
    } else {
      e.d2_failed = true;
    }
  }
  if (!done && rank == 2) {
    Rng rng(0x7a11ULL);
    const D2Result d2 = extend_span_rank2(y, amats, complex_gaussian(n + 1, 1.0, rng));
    if (d2.status == D2Status::Success) attempt(from_vector(*d2.x), Branch::RankTwoSpan, false);
  }
  if (!done) {
    // Any factor of D1(Y*, A2', A3') with A1' <= 0 is feasible.
    const auto d = decompose_d1(y, a2p, a3p);
    const double tol = 1e-10 * std::max(1.0, a1p.frobenius_norm() * y.trace());
    attempt(pick(d.vectors, [&](const CVector& v) { return a1p.quadratic_form(v) <= tol; }),
            Branch::FeasibleFallback, false);
  }

  if (tried.empty()) {
    e.certificate = Certificate::Failed;
    e.message = "no extraction path produced a vector";
    return e;
  }
  if (done) {
    e.a_star = tried.back().a;
    e.branch = tried.back().branch;
    finalize(e, inst, true);
    return e;
  }
  // Best feasible candidate, optimality not certified.
  const Candidate* best = nullptr;
  double bv = std::numeric_limits<double>::infinity();
  for (const auto& cand : tried) {
    if (!(inst.violation(cand.a) <= kFeasTol)) continue;
    const double v = objective(cand.a);
    if (v < bv) {
      bv = v;
      best = &cand;
    }
  }
  if (best == nullptr) best = &tried.back();
  e.a_star = best->a;
  e.branch = best->branch;
  finalize(e, inst, false);
  return e;
}

}  // namespace

std::string_view to_string(Certificate c) {
  switch (c) {
    case Certificate::GloballyOptimal: return "GloballyOptimal";
    case Certificate::Approximate: return "Approximate";
    case Certificate::Failed: return "Failed";
  }
  return "Unknown";
}

std::string_view to_string(Branch b) {
  switch (b) {
    case Branch::None: return "none";
    case Branch::D1Extraction: return "d1";
    case Branch::RankOne: return "rank1";
    case Branch::SectorSlack: return "sector_slack";
    case Branch::SimilaritySlack: return "similarity_slack";
    case Branch::PhaseShifted: return "phase_shift";
    case Branch::RankThreeD2: return "rank3_d2";
    case Branch::RankTwoSpan: return "rank2_span";
    case Branch::FeasibleFallback: return "fallback";
  }
  return "unknown";
}

double QcqpInstance::objective_value(const CVector& a) const { return objective.quadratic_form(a); }

double QcqpInstance::violation(const CVector& a) const {
  double v = 0.0;
  const double s = sector.quadratic_form(a);
  v = std::max(v, sector_upper ? s - sector_rhs : sector_rhs - s);
  const double nrm = a.squaredNorm();
  v = std::max({v, norm_min - nrm, nrm - norm_max});
  if (has_ball) v = std::max(v, shape.quadratic_form(a - a0) - epsilon);
  return v;
}

QcqpInstance kvh_instance(const HermitianMatrix& r_inv, const SectorModel& sector, bool variant) {
  QcqpInstance q;
  q.objective = r_inv;
  q.sector = variant ? sector.c : sector.c_tilde;
  q.sector_rhs = variant ? sector.delta1 : sector.delta0;
  q.sector_upper = !variant;
  q.norm_min = q.norm_max = static_cast<double>(r_inv.dim());
  return q;
}

QcqpInstance uncertainty_instance(const HermitianMatrix& r_inv, const SectorModel& sector, bool use_c,
                                  const UncertaintyModel& model) {
  model.validate();
  const auto dn = static_cast<double>(r_inv.dim());
  if (model.a0.size() != r_inv.dim()) throw std::invalid_argument("uncertainty model size differs from R");
  QcqpInstance q = kvh_instance(r_inv, sector, use_c);
  q.norm_min = dn * (1.0 - model.eta1);
  q.norm_max = dn * (1.0 + model.eta2);
  q.has_ball = true;
  q.shape = model.shape();
  q.a0 = model.a0;
  q.epsilon = model.epsilon;
  return q;
}

EstimateResult solve_kvh(const HermitianMatrix& r_hat, const SectorModel& sector) {
  return kvh_impl(r_hat, sector, false);
}

EstimateResult solve_kvh_variant(const HermitianMatrix& r_hat, const SectorModel& sector) {
  return kvh_impl(r_hat, sector, true);
}

EstimateResult solve_alg1(const HermitianMatrix& r_hat, const SectorModel& sector, const UncertaintyModel& sim) {
  return ball_impl(r_hat, sector, sim, false);
}

EstimateResult solve_alg3(const HermitianMatrix& r_hat, const SectorModel& sector, const UncertaintyModel& sim) {
  return ball_impl(r_hat, sector, sim, true);
}

EstimateResult solve_alg2(const HermitianMatrix& r_hat, const SectorModel& sector, const UncertaintyModel& ell) {
  return general_impl(r_hat, sector, ell, false);
}

EstimateResult solve_alg4(const HermitianMatrix& r_hat, const SectorModel& sector, const UncertaintyModel& ell) {
  return general_impl(r_hat, sector, ell, true);
}

}  // namespace beamsim
