//
// Copyright 2026 The dperm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef DPERM_INTERVALS_HPP_
#define DPERM_INTERVALS_HPP_

#include <cstdint>
#include <utility>
#include <vector>

#include "dperm/core_types.hpp"
#include "dperm/erm.hpp"
#include "dperm/losses.hpp"
#include "dperm/mechanisms.hpp"
#include "dperm/rng.hpp"

namespace dperm {

// Privately released curvature and gradient-covariance estimates at the fit,
// the two ingredients of the asymptotic distribution of theta_tilde around
// the population minimizer. Both satisfy the SPDMatrix guarantees with floor
// 2c, so they factorize unconditionally.
struct AsymptoticPieces {
  SPDMatrix hessian;
  SPDMatrix covariance;
  std::int64_t n = 0;
};

struct CISpec {
  double alpha = 0.05;
  std::int64_t m = 10000;  // Monte-Carlo sample count; >= 100 enforced
  CIMethod method = CIMethod::kMonteCarloDP;
};

// Mean per-record loss Hessian at theta plus the 2cI regularizer curvature.
Matrix empirical_hessian(const Dataset& data, const LossModel& model, const Vector& theta,
                         double c);

// Mean outer product of per-record loss gradients minus the 4c^2 theta
// theta^T correction. May be indefinite; callers project it before use.
Matrix empirical_covariance(const Dataset& data, const LossModel& model, const Vector& theta,
                            double c);

// Builds both pieces at fit.theta_tilde and privatizes each with its own
// budget (phi2 for the Hessian, phi3 for the covariance; same kind). The
// logistic covariance sensitivity is evaluated at the released theta_tilde,
// which is the only theta an attacker can see anyway.
AsymptoticPieces estimate_pieces(const Dataset& data, const LossModel& model,
                                 const PrivateFit& fit, const PrivacyBudget& phi2,
                                 const PrivacyBudget& phi3, NoiseSource& noise);
AsymptoticPieces estimate_pieces(const Dataset& data, const LossModel& model,
                                 const PrivateFit& fit, const PrivacyBudget& phi2,
                                 const PrivacyBudget& phi3, RngStream rng);

// Ascending-order empirical quantile interval. Endpoints are the 1-based
// order statistics at index ceil(q * m) for q = alpha/2 and 1 - alpha/2.
std::pair<double, double> empirical_quantile_interval(std::vector<double> samples, double alpha);

// Monte-Carlo interval for an objective-perturbation fit: per sample draws
// G ~ N(0, Sigma_tilde) and a fresh tilt beta from the training rate
// (carried eps_prime), forms
//   H_tilde^{-1} (G + beta / sqrt(n)) / sqrt(n),
// and takes per-coordinate empirical quantiles around theta_tilde. Requires
// spec.method == kMonteCarloDP; post-processing of released quantities only,
// so it spends no extra budget.
IntervalSet ci_objective(const PrivateFit& fit, const AsymptoticPieces& pieces, const CISpec& spec,
                         NoiseSource& noise);
IntervalSet ci_objective(const PrivateFit& fit, const AsymptoticPieces& pieces, const CISpec& spec,
                         RngStream rng);

// Intervals for an output-perturbation fit.
// Pure DP (kMonteCarloDP): per sample draws the release noise beta at the
// stored gamma and G ~ N(0, Sigma_tilde), forms -beta + H_tilde^{-1} G /
// sqrt(n), and takes empirical quantiles around theta_tilde.
// zCDP (kClosedFormZCDP): no sampling; per-coordinate half-width
//   z_{alpha/2} * sqrt(U_jj),
//   U = sigma2 * I + H_tilde^{-1} Sigma_tilde H_tilde^{-1} / n,
// with sigma2 the stored release variance. The method must match the fit's
// mechanism or MechanismMismatch is raised.
IntervalSet ci_output(const PrivateFit& fit, const AsymptoticPieces& pieces, const CISpec& spec,
                      NoiseSource& noise);
IntervalSet ci_output(const PrivateFit& fit, const AsymptoticPieces& pieces, const CISpec& spec,
                      RngStream rng);

}  // namespace dperm

#endif  // DPERM_INTERVALS_HPP_
