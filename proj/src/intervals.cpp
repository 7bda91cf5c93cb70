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

#include "dperm/intervals.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>
#include <string>

#include "dperm/errors.hpp"
#include "dperm/stats.hpp"

namespace dperm {
namespace {

void check_spec(const CISpec& spec) {
  if (!std::isfinite(spec.alpha) || spec.alpha <= 0.0 || spec.alpha >= 1.0) {
    throw InvalidArgument("alpha must lie in (0, 1), got " + std::to_string(spec.alpha));
  }
  if (spec.method == CIMethod::kMonteCarloDP && spec.m < 100) {
    throw InvalidArgument("Monte-Carlo intervals need m >= 100, got " + std::to_string(spec.m));
  }
}

void check_pieces(const PrivateFit& fit, const AsymptoticPieces& pieces) {
  validate_fit(fit);
  const Eigen::Index d = fit.theta_tilde.size();
  if (pieces.hessian.entries.rows() != d || pieces.covariance.entries.rows() != d) {
    throw DimensionMismatch("asymptotic pieces do not match the fit dimension");
  }
  if (pieces.n != fit.n) {
    throw DimensionMismatch("pieces were built for n = " + std::to_string(pieces.n) +
                            " but the fit has n = " + std::to_string(fit.n));
  }
}

// Per-coordinate quantile interval over a sample matrix (one row per draw),
// offset by the released point estimate.
IntervalSet quantile_intervals_around(const Vector& center, const Matrix& draws, double alpha) {
  const Eigen::Index d = center.size();
  Vector lo(d);
  Vector hi(d);
  std::vector<double> column(static_cast<std::size_t>(draws.rows()));
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index i = 0; i < draws.rows(); ++i) {
      column[static_cast<std::size_t>(i)] = draws(i, j);
    }
    const auto [a, b] = empirical_quantile_interval(column, alpha);
    lo(j) = center(j) + a;
    hi(j) = center(j) + b;
  }
  return make_interval_set(std::move(lo), std::move(hi), alpha, CIMethod::kMonteCarloDP);
}

}  // namespace

Matrix empirical_hessian(const Dataset& data, const LossModel& model, const Vector& theta,
                         double c) {
  if (!std::isfinite(c) || c <= 0.0) {
    throw InvalidArgument("c must be positive and finite, got " + std::to_string(c));
  }
  if (theta.size() != data.dim()) {
    throw DimensionMismatch("theta has dimension " + std::to_string(theta.size()) +
                            ", expected " + std::to_string(data.dim()));
  }
  const Vector z = (data.features() * theta).cwiseProduct(data.labels());
  Vector w(z.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    w(i) = model.second_deriv(z(i));
  }
  const double n = static_cast<double>(data.n());
  Matrix hess = data.features().transpose() * w.asDiagonal() * data.features() / n;
  hess += 2.0 * c * Matrix::Identity(data.dim(), data.dim());
  return 0.5 * (hess + Matrix(hess.transpose()));
}

Matrix empirical_covariance(const Dataset& data, const LossModel& model, const Vector& theta,
                            double c) {
  if (!std::isfinite(c) || c <= 0.0) {
    throw InvalidArgument("c must be positive and finite, got " + std::to_string(c));
  }
  if (theta.size() != data.dim()) {
    throw DimensionMismatch("theta has dimension " + std::to_string(theta.size()) +
                            ", expected " + std::to_string(data.dim()));
  }
  const Vector z = (data.features() * theta).cwiseProduct(data.labels());
  Vector w(z.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    // Per-record gradient is f'(z_i) y_i x_i; labels square away in the
    // outer product, so weight rows by f'(z_i)^2.
    const double g = model.deriv(z(i));
    w(i) = g * g;
  }
  const double n = static_cast<double>(data.n());
  Matrix cov = data.features().transpose() * w.asDiagonal() * data.features() / n;
  cov -= 4.0 * c * c * (theta * theta.transpose());
  return 0.5 * (cov + Matrix(cov.transpose()));
}

AsymptoticPieces estimate_pieces(const Dataset& data, const LossModel& model,
                                 const PrivateFit& fit, const PrivacyBudget& phi2,
                                 const PrivacyBudget& phi3, NoiseSource& noise) {
  validate_fit(fit);
  if (phi2.kind != phi3.kind) {
    throw InvalidArgument("phi2 and phi3 must share one budget kind");
  }
  if (fit.theta_tilde.size() != data.dim()) {
    throw DimensionMismatch("fit dimension " + std::to_string(fit.theta_tilde.size()) +
                            " does not match the dataset dimension " +
                            std::to_string(data.dim()));
  }
  AsymptoticPieces pieces;
  const Matrix hess = empirical_hessian(data, model, fit.theta_tilde, fit.c);
  pieces.hessian =
      priv_spd_mat(hess, hessian_sensitivity(model, data.n()), phi2, fit.c, noise);
  const Matrix cov = empirical_covariance(data, model, fit.theta_tilde, fit.c);
  pieces.covariance =
      priv_spd_mat(cov, covariance_sensitivity(model, data.n(), fit.theta_tilde), phi3, fit.c,
                   noise);
  pieces.n = data.n();
  return pieces;
}

AsymptoticPieces estimate_pieces(const Dataset& data, const LossModel& model,
                                 const PrivateFit& fit, const PrivacyBudget& phi2,
                                 const PrivacyBudget& phi3, RngStream rng) {
  Sampler sampler(rng);
  return estimate_pieces(data, model, fit, phi2, phi3, sampler);
}

std::pair<double, double> empirical_quantile_interval(std::vector<double> samples, double alpha) {
  if (samples.empty()) {
    throw EmptySamples();
  }
  if (!std::isfinite(alpha) || alpha <= 0.0 || alpha >= 1.0) {
    throw InvalidArgument("alpha must lie in (0, 1), got " + std::to_string(alpha));
  }
  std::sort(samples.begin(), samples.end());
  const double m = static_cast<double>(samples.size());
  // 1-based order statistics; ceil keeps the index inside [1, m] for any
  // q in (0, 1).
  const auto order_stat = [&](double q) {
    const auto idx = static_cast<std::size_t>(std::ceil(q * m));
    return samples[idx - 1];
  };
  return {order_stat(alpha / 2.0), order_stat(1.0 - alpha / 2.0)};
}

IntervalSet ci_objective(const PrivateFit& fit, const AsymptoticPieces& pieces, const CISpec& spec,
                         NoiseSource& noise) {
  check_spec(spec);
  check_pieces(fit, pieces);
  if (fit.mechanism != Mechanism::kObjectivePerturb) {
    throw MechanismMismatch("ci_objective needs an objective-perturbation fit");
  }
  if (spec.method != CIMethod::kMonteCarloDP) {
    throw MechanismMismatch("objective-perturbation intervals are Monte-Carlo only");
  }
  const Eigen::Index d = fit.theta_tilde.size();
  const double sqrt_n = std::sqrt(static_cast<double>(fit.n));
  const Matrix cov_root = spd_sqrt(pieces.covariance);
  Eigen::LLT<Matrix> hess_llt(pieces.hessian.entries);
  if (hess_llt.info() != Eigen::Success) {
    throw EigenFailure("private Hessian is not positive definite");
  }
  Matrix draws(spec.m, d);
  for (std::int64_t i = 0; i < spec.m; ++i) {
    const Vector g = cov_root * noise.gaussian_iso(static_cast<int>(d), 1.0);
    const Vector beta = noise.spherical_laplace(static_cast<int>(d), *fit.gamma);
    draws.row(i) = (hess_llt.solve(g + beta / sqrt_n) / sqrt_n).transpose();
  }
  return quantile_intervals_around(fit.theta_tilde, draws, spec.alpha);
}

IntervalSet ci_objective(const PrivateFit& fit, const AsymptoticPieces& pieces, const CISpec& spec,
                         RngStream rng) {
  Sampler sampler(rng);
  return ci_objective(fit, pieces, spec, sampler);
}

IntervalSet ci_output(const PrivateFit& fit, const AsymptoticPieces& pieces, const CISpec& spec,
                      NoiseSource& noise) {
  check_spec(spec);
  check_pieces(fit, pieces);
  const Eigen::Index d = fit.theta_tilde.size();
  const double n = static_cast<double>(fit.n);
  if (fit.mechanism == Mechanism::kOutputPerturbDP) {
    if (spec.method != CIMethod::kMonteCarloDP) {
      throw MechanismMismatch("a pure-DP output fit takes Monte-Carlo intervals");
    }
    const double sqrt_n = std::sqrt(n);
    const Matrix cov_root = spd_sqrt(pieces.covariance);
    Eigen::LLT<Matrix> hess_llt(pieces.hessian.entries);
    if (hess_llt.info() != Eigen::Success) {
      throw EigenFailure("private Hessian is not positive definite");
    }
    Matrix draws(spec.m, d);
    for (std::int64_t i = 0; i < spec.m; ++i) {
      const Vector beta = noise.spherical_laplace(static_cast<int>(d), *fit.gamma);
      const Vector g = cov_root * noise.gaussian_iso(static_cast<int>(d), 1.0);
      draws.row(i) = (-beta + hess_llt.solve(g) / sqrt_n).transpose();
    }
    return quantile_intervals_around(fit.theta_tilde, draws, spec.alpha);
  }
  if (fit.mechanism != Mechanism::kOutputPerturbZCDP) {
    throw MechanismMismatch("ci_output needs an output-perturbation fit");
  }
  if (spec.method != CIMethod::kClosedFormZCDP) {
    throw MechanismMismatch("a zCDP output fit takes the closed-form interval");
  }
  // U = sigma2 I + H^{-1} Sigma H^{-1} / n; both release noise and sampling
  // noise are Gaussian here, so the quantile is exact rather than simulated.
  Eigen::LLT<Matrix> hess_llt(pieces.hessian.entries);
  if (hess_llt.info() != Eigen::Success) {
    throw EigenFailure("private Hessian is not positive definite");
  }
  const Matrix inner = hess_llt.solve(pieces.covariance.entries);
  const Matrix sandwich = hess_llt.solve(Matrix(inner.transpose()));
  const Matrix u = *fit.sigma2 * Matrix::Identity(d, d) + sandwich / n;
  const double z = normal_quantile(1.0 - spec.alpha / 2.0);
  Vector lo(d);
  Vector hi(d);
  for (Eigen::Index j = 0; j < d; ++j) {
    const double half_width = z * std::sqrt(std::max(u(j, j), 0.0));
    lo(j) = fit.theta_tilde(j) - half_width;
    hi(j) = fit.theta_tilde(j) + half_width;
  }
  return make_interval_set(std::move(lo), std::move(hi), spec.alpha, CIMethod::kClosedFormZCDP);
}

IntervalSet ci_output(const PrivateFit& fit, const AsymptoticPieces& pieces, const CISpec& spec,
                      RngStream rng) {
  Sampler sampler(rng);
  return ci_output(fit, pieces, spec, sampler);
}

}  // namespace dperm
