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

#include "dperm/erm.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <string>

#include "dperm/errors.hpp"

namespace dperm {
namespace {

void check_train_config(const TrainConfig& cfg) {
  if (!std::isfinite(cfg.c) || cfg.c <= 0.0) {
    throw InvalidArgument("c must be positive and finite, got " + std::to_string(cfg.c));
  }
  if (!std::isfinite(cfg.tol) || cfg.tol <= 0.0) {
    throw InvalidArgument("tol must be positive and finite, got " + std::to_string(cfg.tol));
  }
  if (cfg.max_iter < 1) {
    throw InvalidArgument("max_iter must be >= 1, got " + std::to_string(cfg.max_iter));
  }
}

void check_beta(const Dataset& data, const Vector* beta) {
  if (beta != nullptr && beta->size() != data.dim()) {
    throw DimensionMismatch("beta has dimension " + std::to_string(beta->size()) +
                            ", expected " + std::to_string(data.dim()));
  }
}

// Margins z_i = y_i * (x_i . theta) for the whole dataset at once.
Vector margins(const Dataset& data, const Vector& theta) {
  if (theta.size() != data.dim()) {
    throw DimensionMismatch("theta has dimension " + std::to_string(theta.size()) +
                            ", expected " + std::to_string(data.dim()));
  }
  return (data.features() * theta).cwiseProduct(data.labels());
}

double value_impl(const Dataset& data, const LossModel& model, const TrainConfig& cfg,
                  const Vector& theta, const Vector* beta) {
  const Vector z = margins(data, theta);
  double sum = 0.0;
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    sum += model.value(z(i));
  }
  const double n = static_cast<double>(data.n());
  double out = sum / n + cfg.c * theta.squaredNorm();
  if (beta != nullptr) {
    out += beta->dot(theta) / n;
  }
  return out;
}

Vector gradient_impl(const Dataset& data, const LossModel& model, const TrainConfig& cfg,
                     const Vector& theta, const Vector* beta) {
  const Vector z = margins(data, theta);
  Vector w(z.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    w(i) = model.deriv(z(i));
  }
  const double n = static_cast<double>(data.n());
  Vector grad =
      data.features().transpose() * w.cwiseProduct(data.labels()) / n + 2.0 * cfg.c * theta;
  if (beta != nullptr) {
    grad += *beta / n;
  }
  return grad;
}

Matrix hessian_impl(const Dataset& data, const LossModel& model, const TrainConfig& cfg,
                    const Vector& theta) {
  const Vector z = margins(data, theta);
  Vector w(z.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    w(i) = model.second_deriv(z(i));
  }
  const double n = static_cast<double>(data.n());
  Matrix hess = data.features().transpose() * w.asDiagonal() * data.features() / n;
  hess += 2.0 * cfg.c * Matrix::Identity(data.dim(), data.dim());
  return hess;
}

Vector solve_impl(const Dataset& data, const LossModel& model, const TrainConfig& cfg,
                  const Vector* beta) {
  check_train_config(cfg);
  check_beta(data, beta);
  Vector theta = Vector::Zero(data.dim());
  double fx = value_impl(data, model, cfg, theta, beta);
  for (int iter = 0; iter < cfg.max_iter; ++iter) {
    const Vector grad = gradient_impl(data, model, cfg, theta, beta);
    if (grad.norm() <= cfg.tol) {
      return theta;
    }
    Vector direction;
    if (cfg.solver == SolverKind::kNewton) {
      const Matrix hess = hessian_impl(data, model, cfg, theta);
      Eigen::LLT<Matrix> llt(hess);
      if (llt.info() == Eigen::Success) {
        direction = llt.solve(-grad);
      } else {
        direction = -grad;
      }
    } else {
      direction = -grad;
    }
    // Halve the step until the objective decreases. Strong convexity plus a
    // descent direction guarantees this terminates; the hard cap only guards
    // against float underflow of the step itself.
    double step = 1.0;
    double fnext = value_impl(data, model, cfg, theta + step * direction, beta);
    while (fnext > fx && step > 1e-20) {
      step *= 0.5;
      fnext = value_impl(data, model, cfg, theta + step * direction, beta);
    }
    if (fnext >= fx) {
      // Near the optimum the true decrease falls below the summation noise
      // of the objective: the search either stays above fx at every step or
      // finds a microstep whose value ties fx bit for bit, and accepting the
      // tie would spin without representable progress. The gradient's noise
      // floor sits orders of magnitude lower, so fall back to the full step
      // whenever it contracts the gradient; on the terminal iterate it lands
      // inside the tolerance.
      const Vector trial = theta + direction;
      if (gradient_impl(data, model, cfg, trial, beta).norm() < grad.norm()) {
        theta = trial;
        fx = value_impl(data, model, cfg, theta, beta);
        continue;
      }
      break;  // No representable progress; report the iterations spent.
    }
    theta += step * direction;
    fx = fnext;
  }
  if (gradient_impl(data, model, cfg, theta, beta).norm() <= cfg.tol) {
    return theta;
  }
  throw NoConvergence(cfg.max_iter);
}

}  // namespace

double objective_value(const Dataset& data, const LossModel& model, const TrainConfig& cfg,
                       const Vector& theta) {
  check_train_config(cfg);
  return value_impl(data, model, cfg, theta, nullptr);
}

double objective_value(const Dataset& data, const LossModel& model, const TrainConfig& cfg,
                       const Vector& theta, const Vector& beta) {
  check_train_config(cfg);
  check_beta(data, &beta);
  return value_impl(data, model, cfg, theta, &beta);
}

Vector objective_gradient(const Dataset& data, const LossModel& model, const TrainConfig& cfg,
                          const Vector& theta) {
  check_train_config(cfg);
  return gradient_impl(data, model, cfg, theta, nullptr);
}

Vector objective_gradient(const Dataset& data, const LossModel& model, const TrainConfig& cfg,
                          const Vector& theta, const Vector& beta) {
  check_train_config(cfg);
  check_beta(data, &beta);
  return gradient_impl(data, model, cfg, theta, &beta);
}

Vector solve_erm(const Dataset& data, const LossModel& model, const TrainConfig& cfg) {
  return solve_impl(data, model, cfg, nullptr);
}

Vector solve_erm(const Dataset& data, const LossModel& model, const TrainConfig& cfg,
                 const Vector& beta) {
  return solve_impl(data, model, cfg, &beta);
}

PrivateFit train_objective_perturbation(const Dataset& data, const LossModel& model,
                                        const TrainConfig& cfg, const PrivacyBudget& eps,
                                        NoiseSource& noise) {
  check_train_config(cfg);
  if (eps.kind != BudgetKind::kPureDP) {
    throw MechanismMismatch("objective perturbation needs a pure-DP budget");
  }
  if (!std::isfinite(eps.value) || eps.value <= 0.0) {
    throw InvalidArgument("epsilon must be positive and finite");
  }
  const double n = static_cast<double>(data.n());
  const double t = model.curvature_bound();
  const double threshold = t / (2.0 * n * std::expm1(eps.value));
  if (cfg.c < threshold) {
    throw BudgetTooSmall("c = " + std::to_string(cfg.c) + " is below t/(2n(e^eps - 1)) = " +
                         std::to_string(threshold));
  }
  const double eps_prime = eps.value - std::log1p(t / (2.0 * n * cfg.c));
  if (eps_prime <= 0.0) {
    // Only reachable at the exact threshold boundary, where the tilt rate
    // would degenerate to zero.
    throw BudgetTooSmall("residual budget after the curvature charge is not positive");
  }
  const double gamma = eps_prime / 2.0;
  const Vector beta = noise.spherical_laplace(data.dim(), gamma);
  PrivateFit fit;
  fit.theta_tilde = solve_erm(data, model, cfg, beta);
  fit.mechanism = Mechanism::kObjectivePerturb;
  fit.gamma = gamma;
  fit.eps_prime = eps_prime;
  fit.n = data.n();
  fit.c = cfg.c;
  validate_fit(fit);
  return fit;
}

PrivateFit train_objective_perturbation(const Dataset& data, const LossModel& model,
                                        const TrainConfig& cfg, const PrivacyBudget& eps,
                                        RngStream rng) {
  Sampler sampler(rng);
  return train_objective_perturbation(data, model, cfg, eps, sampler);
}

PrivateFit train_output_perturbation(const Dataset& data, const LossModel& model,
                                     const TrainConfig& cfg, const PrivacyBudget& phi,
                                     NoiseSource& noise) {
  check_train_config(cfg);
  if (!std::isfinite(phi.value) || phi.value <= 0.0) {
    throw InvalidArgument("budget must be positive and finite");
  }
  const Vector theta_hat = solve_erm(data, model, cfg);
  const double nc = static_cast<double>(data.n()) * cfg.c;
  PrivateFit fit;
  fit.n = data.n();
  fit.c = cfg.c;
  if (phi.kind == BudgetKind::kPureDP) {
    const double gamma = nc * phi.value;
    fit.theta_tilde = theta_hat + noise.spherical_laplace(data.dim(), gamma);
    fit.mechanism = Mechanism::kOutputPerturbDP;
    fit.gamma = gamma;
  } else {
    const double sigma2 = 1.0 / (2.0 * phi.value * nc * nc);
    fit.theta_tilde = theta_hat + noise.gaussian_iso(data.dim(), sigma2);
    fit.mechanism = Mechanism::kOutputPerturbZCDP;
    fit.sigma2 = sigma2;
  }
  validate_fit(fit);
  return fit;
}

PrivateFit train_output_perturbation(const Dataset& data, const LossModel& model,
                                     const TrainConfig& cfg, const PrivacyBudget& phi,
                                     RngStream rng) {
  Sampler sampler(rng);
  return train_output_perturbation(data, model, cfg, phi, sampler);
}

}  // namespace dperm
