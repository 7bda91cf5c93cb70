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

#ifndef DPERM_ERM_HPP_
#define DPERM_ERM_HPP_

#include "dperm/core_types.hpp"
#include "dperm/losses.hpp"
#include "dperm/rng.hpp"

namespace dperm {

enum class SolverKind { kNewton, kGradientDescent };

struct TrainConfig {
  double c = 0.001;      // L2 regularization weight; must be > 0
  double tol = 1e-8;     // gradient-norm stopping tolerance
  int max_iter = 200;    // iteration budget before NoConvergence
  SolverKind solver = SolverKind::kNewton;
};

// The regularized empirical objective
//   (1/n) sum_i [ f(y_i theta.x_i) + c ||theta||^2 ]  +  (1/n) beta.theta
// where the linear tilt beta is absent for plain ERM. The regularizer is
// c||theta||^2 per record, so the objective is 2c-strongly convex no matter
// how n scales.
double objective_value(const Dataset& data, const LossModel& model, const TrainConfig& cfg,
                       const Vector& theta);
double objective_value(const Dataset& data, const LossModel& model, const TrainConfig& cfg,
                       const Vector& theta, const Vector& beta);

// Gradient of the same objective; minimizers satisfy a gradient-norm bound
// of cfg.tol, which is the solver-accuracy proxy everything downstream
// assumes.
Vector objective_gradient(const Dataset& data, const LossModel& model, const TrainConfig& cfg,
                          const Vector& theta);
Vector objective_gradient(const Dataset& data, const LossModel& model, const TrainConfig& cfg,
                          const Vector& theta, const Vector& beta);

// Minimizes the objective from theta = 0. Newton with step halving; if the
// Hessian factorization fails the iteration falls back to a plain gradient
// step. Deterministic: no randomness anywhere in the path. Raises
// NoConvergence if the gradient norm is still above cfg.tol after
// cfg.max_iter iterations.
Vector solve_erm(const Dataset& data, const LossModel& model, const TrainConfig& cfg);
Vector solve_erm(const Dataset& data, const LossModel& model, const TrainConfig& cfg,
                 const Vector& beta);

// Objective perturbation: draws the tilt beta with density proportional to
// exp(-(eps'/2) ||beta||), eps' = eps - ln(1 + t/(2nc)) with t the loss
// curvature bound, and releases the tilted minimizer. Requires a pure-DP
// budget and c large enough that eps' stays positive; otherwise raises
// BudgetTooSmall. The released fit carries gamma = eps'/2 and eps' itself
// for interval construction.
PrivateFit train_objective_perturbation(const Dataset& data, const LossModel& model,
                                        const TrainConfig& cfg, const PrivacyBudget& eps,
                                        NoiseSource& noise);
PrivateFit train_objective_perturbation(const Dataset& data, const LossModel& model,
                                        const TrainConfig& cfg, const PrivacyBudget& eps,
                                        RngStream rng);

// Output perturbation: releases theta_hat + beta where theta_hat is the
// exact (non-tilted) minimizer, whose sensitivity is 1/(nc). Pure DP adds a
// spherical-Laplace draw with gamma = n*c*phi; zCDP adds N(0, sigma2 I) with
// sigma2 = 1/(2 phi (nc)^2).
PrivateFit train_output_perturbation(const Dataset& data, const LossModel& model,
                                     const TrainConfig& cfg, const PrivacyBudget& phi,
                                     NoiseSource& noise);
PrivateFit train_output_perturbation(const Dataset& data, const LossModel& model,
                                     const TrainConfig& cfg, const PrivacyBudget& phi,
                                     RngStream rng);

}  // namespace dperm

#endif  // DPERM_ERM_HPP_
