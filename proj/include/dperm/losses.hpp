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

#ifndef DPERM_LOSSES_HPP_
#define DPERM_LOSSES_HPP_

#include <cstdint>

#include "dperm/core_types.hpp"

namespace dperm {

enum class LossKind { kLogistic, kHuberSvm };

// A margin-based convex loss f applied as f(y * theta . x). Both supported
// losses keep |f'| <= 1 and 0 <= f'' <= curvature_bound() everywhere, which
// is what the noise calibration and the sensitivity formulas below lean on.
//
// Logistic: f(z) = ln(1 + e^-z), curvature bound 1/4.
// Huberized hinge with half-width h > 0:
//   f(z) = 0 for z > 1 + h,
//          (1 + h - z)^2 / (4h) for |1 - z| <= h (closed band, so the
//          kink points themselves take the quadratic branch),
//          1 - z for z < 1 - h;
//   curvature bound 1/(2h).
class LossModel {
 public:
  // Defaults to logistic so containers and config structs stay aggregate.
  LossModel() : LossModel(LossKind::kLogistic, 0.0, 0.25) {}

  static LossModel logistic();
  static LossModel huber_svm(double h);

  LossKind kind() const { return kind_; }

  // The Huber half-width h; meaningless (0) for logistic.
  double huber_width() const { return h_; }

  // Uniform upper bound t on f''.
  double curvature_bound() const { return t_; }

  double value(double z) const;
  double deriv(double z) const;
  double second_deriv(double z) const;

 private:
  LossModel(LossKind kind, double h, double t) : kind_(kind), h_(h), t_(t) {}

  LossKind kind_;
  double h_;
  double t_;
};

// Numerically stable 1 / (1 + e^-u); never overflows.
double sigmoid(double u);

// Gradient of f(y * theta . x) in theta: f'(z) * y * x.
Vector per_record_gradient(const LossModel& model, const Eigen::Ref<const Vector>& x, double y,
                           const Vector& theta);

// Hessian of f(y * theta . x) in theta: f''(z) * x x^T (labels square to 1).
Matrix per_record_hessian(const LossModel& model, const Eigen::Ref<const Vector>& x, double y,
                          const Vector& theta);

// Bound on || vec(H_D - H_D') ||_2 for the per-record mean Hessian of the
// regularized objective over datasets differing in one record, at any fixed
// theta, given unit-ball features: 1/(2n) for logistic, 1/(n*h) for Huber.
double hessian_sensitivity(const LossModel& model, std::int64_t n);

// Same bound for the gradient-covariance estimate evaluated at theta:
// 2*sigmoid(||theta||_2)^2 / n for logistic, 2/n for Huber.
double covariance_sensitivity(const LossModel& model, std::int64_t n, const Vector& theta);

}  // namespace dperm

#endif  // DPERM_LOSSES_HPP_
