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

#include "dperm/losses.hpp"

#include <cmath>
#include <string>

#include "dperm/errors.hpp"

namespace dperm {

LossModel LossModel::logistic() { return LossModel(LossKind::kLogistic, 0.0, 0.25); }

LossModel LossModel::huber_svm(double h) {
  if (!std::isfinite(h) || h <= 0.0) {
    throw InvalidArgument("huber width h must be positive and finite, got " + std::to_string(h));
  }
  return LossModel(LossKind::kHuberSvm, h, 1.0 / (2.0 * h));
}

double sigmoid(double u) {
  if (u >= 0.0) {
    return 1.0 / (1.0 + std::exp(-u));
  }
  const double e = std::exp(u);
  return e / (1.0 + e);
}

double LossModel::value(double z) const {
  if (kind_ == LossKind::kLogistic) {
    // ln(1 + e^-z) without overflow on either tail.
    if (z >= 0.0) {
      return std::log1p(std::exp(-z));
    }
    return -z + std::log1p(std::exp(z));
  }
  if (std::abs(1.0 - z) <= h_) {
    const double r = 1.0 + h_ - z;
    return r * r / (4.0 * h_);
  }
  if (z > 1.0 + h_) {
    return 0.0;
  }
  return 1.0 - z;
}

double LossModel::deriv(double z) const {
  if (kind_ == LossKind::kLogistic) {
    return -sigmoid(-z);
  }
  if (std::abs(1.0 - z) <= h_) {
    return (z - 1.0 - h_) / (2.0 * h_);
  }
  if (z > 1.0 + h_) {
    return 0.0;
  }
  return -1.0;
}

double LossModel::second_deriv(double z) const {
  if (kind_ == LossKind::kLogistic) {
    const double s = sigmoid(z);
    return s * (1.0 - s);
  }
  if (std::abs(1.0 - z) <= h_) {
    return 1.0 / (2.0 * h_);
  }
  return 0.0;
}

Vector per_record_gradient(const LossModel& model, const Eigen::Ref<const Vector>& x, double y,
                           const Vector& theta) {
  if (x.size() != theta.size()) {
    throw DimensionMismatch("feature vector has dimension " + std::to_string(x.size()) +
                            ", theta has " + std::to_string(theta.size()));
  }
  const double z = y * theta.dot(x);
  return (model.deriv(z) * y) * x;
}

Matrix per_record_hessian(const LossModel& model, const Eigen::Ref<const Vector>& x, double y,
                          const Vector& theta) {
  if (x.size() != theta.size()) {
    throw DimensionMismatch("feature vector has dimension " + std::to_string(x.size()) +
                            ", theta has " + std::to_string(theta.size()));
  }
  const double z = y * theta.dot(x);
  return model.second_deriv(z) * (x * x.transpose());
}

double hessian_sensitivity(const LossModel& model, std::int64_t n) {
  if (n < 1) {
    throw InvalidArgument("n must be >= 1, got " + std::to_string(n));
  }
  const double dn = static_cast<double>(n);
  if (model.kind() == LossKind::kLogistic) {
    return 1.0 / (2.0 * dn);
  }
  return 1.0 / (dn * model.huber_width());
}

double covariance_sensitivity(const LossModel& model, std::int64_t n, const Vector& theta) {
  if (n < 1) {
    throw InvalidArgument("n must be >= 1, got " + std::to_string(n));
  }
  const double dn = static_cast<double>(n);
  if (model.kind() == LossKind::kLogistic) {
    const double s = sigmoid(theta.norm());
    return 2.0 * s * s / dn;
  }
  return 2.0 / dn;
}

}  // namespace dperm
