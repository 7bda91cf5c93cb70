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

#include "dperm/core_types.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <utility>

namespace dperm {
namespace {

// Slack for feature-norm checks; rows renormalized in preprocessing land
// within one ulp-scale neighborhood of 1.
constexpr double kNormTolerance = 1e-9;

void require_positive_finite(double v, const char* name) {
  if (!std::isfinite(v) || v <= 0.0) {
    throw InvalidArgument(std::string(name) + " must be positive and finite, got " +
                          std::to_string(v));
  }
}

}  // namespace

Dataset::Dataset(Matrix features, Vector labels)
    : features_(std::move(features)), labels_(std::move(labels)) {
  if (features_.rows() != labels_.size()) {
    throw DimensionMismatch("dataset has " + std::to_string(features_.rows()) +
                            " feature rows but " + std::to_string(labels_.size()) + " labels");
  }
  if (features_.rows() < 1) {
    throw DimensionMismatch("dataset must contain at least one record");
  }
  if (features_.cols() < 1) {
    throw DimensionMismatch("dataset must have at least one feature column");
  }
}

Dataset Dataset::from_records(const std::vector<Record>& records) {
  if (records.empty()) {
    throw DimensionMismatch("dataset must contain at least one record");
  }
  const Eigen::Index dim = records.front().features.size();
  Matrix features(static_cast<Eigen::Index>(records.size()), dim);
  Vector labels(static_cast<Eigen::Index>(records.size()));
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (records[i].features.size() != dim) {
      throw DimensionMismatch("record " + std::to_string(i) + " has dimension " +
                              std::to_string(records[i].features.size()) + ", expected " +
                              std::to_string(dim));
    }
    features.row(static_cast<Eigen::Index>(i)) = records[i].features.transpose();
    labels(static_cast<Eigen::Index>(i)) = records[i].label;
  }
  return Dataset(std::move(features), std::move(labels));
}

Dataset validate_dataset(Dataset data) {
  const Matrix& x = data.features();
  const Vector& y = data.labels();
  for (std::int64_t i = 0; i < data.n(); ++i) {
    if (!x.row(i).allFinite()) {
      throw NormViolation(i, std::numeric_limits<double>::quiet_NaN());
    }
    const double norm = x.row(i).norm();
    if (norm > 1.0 + kNormTolerance) {
      throw NormViolation(i, norm);
    }
    if (y(i) != -1.0 && y(i) != 1.0) {
      throw BadLabel(i, y(i));
    }
  }
  return data;
}

PrivacyBudget pure_dp(double epsilon) {
  require_positive_finite(epsilon, "epsilon");
  return {BudgetKind::kPureDP, epsilon};
}

PrivacyBudget zcdp(double rho) {
  require_positive_finite(rho, "rho");
  return {BudgetKind::kZCDP, rho};
}

PrivacyBudget convert_to_zcdp(const PrivacyBudget& b) {
  require_positive_finite(b.value, "budget value");
  if (b.kind == BudgetKind::kZCDP) {
    return b;
  }
  return zcdp(0.5 * b.value * b.value);
}

ApproxDP convert_to_approx_dp(const PrivacyBudget& b, std::optional<double> delta) {
  require_positive_finite(b.value, "budget value");
  if (b.kind != BudgetKind::kZCDP) {
    throw InvalidArgument("only a zCDP budget converts to an approximate-DP pair");
  }
  if (!delta.has_value()) {
    throw MissingDelta();
  }
  if (!std::isfinite(*delta) || *delta <= 0.0 || *delta >= 1.0) {
    throw InvalidArgument("delta must lie in (0, 1), got " + std::to_string(*delta));
  }
  const double rho = b.value;
  return {rho + 2.0 * std::sqrt(rho * std::log(1.0 / *delta)), *delta};
}

PrivacyBudget pure_dp_equivalent(const PrivacyBudget& b) {
  require_positive_finite(b.value, "budget value");
  if (b.kind != BudgetKind::kZCDP) {
    throw InvalidArgument("pure_dp_equivalent expects a zCDP budget");
  }
  return pure_dp(std::sqrt(2.0 * b.value));
}

BudgetSplit validate_budget_split(BudgetSplit split) {
  require_positive_finite(split.phi1.value, "phi1");
  require_positive_finite(split.phi2.value, "phi2");
  require_positive_finite(split.phi3.value, "phi3");
  if (split.phi1.kind != split.phi2.kind || split.phi1.kind != split.phi3.kind) {
    throw InvalidArgument("phi1, phi2, phi3 must share one budget kind");
  }
  return split;
}

void validate_fit(const PrivateFit& fit) {
  if (fit.theta_tilde.size() < 1 || !fit.theta_tilde.allFinite()) {
    throw InvalidArgument("theta_tilde must be nonempty and finite");
  }
  if (fit.n < 1) {
    throw InvalidArgument("fit.n must be >= 1, got " + std::to_string(fit.n));
  }
  require_positive_finite(fit.c, "fit.c");
  const bool has_gamma = fit.gamma.has_value();
  const bool has_sigma2 = fit.sigma2.has_value();
  const bool has_eps_prime = fit.eps_prime.has_value();
  switch (fit.mechanism) {
    case Mechanism::kObjectivePerturb:
      if (!has_gamma || has_sigma2 || !has_eps_prime) {
        throw InvalidArgument(
            "objective-perturbation fit must carry gamma and eps_prime and no sigma2");
      }
      require_positive_finite(*fit.eps_prime, "fit.eps_prime");
      break;
    case Mechanism::kOutputPerturbDP:
      if (!has_gamma || has_sigma2 || has_eps_prime) {
        throw InvalidArgument("pure-DP output-perturbation fit must carry gamma only");
      }
      break;
    case Mechanism::kOutputPerturbZCDP:
      if (has_gamma || !has_sigma2 || has_eps_prime) {
        throw InvalidArgument("zCDP output-perturbation fit must carry sigma2 only");
      }
      require_positive_finite(*fit.sigma2, "fit.sigma2");
      break;
  }
  if (has_gamma) {
    require_positive_finite(*fit.gamma, "fit.gamma");
  }
}

IntervalSet make_interval_set(Vector lo, Vector hi, double alpha, CIMethod method) {
  if (lo.size() != hi.size()) {
    throw DimensionMismatch("interval endpoints differ in length: " + std::to_string(lo.size()) +
                            " vs " + std::to_string(hi.size()));
  }
  if (lo.size() < 1) {
    throw DimensionMismatch("interval set must cover at least one coordinate");
  }
  if (!lo.allFinite() || !hi.allFinite()) {
    throw InvalidArgument("interval endpoints must be finite");
  }
  if (!std::isfinite(alpha) || alpha <= 0.0 || alpha >= 1.0) {
    throw InvalidArgument("alpha must lie in (0, 1), got " + std::to_string(alpha));
  }
  for (Eigen::Index j = 0; j < lo.size(); ++j) {
    if (lo(j) > hi(j)) {
      throw InvalidArgument("interval " + std::to_string(j) + " has lo > hi");
    }
  }
  IntervalSet out;
  out.lo = std::move(lo);
  out.hi = std::move(hi);
  out.alpha = alpha;
  out.method = method;
  return out;
}

}  // namespace dperm
