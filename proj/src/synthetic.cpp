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

#include "dperm/synthetic.hpp"

#include <cmath>
#include <string>

#include "dperm/errors.hpp"
#include "dperm/losses.hpp"
#include "dperm/preprocess.hpp"
#include "dperm/rng.hpp"

namespace dperm {
namespace {

constexpr double kMarginFlipProbability = 0.05;

}  // namespace

Dataset generate(const SynthSpec& spec) {
  if (spec.n < 1) {
    throw InvalidArgument("n must be >= 1, got " + std::to_string(spec.n));
  }
  if (spec.d < 1) {
    throw InvalidArgument("d must be >= 1, got " + std::to_string(spec.d));
  }
  if (spec.theta_star.size() != spec.d && spec.theta_star.size() != spec.d + 1) {
    throw DimensionMismatch("theta_star has dimension " +
                            std::to_string(spec.theta_star.size()) + ", expected " +
                            std::to_string(spec.d) + " or " + std::to_string(spec.d + 1));
  }
  if (spec.theta_star.norm() == 0.0 || !spec.theta_star.allFinite()) {
    throw InvalidArgument("theta_star must be nonzero and finite");
  }
  Vector theta_star = Vector::Zero(spec.d + 1);
  theta_star.head(spec.theta_star.size()) = spec.theta_star;

  Sampler sampler(RngStream{spec.seed, 0});
  Matrix raw(spec.n, spec.d);
  for (std::int64_t i = 0; i < spec.n; ++i) {
    // Uniform in the unit ball: uniform direction scaled by U^(1/d).
    const Vector direction = sampler.unit_sphere(spec.d);
    const double radius = std::pow(sampler.uniform01(), 1.0 / static_cast<double>(spec.d));
    raw.row(i) = (radius * direction).transpose();
  }
  Matrix features = append_constant_and_renormalize(std::move(raw));

  Vector labels(spec.n);
  for (std::int64_t i = 0; i < spec.n; ++i) {
    const double score = theta_star.dot(features.row(i));
    if (spec.model == SynthModel::kLogisticGen) {
      labels(i) = (sampler.uniform01() < sigmoid(score)) ? 1.0 : -1.0;
    } else {
      double y = (score >= 0.0) ? 1.0 : -1.0;
      if (sampler.uniform01() < kMarginFlipProbability) {
        y = -y;
      }
      labels(i) = y;
    }
  }
  return validate_dataset(Dataset(std::move(features), std::move(labels)));
}

}  // namespace dperm
