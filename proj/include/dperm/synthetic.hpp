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

#ifndef DPERM_SYNTHETIC_HPP_
#define DPERM_SYNTHETIC_HPP_

#include <cstdint>

#include "dperm/core_types.hpp"

namespace dperm {

// How labels are attached to the generated features.
// kLogisticGen: y = +1 with probability sigmoid(theta_star . x).
// kMarginGen: y = sign(theta_star . x), then flipped with probability 5%.
enum class SynthModel { kLogisticGen, kMarginGen };

struct SynthSpec {
  std::int64_t n = 1000;
  int d = 2;  // raw feature dimension, before the constant column
  // Ground-truth direction; length d (no intercept, padded with 0) or d + 1
  // (last entry acts on the constant column). Must be nonzero.
  ParamVector theta_star;
  SynthModel model = SynthModel::kLogisticGen;
  std::uint64_t seed = 0;
};

// Draws features uniformly from the d-dimensional unit ball, passes them
// through the constant-append/renormalize step (so records match the
// preprocessing contract exactly), then labels each final feature vector per
// the model. Deterministic in spec.seed; all features are drawn before any
// label.
Dataset generate(const SynthSpec& spec);

}  // namespace dperm

#endif  // DPERM_SYNTHETIC_HPP_
