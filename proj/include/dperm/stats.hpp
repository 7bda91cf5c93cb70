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

#ifndef DPERM_STATS_HPP_
#define DPERM_STATS_HPP_

#include <vector>

namespace dperm {

// Inverse standard normal CDF, accurate to well below 1e-10 over (0, 1):
// rational initial guess refined by one Halley step against erfc.
double normal_quantile(double p);

double mean(const std::vector<double>& values);

// Sample standard deviation (n - 1 denominator); 0 for fewer than 2 values.
double sample_sd(const std::vector<double>& values);

}  // namespace dperm

#endif  // DPERM_STATS_HPP_
