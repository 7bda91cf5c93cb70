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

#ifndef DPERM_EVALUATION_HPP_
#define DPERM_EVALUATION_HPP_

#include <cstdint>
#include <vector>

#include "dperm/core_types.hpp"
#include "dperm/erm.hpp"
#include "dperm/intervals.hpp"
#include "dperm/losses.hpp"
#include "dperm/rng.hpp"

namespace dperm {

// Which trainer the harness (and CLI) runs. Combined with the budget kind
// this selects the interval method: output + zCDP takes the closed form,
// everything else is Monte-Carlo.
enum class TrainMechanism { kObjective, kOutput };

struct EvalConfig {
  std::int64_t k = 200;     // bootstrap replicates for coverage
  std::int64_t m_vi = 1000; // replicates for variability intervals
  std::int64_t m = 2000;    // Monte-Carlo samples per confidence interval
  double alpha = 0.05;
  std::uint64_t seed = 0;
  BudgetSplit budgets;
  TrainMechanism mechanism = TrainMechanism::kObjective;
  LossModel loss;
  TrainConfig train;
  int workers = 1;
};

struct CoordinateStats {
  double coverage = 0.0;
  double mean_ci_length = 0.0;
  double sd_ci_length = 0.0;
  double mean_vi_length = 0.0;
};

struct EvalReport {
  double coverage = 0.0;        // fraction of (replicate, coordinate) hits
  double mean_ci_length = 0.0;  // mean of the per-coordinate means
  double sd_ci_length = 0.0;    // sd over all replicate-coordinate lengths
  double mean_vi_length = 0.0;  // 0 until variability intervals are merged
  std::vector<CoordinateStats> per_coordinate;
};

// Samples n records with replacement. Draw order is one index per record,
// front to back, so a given stream position always feeds the same slot.
Dataset bootstrap_replicate(const Dataset& data, Sampler& sampler);
Dataset bootstrap_replicate(const Dataset& data, RngStream rng);

// Seam between the harness loops and the private pipeline. The harness only
// ever asks for a replicate's interval set (coverage) or its released
// parameters (variability); tests substitute degenerate runners to pin the
// bookkeeping down.
class ReplicateRunner {
 public:
  virtual ~ReplicateRunner() = default;
  virtual IntervalSet confidence_interval(const Dataset& replicate, Sampler& sampler) const = 0;
  virtual ParamVector private_params(const Dataset& replicate, Sampler& sampler) const = 0;
};

// Runs the real pipeline: phi1 pays for training (a zCDP phi1 reaches the
// objective trainer through the eps = sqrt(2 rho) comparison rule), phi2 and
// phi3 pay for the asymptotic pieces, and the interval method follows the
// mechanism/budget-kind pair.
class DefaultReplicateRunner : public ReplicateRunner {
 public:
  explicit DefaultReplicateRunner(const EvalConfig& cfg);

  PrivateFit train(const Dataset& replicate, NoiseSource& noise) const;
  IntervalSet confidence_interval(const Dataset& replicate, Sampler& sampler) const override;
  ParamVector private_params(const Dataset& replicate, Sampler& sampler) const override;

 private:
  EvalConfig cfg_;
};

// Coverage of the full-data non-private minimizer theta0: for k bootstrap
// replicates, trains privately and builds intervals, then counts the
// fraction of (replicate, coordinate) pairs whose interval contains
// theta0[j]. Replicate r draws from stream (seed, r); workers partition
// replicates by index and merge by index, so results are byte-identical for
// every worker count. A replicate that fails to converge aborts the run,
// annotated with its index.
EvalReport coverage_percentage(const Dataset& data, const EvalConfig& cfg);
EvalReport coverage_percentage(const Dataset& data, const EvalConfig& cfg,
                               const ReplicateRunner& runner);

// The sampling-variability yardstick: m_vi replicates are trained privately
// (training budget only, no pieces, no intervals) and the per-coordinate
// alpha/2 and 1-alpha/2 empirical quantiles of the released parameters form
// the interval. VI replicate i draws from stream (seed, 2^32 + i), disjoint
// from the coverage range.
IntervalSet variability_intervals(const Dataset& data, const EvalConfig& cfg);
IntervalSet variability_intervals(const Dataset& data, const EvalConfig& cfg,
                                  const ReplicateRunner& runner);

// Coverage plus variability with the default runner, merged into one report:
// a confidence interval is doing its job when its length is not materially
// below the matching variability length.
EvalReport run_evaluation(const Dataset& data, const EvalConfig& cfg);

}  // namespace dperm

#endif  // DPERM_EVALUATION_HPP_
