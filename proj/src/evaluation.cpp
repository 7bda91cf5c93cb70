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

#include "dperm/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <mutex>
#include <string>
#include <thread>
#include <utility>

#include "dperm/errors.hpp"
#include "dperm/stats.hpp"

namespace dperm {
namespace {

// Variability replicates draw from stream ids disjoint from the coverage
// range, so the two harness passes never share noise.
constexpr std::uint64_t kViStreamOffset = std::uint64_t{1} << 32;

void check_eval_config(const EvalConfig& cfg) {
  if (cfg.k < 1) {
    throw InvalidArgument("k must be >= 1, got " + std::to_string(cfg.k));
  }
  if (cfg.m_vi < 1) {
    throw InvalidArgument("m_vi must be >= 1, got " + std::to_string(cfg.m_vi));
  }
  if (!std::isfinite(cfg.alpha) || cfg.alpha <= 0.0 || cfg.alpha >= 1.0) {
    throw InvalidArgument("alpha must lie in (0, 1), got " + std::to_string(cfg.alpha));
  }
  if (cfg.workers < 1) {
    throw InvalidArgument("workers must be >= 1, got " + std::to_string(cfg.workers));
  }
  validate_budget_split(cfg.budgets);
}

// Statically partitions [0, count) across workers and runs fn(index) on each
// index. The partition depends only on the index, never on the worker, so
// outputs cannot depend on the worker count. The first exception wins and is
// rethrown on the caller's thread.
void parallel_for(std::int64_t count, int workers, const std::function<void(std::int64_t)>& fn) {
  if (workers <= 1 || count <= 1) {
    for (std::int64_t i = 0; i < count; ++i) {
      fn(i);
    }
    return;
  }
  std::mutex mu;
  std::exception_ptr first_error;
  auto worker_body = [&](std::int64_t begin, std::int64_t end) {
    for (std::int64_t i = begin; i < end; ++i) {
      {
        std::lock_guard<std::mutex> lock(mu);
        if (first_error) {
          return;
        }
      }
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!first_error) {
          first_error = std::current_exception();
        }
        return;
      }
    }
  };
  std::vector<std::thread> threads;
  const std::int64_t w = std::min<std::int64_t>(workers, count);
  threads.reserve(static_cast<std::size_t>(w));
  for (std::int64_t t = 0; t < w; ++t) {
    const std::int64_t begin = count * t / w;
    const std::int64_t end = count * (t + 1) / w;
    threads.emplace_back(worker_body, begin, end);
  }
  for (auto& thread : threads) {
    thread.join();
  }
  if (first_error) {
    std::rethrow_exception(first_error);
  }
}

CIMethod method_for(Mechanism mechanism) {
  return mechanism == Mechanism::kOutputPerturbZCDP ? CIMethod::kClosedFormZCDP
                                                    : CIMethod::kMonteCarloDP;
}

}  // namespace

Dataset bootstrap_replicate(const Dataset& data, Sampler& sampler) {
  const std::int64_t n = data.n();
  Matrix features(n, data.dim());
  Vector labels(n);
  for (std::int64_t i = 0; i < n; ++i) {
    const std::int64_t pick = sampler.bounded(n);
    features.row(i) = data.features().row(pick);
    labels(i) = data.labels()(pick);
  }
  return Dataset(std::move(features), std::move(labels));
}

Dataset bootstrap_replicate(const Dataset& data, RngStream rng) {
  Sampler sampler(rng);
  return bootstrap_replicate(data, sampler);
}

DefaultReplicateRunner::DefaultReplicateRunner(const EvalConfig& cfg) : cfg_(cfg) {
  check_eval_config(cfg_);
}

PrivateFit DefaultReplicateRunner::train(const Dataset& replicate, NoiseSource& noise) const {
  if (cfg_.mechanism == TrainMechanism::kObjective) {
    const PrivacyBudget eps = cfg_.budgets.phi1.kind == BudgetKind::kPureDP
                                  ? cfg_.budgets.phi1
                                  : pure_dp_equivalent(cfg_.budgets.phi1);
    return train_objective_perturbation(replicate, cfg_.loss, cfg_.train, eps, noise);
  }
  return train_output_perturbation(replicate, cfg_.loss, cfg_.train, cfg_.budgets.phi1, noise);
}

IntervalSet DefaultReplicateRunner::confidence_interval(const Dataset& replicate,
                                                        Sampler& sampler) const {
  const PrivateFit fit = train(replicate, sampler);
  const AsymptoticPieces pieces =
      estimate_pieces(replicate, cfg_.loss, fit, cfg_.budgets.phi2, cfg_.budgets.phi3, sampler);
  CISpec spec;
  spec.alpha = cfg_.alpha;
  spec.m = cfg_.m;
  spec.method = method_for(fit.mechanism);
  if (fit.mechanism == Mechanism::kObjectivePerturb) {
    return ci_objective(fit, pieces, spec, sampler);
  }
  return ci_output(fit, pieces, spec, sampler);
}

ParamVector DefaultReplicateRunner::private_params(const Dataset& replicate,
                                                   Sampler& sampler) const {
  return train(replicate, sampler).theta_tilde;
}

EvalReport coverage_percentage(const Dataset& data, const EvalConfig& cfg) {
  return coverage_percentage(data, cfg, DefaultReplicateRunner(cfg));
}

EvalReport coverage_percentage(const Dataset& data, const EvalConfig& cfg,
                               const ReplicateRunner& runner) {
  check_eval_config(cfg);
  const Vector theta0 = solve_erm(data, cfg.loss, cfg.train);
  const int d = data.dim();
  Matrix lengths(cfg.k, d);
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic> covered(cfg.k, d);
  parallel_for(cfg.k, cfg.workers, [&](std::int64_t r) {
    Sampler sampler(RngStream{cfg.seed, static_cast<std::uint64_t>(r)});
    const Dataset replicate = bootstrap_replicate(data, sampler);
    IntervalSet intervals;
    try {
      intervals = runner.confidence_interval(replicate, sampler);
    } catch (const NoConvergence& e) {
      throw NoConvergence(e.iterations, "coverage replicate " + std::to_string(r));
    }
    if (intervals.lo.size() != d) {
      throw DimensionMismatch("runner returned " + std::to_string(intervals.lo.size()) +
                              " intervals for dimension " + std::to_string(d));
    }
    for (int j = 0; j < d; ++j) {
      lengths(r, j) = intervals.hi(j) - intervals.lo(j);
      covered(r, j) =
          (intervals.lo(j) <= theta0(j) && theta0(j) <= intervals.hi(j)) ? 1.0 : 0.0;
    }
  });
  EvalReport report;
  report.per_coordinate.resize(static_cast<std::size_t>(d));
  std::vector<double> pooled;
  pooled.reserve(static_cast<std::size_t>(cfg.k * d));
  std::vector<double> column(static_cast<std::size_t>(cfg.k));
  double coverage_sum = 0.0;
  double length_sum = 0.0;
  for (int j = 0; j < d; ++j) {
    for (std::int64_t r = 0; r < cfg.k; ++r) {
      column[static_cast<std::size_t>(r)] = lengths(r, j);
      pooled.push_back(lengths(r, j));
    }
    auto& stats = report.per_coordinate[static_cast<std::size_t>(j)];
    stats.coverage = covered.col(j).mean();
    stats.mean_ci_length = mean(column);
    stats.sd_ci_length = sample_sd(column);
    coverage_sum += stats.coverage;
    length_sum += stats.mean_ci_length;
  }
  report.coverage = coverage_sum / static_cast<double>(d);
  report.mean_ci_length = length_sum / static_cast<double>(d);
  report.sd_ci_length = sample_sd(pooled);
  return report;
}

IntervalSet variability_intervals(const Dataset& data, const EvalConfig& cfg) {
  return variability_intervals(data, cfg, DefaultReplicateRunner(cfg));
}

IntervalSet variability_intervals(const Dataset& data, const EvalConfig& cfg,
                                  const ReplicateRunner& runner) {
  check_eval_config(cfg);
  const int d = data.dim();
  Matrix params(cfg.m_vi, d);
  parallel_for(cfg.m_vi, cfg.workers, [&](std::int64_t i) {
    Sampler sampler(RngStream{cfg.seed, kViStreamOffset + static_cast<std::uint64_t>(i)});
    const Dataset replicate = bootstrap_replicate(data, sampler);
    ParamVector theta;
    try {
      theta = runner.private_params(replicate, sampler);
    } catch (const NoConvergence& e) {
      throw NoConvergence(e.iterations, "variability replicate " + std::to_string(i));
    }
    if (theta.size() != d) {
      throw DimensionMismatch("runner returned dimension " + std::to_string(theta.size()) +
                              " for dimension " + std::to_string(d));
    }
    params.row(i) = theta.transpose();
  });
  Vector lo(d);
  Vector hi(d);
  std::vector<double> column(static_cast<std::size_t>(cfg.m_vi));
  for (int j = 0; j < d; ++j) {
    for (std::int64_t i = 0; i < cfg.m_vi; ++i) {
      column[static_cast<std::size_t>(i)] = params(i, j);
    }
    const auto [a, b] = empirical_quantile_interval(column, cfg.alpha);
    lo(j) = a;
    hi(j) = b;
  }
  return make_interval_set(std::move(lo), std::move(hi), cfg.alpha, CIMethod::kMonteCarloDP);
}

EvalReport run_evaluation(const Dataset& data, const EvalConfig& cfg) {
  const DefaultReplicateRunner runner(cfg);
  EvalReport report = coverage_percentage(data, cfg, runner);
  const IntervalSet vi = variability_intervals(data, cfg, runner);
  double vi_sum = 0.0;
  for (std::size_t j = 0; j < report.per_coordinate.size(); ++j) {
    const double length = vi.hi(static_cast<Eigen::Index>(j)) - vi.lo(static_cast<Eigen::Index>(j));
    report.per_coordinate[j].mean_vi_length = length;
    vi_sum += length;
  }
  report.mean_vi_length = vi_sum / static_cast<double>(report.per_coordinate.size());
  return report;
}

}  // namespace dperm
