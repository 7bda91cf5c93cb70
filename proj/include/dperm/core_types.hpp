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

#ifndef DPERM_CORE_TYPES_HPP_
#define DPERM_CORE_TYPES_HPP_

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <vector>

#include "dperm/errors.hpp"

namespace dperm {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// A model parameter vector. Alias rather than wrapper: parameters take part
// in enough linear algebra that a strong type would be friction without
// safety. Finiteness is enforced wherever one enters or leaves the library.
using ParamVector = Eigen::VectorXd;

// One labeled example. Features must lie in the closed unit L2 ball and the
// label must be -1 or +1; both are checked by validate_dataset, not here.
struct Record {
  Vector features;
  double label = 1.0;
};

// A fixed-dimension design matrix plus labels, one row per record. Labels are
// stored as doubles (exactly -1.0 or +1.0) so they can enter arithmetic
// directly. Construction enforces shape consistency only; content checks
// live in validate_dataset so ill-formed data can be named by record index.
class Dataset {
 public:
  Dataset(Matrix features, Vector labels);
  static Dataset from_records(const std::vector<Record>& records);

  std::int64_t n() const { return features_.rows(); }
  int dim() const { return static_cast<int>(features_.cols()); }
  const Matrix& features() const { return features_; }
  const Vector& labels() const { return labels_; }

 private:
  Matrix features_;
  Vector labels_;
};

// Checks every record: feature norms within the unit ball (tolerance 1e-9),
// labels exactly -1/+1, all entries finite. Returns the dataset unchanged;
// raises NormViolation, BadLabel, or DimensionMismatch naming the first
// offending record. Idempotent by construction.
Dataset validate_dataset(Dataset data);

// A privacy guarantee is either pure differential privacy (epsilon) or
// zero-concentrated differential privacy (rho). The two are never mixed
// within one run; conversions below are explicit.
enum class BudgetKind { kPureDP, kZCDP };

struct PrivacyBudget {
  BudgetKind kind = BudgetKind::kPureDP;
  double value = 0.0;  // epsilon for kPureDP, rho for kZCDP; always > 0
};

PrivacyBudget pure_dp(double epsilon);
PrivacyBudget zcdp(double rho);

// An (epsilon, delta) guarantee, only ever produced by conversion from zCDP.
struct ApproxDP {
  double epsilon = 0.0;
  double delta = 0.0;
};

// Pure DP epsilon implies zCDP rho = epsilon^2 / 2. Identity on a budget
// that is already zCDP.
PrivacyBudget convert_to_zcdp(const PrivacyBudget& b);

// zCDP rho implies (rho + 2*sqrt(rho*ln(1/delta)), delta)-DP for any
// delta in (0, 1). Raises MissingDelta without a delta and InvalidArgument
// on a pure-DP input (the implication runs the other way).
ApproxDP convert_to_approx_dp(const PrivacyBudget& b, std::optional<double> delta = std::nullopt);

// The comparison rule used when a pure-DP and a zCDP run must be matched:
// the pure-DP epsilon whose implied zCDP level equals rho, i.e. sqrt(2*rho).
// Inverse of convert_to_zcdp; requires a zCDP input.
PrivacyBudget pure_dp_equivalent(const PrivacyBudget& b);

// Per-stage budgets: phi1 pays for training, phi2 for the private Hessian,
// phi3 for the private covariance. All three must share one kind.
struct BudgetSplit {
  PrivacyBudget phi1;
  PrivacyBudget phi2;
  PrivacyBudget phi3;
};

// Raises InvalidArgument unless all three stages are positive and share a
// kind. Returns the split unchanged.
BudgetSplit validate_budget_split(BudgetSplit split);

// How a released parameter vector was produced.
enum class Mechanism { kObjectivePerturb, kOutputPerturbDP, kOutputPerturbZCDP };

// A released private fit together with everything interval construction
// needs to mirror the training-noise distribution. Exactly one of gamma
// (spherical-Laplace rate) and sigma2 (per-coordinate Gaussian variance) is
// set, matching the mechanism; eps_prime is carried if and only if the fit
// came from objective perturbation, so it is never recomputed downstream.
struct PrivateFit {
  ParamVector theta_tilde;
  Mechanism mechanism = Mechanism::kObjectivePerturb;
  std::optional<double> gamma;
  std::optional<double> sigma2;
  std::optional<double> eps_prime;
  std::int64_t n = 0;
  double c = 0.0;
};

// Enforces the field coherence described above plus finiteness, n >= 1,
// c > 0. Raises InvalidArgument naming the offending field.
void validate_fit(const PrivateFit& fit);

// How a confidence interval set was computed.
enum class CIMethod { kMonteCarloDP, kClosedFormZCDP };

// Per-coordinate confidence intervals at a shared nominal level.
struct IntervalSet {
  Vector lo;
  Vector hi;
  double alpha = 0.05;
  CIMethod method = CIMethod::kMonteCarloDP;
};

// The only sanctioned way to build an IntervalSet: checks equal lengths,
// finite entries, lo[j] <= hi[j] for every coordinate, and alpha in (0, 1).
IntervalSet make_interval_set(Vector lo, Vector hi, double alpha, CIMethod method);

}  // namespace dperm

#endif  // DPERM_CORE_TYPES_HPP_
