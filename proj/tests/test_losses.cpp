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

#include <doctest.h>

#include "dperm/errors.hpp"
#include "dperm/rng.hpp"
#include "support/oracles.hpp"

namespace dperm {
namespace {

TEST_CASE("logistic loss values and slopes") {
  const LossModel m = LossModel::logistic();
  CHECK(m.kind() == LossKind::kLogistic);
  CHECK(m.curvature_bound() == 0.25);
  CHECK(m.value(0.0) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(m.value(2.0) == doctest::Approx(0.12692801104297250).epsilon(1e-14));
  CHECK(m.deriv(0.0) == -0.5);
  // f'(z) = -S(-z); at z = -2 that is -S(2).
  CHECK(m.deriv(-2.0) == doctest::Approx(-0.8807970779778824).epsilon(1e-14));
  CHECK(m.second_deriv(0.0) == 0.25);
}

TEST_CASE("logistic loss is stable far from the origin") {
  const LossModel m = LossModel::logistic();
  CHECK(m.value(1e6) == 0.0);
  CHECK(m.value(-1e6) == doctest::Approx(1e6).epsilon(1e-12));
  CHECK(std::isfinite(m.deriv(-1e6)));
  CHECK(m.deriv(-1e6) == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(m.deriv(1e6) == 0.0);
  CHECK(m.second_deriv(750.0) >= 0.0);
  CHECK(std::isfinite(m.second_deriv(-750.0)));
}

TEST_CASE("huberized hinge has the three-branch shape") {
  const LossModel m = LossModel::huber_svm(0.5);
  CHECK(m.kind() == LossKind::kHuberSvm);
  CHECK(m.huber_width() == 0.5);
  CHECK(m.curvature_bound() == 1.0);

  // Flat branch beyond 1 + h.
  CHECK(m.value(1.6) == 0.0);
  CHECK(m.deriv(1.6) == 0.0);
  CHECK(m.second_deriv(1.6) == 0.0);

  // Linear branch below 1 - h.
  CHECK(m.value(0.2) == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(m.deriv(0.2) == -1.0);
  CHECK(m.second_deriv(0.2) == 0.0);

  // Quadratic branch: (1 + h - z)^2 / (4h).
  CHECK(m.value(1.0) == doctest::Approx(0.125).epsilon(1e-15));
  CHECK(m.deriv(1.0) == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(m.second_deriv(1.0) == 1.0);

  // Kinks sit in the closed middle band.
  CHECK(m.second_deriv(1.5) == 1.0);
  CHECK(m.second_deriv(0.5) == 1.0);
  CHECK(m.value(1.5) == 0.0);
  CHECK(m.value(0.5) == doctest::Approx(0.5).epsilon(1e-15));

  // Continuity across the kinks.
  CHECK(m.value(0.5 - 1e-9) == doctest::Approx(m.value(0.5)).epsilon(1e-8));
  CHECK(m.value(1.5 + 1e-9) == doctest::Approx(0.0).epsilon(1e-8));

  CHECK_THROWS_AS(LossModel::huber_svm(0.0), InvalidArgument);
  CHECK_THROWS_AS(LossModel::huber_svm(-0.5), InvalidArgument);
}

TEST_CASE("loss bound properties hold on random inputs") {
  Sampler sampler(RngStream{91, 0});
  const LossModel logistic = LossModel::logistic();
  const LossModel huber = LossModel::huber_svm(0.7);
  for (int i = 0; i < 100000; ++i) {
    const double z = 20.0 * (sampler.uniform01() - 0.5);
    for (const LossModel& m : {logistic, huber}) {
      CHECK(m.value(z) >= 0.0);
      CHECK(std::abs(m.deriv(z)) <= 1.0);
      CHECK(m.second_deriv(z) >= 0.0);
      CHECK(m.second_deriv(z) <= m.curvature_bound() + 1e-15);
    }
  }
}

TEST_CASE("scalar derivatives match finite differences") {
  Sampler sampler(RngStream{92, 0});
  const LossModel logistic = LossModel::logistic();
  const LossModel huber = LossModel::huber_svm(0.5);
  const double step = 1e-6;
  for (int i = 0; i < 200; ++i) {
    const double z = 8.0 * (sampler.uniform01() - 0.5);
    const double fd_log = (logistic.value(z + step) - logistic.value(z - step)) / (2.0 * step);
    CHECK(logistic.deriv(z) == doctest::Approx(fd_log).epsilon(1e-5));
    // Huber derivatives are only smooth away from the kinks.
    if (std::abs(std::abs(1.0 - z) - 0.5) > 1e-3) {
      const double fd_hub = (huber.value(z + step) - huber.value(z - step)) / (2.0 * step);
      CHECK(huber.deriv(z) == doctest::Approx(fd_hub).epsilon(1e-5));
    }
  }
}

TEST_CASE("per-record gradient and hessian follow the chain rule") {
  const LossModel m = LossModel::logistic();
  Vector x(2);
  x << 1.0, 0.0;
  Vector theta = Vector::Zero(2);
  const Vector g = per_record_gradient(m, x, 1.0, theta);
  CHECK(g(0) == -0.5);
  CHECK(g(1) == 0.0);

  const Matrix h = per_record_hessian(m, x, 1.0, theta);
  CHECK(h(0, 0) == 0.25);
  CHECK(h(0, 1) == 0.0);
  CHECK(h(1, 1) == 0.0);

  // Finite-difference check through the scalar chain on a few random points.
  Sampler sampler(RngStream{93, 0});
  for (int trial = 0; trial < 50; ++trial) {
    Vector xr = sampler.unit_sphere(3) * std::pow(sampler.uniform01(), 1.0 / 3.0);
    const double y = sampler.uniform01() < 0.5 ? 1.0 : -1.0;
    Vector th = sampler.gaussian_iso(3, 1.0);
    const auto value = [&](const Vector& t) { return m.value(y * xr.dot(t)); };
    const Vector fd = testing::central_gradient(value, th, 1e-6);
    const Vector an = per_record_gradient(m, xr, y, th);
    CHECK((an - fd).norm() <= 1e-5 * (1.0 + fd.norm()));
  }
}

TEST_CASE("hessian sensitivity scales with curvature and size") {
  CHECK(hessian_sensitivity(LossModel::logistic(), 100) == doctest::Approx(0.005).epsilon(1e-15));
  CHECK(hessian_sensitivity(LossModel::huber_svm(0.5), 10) == doctest::Approx(0.2).epsilon(1e-15));
  CHECK_THROWS_AS(hessian_sensitivity(LossModel::logistic(), 0), InvalidArgument);
}

TEST_CASE("covariance sensitivity uses the released parameter norm") {
  Vector theta(2);
  theta << 2.0, 0.0;
  const double got = covariance_sensitivity(LossModel::logistic(), 100, theta);
  CHECK(got == doctest::Approx(0.015516069851487519).epsilon(1e-14));

  // Hinge-side slope bound is 1, so the sensitivity is 2/n regardless of theta.
  const double hinge = covariance_sensitivity(LossModel::huber_svm(0.5), 100, theta);
  CHECK(hinge == doctest::Approx(0.02).epsilon(1e-15));
  CHECK_THROWS_AS(covariance_sensitivity(LossModel::logistic(), 0, theta), InvalidArgument);
}

TEST_CASE("swapping one record moves empirical pieces within the sensitivity bound") {
  // Direct check of the worst-case-swap bounds the calibration relies on.
  Sampler sampler(RngStream{94, 0});
  const Eigen::Index n = 50;
  const Eigen::Index d = 3;
  const LossModel m = LossModel::huber_svm(1.0);

  Matrix x(n, d);
  Vector y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    x.row(i) =
        (sampler.unit_sphere(d) * std::pow(sampler.uniform01(), 1.0 / 3.0)).transpose();
    y(i) = sampler.uniform01() < 0.5 ? 1.0 : -1.0;
  }
  Vector theta = sampler.gaussian_iso(d, 1.0);

  const auto mean_hessian = [&](const Matrix& xs, const Vector& ys) {
    Matrix h = Matrix::Zero(d, d);
    for (Eigen::Index i = 0; i < n; ++i) {
      h += per_record_hessian(m, xs.row(i).transpose(), ys(i), theta);
    }
    return Matrix(h / static_cast<double>(n));
  };

  const Matrix base = mean_hessian(x, y);
  const double sens = hessian_sensitivity(m, n);
  for (int trial = 0; trial < 200; ++trial) {
    Matrix x2 = x;
    Vector y2 = y;
    const Eigen::Index pick = static_cast<Eigen::Index>(sampler.bounded(static_cast<std::int64_t>(n)));
    x2.row(pick) =
        (sampler.unit_sphere(d) * std::pow(sampler.uniform01(), 1.0 / 3.0)).transpose();
    y2(pick) = sampler.uniform01() < 0.5 ? 1.0 : -1.0;
    const double dist = (mean_hessian(x2, y2) - base).norm();
    CHECK(dist <= sens + 1e-12);
  }
}

}  // namespace
}  // namespace dperm
