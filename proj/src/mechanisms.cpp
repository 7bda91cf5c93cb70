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

#include "dperm/mechanisms.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <string>

#include "dperm/errors.hpp"

namespace dperm {
namespace {

constexpr double kSymmetryTolerance = 1e-12;
constexpr double kFloorSlack = 1e-9;

void require_positive_finite(double v, const char* name) {
  if (!std::isfinite(v) || v <= 0.0) {
    throw InvalidArgument(std::string(name) + " must be positive and finite, got " +
                          std::to_string(v));
  }
}

void require_square_finite(const Matrix& m) {
  if (m.rows() != m.cols() || m.rows() < 1) {
    throw InvalidArgument("matrix must be square and nonempty, got " + std::to_string(m.rows()) +
                          " x " + std::to_string(m.cols()));
  }
  if (!m.allFinite()) {
    throw InvalidArgument("matrix has non-finite entries");
  }
}

}  // namespace

void validate_spd(const SPDMatrix& m) {
  require_square_finite(m.entries);
  require_positive_finite(m.floor, "floor");
  const Matrix asym = m.entries - m.entries.transpose();
  if (asym.cwiseAbs().maxCoeff() > kSymmetryTolerance) {
    throw InvalidArgument("SPD matrix is asymmetric beyond tolerance");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m.entries, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw EigenFailure("eigendecomposition did not converge");
  }
  if (solver.eigenvalues().minCoeff() < m.floor - kFloorSlack) {
    throw InvalidArgument("SPD matrix has an eigenvalue below its floor");
  }
}

Vector sample_spherical_laplace(int dim, double gamma, RngStream rng) {
  Sampler sampler(rng);
  return sampler.spherical_laplace(dim, gamma);
}

Vector sample_gaussian_iso(int dim, double sigma2, RngStream rng) {
  Sampler sampler(rng);
  return sampler.gaussian_iso(dim, sigma2);
}

SPDMatrix project_spd(const Matrix& m, double floor) {
  require_square_finite(m);
  require_positive_finite(floor, "floor");
  const Matrix sym = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw EigenFailure("eigendecomposition did not converge");
  }
  Vector values = solver.eigenvalues();
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    values(i) = std::max(values(i), floor);
  }
  SPDMatrix out;
  const Matrix& vectors = solver.eigenvectors();
  out.entries = vectors * values.asDiagonal() * vectors.transpose();
  // Reconstruction can pick up ulp-scale asymmetry; symmetrize exactly so the
  // invariant holds bit-for-bit.
  out.entries = 0.5 * (out.entries + Matrix(out.entries.transpose()));
  out.floor = floor;
  return out;
}

SPDMatrix priv_spd_mat(const Matrix& m, double sens, const PrivacyBudget& phi, double c,
                       NoiseSource& noise) {
  require_square_finite(m);
  require_positive_finite(sens, "sens");
  require_positive_finite(phi.value, "phi");
  require_positive_finite(c, "c");
  const int d = static_cast<int>(m.rows());
  Vector eta;
  if (phi.kind == BudgetKind::kPureDP) {
    eta = noise.spherical_laplace(d * d, phi.value / sens);
  } else {
    eta = noise.gaussian_iso(d * d, sens * sens / (2.0 * phi.value));
  }
  Matrix noisy = m;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      noisy(i, j) += eta(i * d + j);
    }
  }
  return project_spd(noisy, 2.0 * c);
}

SPDMatrix priv_spd_mat(const Matrix& m, double sens, const PrivacyBudget& phi, double c,
                       RngStream rng) {
  Sampler sampler(rng);
  return priv_spd_mat(m, sens, phi, c, sampler);
}

Matrix spd_sqrt(const SPDMatrix& m) {
  require_square_finite(m.entries);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m.entries);
  if (solver.info() != Eigen::Success) {
    throw EigenFailure("eigendecomposition did not converge");
  }
  Vector values = solver.eigenvalues();
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    // The floor guarantee makes negatives impossible up to slack; clip that
    // slack rather than letting sqrt produce NaN.
    values(i) = std::sqrt(std::max(values(i), 0.0));
  }
  const Matrix& vectors = solver.eigenvectors();
  Matrix root = vectors * values.asDiagonal() * vectors.transpose();
  return 0.5 * (root + Matrix(root.transpose()));
}

}  // namespace dperm
