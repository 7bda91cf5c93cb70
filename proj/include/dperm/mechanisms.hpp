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

#ifndef DPERM_MECHANISMS_HPP_
#define DPERM_MECHANISMS_HPP_

#include "dperm/core_types.hpp"
#include "dperm/rng.hpp"

namespace dperm {

// A symmetric matrix whose eigenvalues are guaranteed to sit at or above a
// positive floor (up to 1e-9 slack), as produced by project_spd. Downstream
// code factorizes these without further checks, so the guarantee is load
// bearing: only the functions below construct one.
struct SPDMatrix {
  Matrix entries;
  double floor = 0.0;
};

// Raises unless m is square, symmetric to 1e-12 per entry, and has all
// eigenvalues >= m.floor - 1e-9. Used at trust boundaries and in tests.
void validate_spd(const SPDMatrix& m);

// Spec'd sampling entry points; each call consumes a fresh sampler on the
// given stream, so equal streams give equal draws.
Vector sample_spherical_laplace(int dim, double gamma, RngStream rng);
Vector sample_gaussian_iso(int dim, double sigma2, RngStream rng);

// Nearest-SPD projection: symmetrize to (m + m^T)/2, eigendecompose, clamp
// every eigenvalue below `floor` up to it, reconstruct. Idempotent on its own
// output. Raises EigenFailure if the eigensolver does not converge and
// InvalidArgument on non-square or non-finite input or floor <= 0.
SPDMatrix project_spd(const Matrix& m, double floor);

// Releases a d x d matrix of L2-sensitivity `sens` under the budget phi by
// adding matrix-shaped noise and projecting back to the SPD cone with floor
// 2c. Pure DP: one spherical-Laplace draw in d^2 dimensions with rate
// phi / sens. zCDP: i.i.d. N(0, sens^2 / (2 phi)) on each of the d^2
// entries. Noise is reshaped row-major onto the matrix; the projection's
// symmetrization step is what makes the asymmetric noise admissible.
SPDMatrix priv_spd_mat(const Matrix& m, double sens, const PrivacyBudget& phi, double c,
                       NoiseSource& noise);
SPDMatrix priv_spd_mat(const Matrix& m, double sens, const PrivacyBudget& phi, double c,
                       RngStream rng);

// Symmetric positive square root via eigendecomposition. The floor keeps
// every eigenvalue strictly positive, so the root always exists.
Matrix spd_sqrt(const SPDMatrix& m);

}  // namespace dperm

#endif  // DPERM_MECHANISMS_HPP_
