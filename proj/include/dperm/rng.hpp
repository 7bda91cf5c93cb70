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

#ifndef DPERM_RNG_HPP_
#define DPERM_RNG_HPP_

#include <cstdint>

#include "dperm/core_types.hpp"

namespace dperm {

// Addresses one deterministic stream of randomness. Equal (seed, stream_id)
// pairs reproduce identical draw sequences on every platform; that is the
// whole reproducibility story, so nothing in the library ever touches a
// global RNG. Parallel work splits by stream_id, never by sharing a sampler.
struct RngStream {
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;

  RngStream with_stream(std::uint64_t id) const { return {seed, id}; }
};

// PCG XSL-RR 128/64. The stream id selects the LCG increment, so streams
// with a shared seed are distinct full-period sequences, not offsets of one
// another. All distribution transforms in Sampler sit on top of next() with
// fixed algorithms; std::* distributions are implementation-defined and
// would silently break cross-toolchain reproducibility.
class Pcg64 {
 public:
  Pcg64(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t next();

 private:
  using u128 = unsigned __int128;
  u128 state_;
  u128 inc_;
};

// The two noise shapes every mechanism consumes. Virtual so tests and
// diagnostics can collapse noise to zero (ZeroNoise) or splice distributions
// without touching mechanism code.
class NoiseSource {
 public:
  virtual ~NoiseSource() = default;

  // A draw with density proportional to exp(-gamma * ||beta||_2) on R^dim.
  virtual Vector spherical_laplace(int dim, double gamma) = 0;

  // A draw from N(0, sigma2 * I_dim).
  virtual Vector gaussian_iso(int dim, double sigma2) = 0;
};

// Stateful deterministic sampler over one stream.
class Sampler final : public NoiseSource {
 public:
  explicit Sampler(RngStream stream);

  // Uniform on the open interval (0, 1).
  double uniform01();

  // Standard normal via the polar method; pairs are cached across calls.
  double std_normal();

  // Gamma(shape, rate) for shape >= 1 (Marsaglia-Tsang squeeze).
  double gamma_draw(double shape, double rate);

  // Uniform on {0, ..., n-1}, free of modulo bias.
  std::int64_t bounded(std::int64_t n);

  // Uniform on the unit sphere in R^dim (normalized Gaussian vector).
  Vector unit_sphere(int dim);

  // Radius Gamma(dim, gamma) times a uniform direction: the radial
  // decomposition of the spherical-Laplace density.
  Vector spherical_laplace(int dim, double gamma) override;

  Vector gaussian_iso(int dim, double sigma2) override;

 private:
  Pcg64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// Returns zero vectors of the requested shape. Substituting it for a real
// sampler must reduce every mechanism to its non-private counterpart; tests
// rely on that reduction being exact.
class ZeroNoise final : public NoiseSource {
 public:
  Vector spherical_laplace(int dim, double gamma) override;
  Vector gaussian_iso(int dim, double sigma2) override;
};

}  // namespace dperm

#endif  // DPERM_RNG_HPP_
