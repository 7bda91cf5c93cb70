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

#include "dperm/rng.hpp"

#include <cmath>
#include <string>

#include "dperm/errors.hpp"

namespace dperm {
namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

void require_dim(int dim) {
  if (dim < 1) {
    throw InvalidArgument("dim must be >= 1, got " + std::to_string(dim));
  }
}

void require_positive_finite(double v, const char* name) {
  if (!std::isfinite(v) || v <= 0.0) {
    throw InvalidArgument(std::string(name) + " must be positive and finite, got " +
                          std::to_string(v));
  }
}

}  // namespace

Pcg64::Pcg64(std::uint64_t seed, std::uint64_t stream_id) {
  // Expand both 64-bit inputs to 128 bits through splitmix64 so that nearby
  // seeds or stream ids still land in well-separated LCG states.
  std::uint64_t s = seed;
  const u128 initstate = (static_cast<u128>(splitmix64(s)) << 64) | splitmix64(s);
  std::uint64_t t = stream_id ^ 0xda3e39cb94b95bdbULL;
  const u128 initseq = (static_cast<u128>(splitmix64(t)) << 64) | splitmix64(t);
  inc_ = (initseq << 1) | 1u;
  state_ = 0u;
  next();
  state_ += initstate;
  next();
}

std::uint64_t Pcg64::next() {
  constexpr u128 kMul = (static_cast<u128>(0x2360ed051fc65da4ULL) << 64) | 0x4385df649fccf645ULL;
  state_ = state_ * kMul + inc_;
  const std::uint64_t xored =
      static_cast<std::uint64_t>(state_ >> 64) ^ static_cast<std::uint64_t>(state_);
  const unsigned rot = static_cast<unsigned>(state_ >> 122);
  return (xored >> rot) | (xored << ((64u - rot) & 63u));
}

Sampler::Sampler(RngStream stream) : engine_(stream.seed, stream.stream_id) {}

double Sampler::uniform01() {
  // 53 random bits centered in (0, 1); never returns an endpoint, so logs of
  // uniforms stay finite.
  return (static_cast<double>(engine_.next() >> 11) + 0.5) * 0x1.0p-53;
}

double Sampler::std_normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform01() - 1.0;
    v = 2.0 * uniform01() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * f;
  has_spare_ = true;
  return u * f;
}

double Sampler::gamma_draw(double shape, double rate) {
  if (!std::isfinite(shape) || shape < 1.0) {
    throw InvalidArgument("gamma_draw requires shape >= 1, got " + std::to_string(shape));
  }
  require_positive_finite(rate, "rate");
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = std_normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform01();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) {
      return d * v / rate;
    }
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) {
      return d * v / rate;
    }
  }
}

std::int64_t Sampler::bounded(std::int64_t n) {
  if (n < 1) {
    throw InvalidArgument("bounded requires n >= 1, got " + std::to_string(n));
  }
  const std::uint64_t un = static_cast<std::uint64_t>(n);
  const std::uint64_t threshold = (0 - un) % un;
  for (;;) {
    const std::uint64_t r = engine_.next();
    if (r >= threshold) {
      return static_cast<std::int64_t>(r % un);
    }
  }
}

Vector Sampler::unit_sphere(int dim) {
  require_dim(dim);
  Vector v(dim);
  for (;;) {
    for (int i = 0; i < dim; ++i) {
      v(i) = std_normal();
    }
    const double norm = v.norm();
    if (norm > 0.0 && std::isfinite(norm)) {
      return v / norm;
    }
  }
}

Vector Sampler::spherical_laplace(int dim, double gamma) {
  require_dim(dim);
  require_positive_finite(gamma, "gamma");
  const Vector direction = unit_sphere(dim);
  const double radius = gamma_draw(static_cast<double>(dim), gamma);
  return radius * direction;
}

Vector Sampler::gaussian_iso(int dim, double sigma2) {
  require_dim(dim);
  require_positive_finite(sigma2, "sigma2");
  const double sd = std::sqrt(sigma2);
  Vector v(dim);
  for (int i = 0; i < dim; ++i) {
    v(i) = sd * std_normal();
  }
  return v;
}

Vector ZeroNoise::spherical_laplace(int dim, double /*gamma*/) {
  require_dim(dim);
  return Vector::Zero(dim);
}

Vector ZeroNoise::gaussian_iso(int dim, double /*sigma2*/) {
  require_dim(dim);
  return Vector::Zero(dim);
}

}  // namespace dperm
