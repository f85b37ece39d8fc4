#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "copent/data.hpp"

namespace copent {

/// Reproducible random stream.
///
/// Engine: std::mt19937_64, whose output sequence is fixed by the C++
/// standard. Uniforms take the top 53 bits of each draw; normals come from
/// the Box-Muller transform, both variates of a pair used in order. No
/// std::*_distribution is involved, so streams match across standard
/// libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on (0, 1].
  double uniform_open0() { return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53; }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double radius = std::sqrt(-2.0 * std::log(uniform_open0()));
    const double angle = 2.0 * std::numbers::pi * uniform();
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

struct GaussianSpec {
  double rho = 0.0;
  std::size_t T = 1000;
  std::uint64_t seed = 0;
};

namespace detail {
inline void check_rho(double rho) {
  if (!(std::abs(rho) < 1.0)) {
    throw std::invalid_argument("correlation must satisfy |rho| < 1, got " + std::to_string(rho));
  }
}
}  // namespace detail

/// T draws of (X, Y): X ~ N(0,1), Y = rho X + sqrt(1 - rho^2) Z.
inline SampleMatrix gaussian_sample(const GaussianSpec& spec) {
  detail::check_rho(spec.rho);
  if (spec.T < 2) throw std::invalid_argument("gaussian_sample needs T >= 2");
  Rng rng(spec.seed);
  const double s = std::sqrt(1.0 - spec.rho * spec.rho);
  std::vector<double> v(spec.T * 2);
  for (std::size_t t = 0; t < spec.T; ++t) {
    const double x = rng.normal();
    const double z = rng.normal();
    v[2 * t] = x;
    v[2 * t + 1] = spec.rho * x + s * z;
  }
  return SampleMatrix(spec.T, 2, std::move(v), {"x", "y"});
}

/// Mutual information of a standard bivariate Gaussian, -0.5 ln(1 - rho^2).
inline double gaussian_mi_analytic(double rho) {
  detail::check_rho(rho);
  return -0.5 * std::log1p(-rho * rho);
}

}  // namespace copent
