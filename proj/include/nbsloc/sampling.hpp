#pragma once

// Gamma and Beta variates with a fixed, documented generator chain:
//   std::mt19937_64 (bit-exact across standard libraries)
//   -> 53-bit uniform in (0, 1)
//   -> Marsaglia polar normal
//   -> Marsaglia-Tsang gamma (shape < 1 boosted by U^{1/shape})
//   -> Beta as X / (X + Y).
// No std::*_distribution is used, so a seed reproduces the same stream on
// every conforming platform with the same libm.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "nbsloc/errors.hpp"

namespace nbsloc {

class VariateStream {
 public:
  explicit VariateStream(std::uint64_t seed) : engine_(seed) {}

  // Uniform on the open interval (0, 1).
  double uniform() {
    for (;;) {
      const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
      if (u > 0.0) return u;
    }
  }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double x, y, s;
    do {
      x = 2.0 * uniform() - 1.0;
      y = 2.0 * uniform() - 1.0;
      s = x * x + y * y;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = y * f;
    has_spare_ = true;
    return x * f;
  }

  double gamma(double shape) {
    detail::require(shape > 0.0, "gamma variate: shape must be > 0");
    if (shape < 1.0) {
      const double g = gamma(shape + 1.0);
      return g * std::pow(uniform(), 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x, v;
      do {
        x = normal();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      const double u = uniform();
      if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
      if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
  }

  double beta(double a, double b) {
    const double x = gamma(a);
    const double y = gamma(b);
    return x / (x + y);
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// n i.i.d. Beta(a, b) variates, deterministic in `seed`.
inline std::vector<double> sample_beta(double a, double b, long n, std::uint64_t seed) {
  detail::require(a > 0.0 && b > 0.0, "sample_beta: shapes must be > 0");
  detail::require(n >= 1, "sample_beta: n must be >= 1");
  VariateStream stream(seed);
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) out.push_back(stream.beta(a, b));
  return out;
}

}  // namespace nbsloc
