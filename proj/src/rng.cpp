#include "crntsim/rng.hpp"

#include <cmath>

namespace crntsim {

std::uint32_t RngStream::next_below(std::uint32_t n) {
  if (n == 0) return 0;
  if ((n & (n - 1)) == 0) return static_cast<std::uint32_t>(next_u64() & (n - 1));
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t v;
  do {
    v = next_u64();
  } while (v >= limit);
  return static_cast<std::uint32_t>(v % n);
}

double RngStream::next_normal() {
  // Box-Muller; u1 kept away from zero for the log.
  double u1;
  do {
    u1 = next_double();
  } while (u1 <= 0.0);
  const double u2 = next_double();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

double RngStream::next_gamma(double shape) {
  if (shape < 1.0) {
    // Boost: Gamma(a) = Gamma(a+1) * U^{1/a}
    const double g = next_gamma(shape + 1.0);
    double u;
    do {
      u = next_double();
    } while (u <= 0.0);
    return g * std::pow(u, 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = next_normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = next_double();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

}  // namespace crntsim
