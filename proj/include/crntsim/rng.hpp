#pragma once

#include <cstdint>
#include <initializer_list>

namespace crntsim {

/// splitmix64, used for seeding and for hashing tag tuples into seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/// Deterministic random stream (xoshiro256**). Every consumer in the
/// simulator gets its own stream derived from the run seed plus a tag
/// tuple, so draws are reproducible regardless of evaluation order.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& w : s_) w = splitmix64(sm);
  }

  static RngStream from(std::uint64_t seed, std::initializer_list<std::uint64_t> tags) {
    std::uint64_t h = seed;
    for (std::uint64_t t : tags) {
      std::uint64_t mix = t + 0x9e3779b97f4a7c15ull;
      h = (h ^ splitmix64(mix)) * 0xff51afd7ed558ccdull;
    }
    return RngStream(h);
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  /// Uniform double in [0, 1), 53-bit resolution.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, n). Exact for powers of two; rejection
  /// sampling otherwise.
  std::uint32_t next_below(std::uint32_t n);

  /// Standard normal via Box-Muller.
  double next_normal();

  /// Gamma(shape, 1) via Marsaglia-Tsang; shape >= 0.5 supported.
  double next_gamma(double shape);

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  std::uint64_t s_[4] = {};
};

}  // namespace crntsim
