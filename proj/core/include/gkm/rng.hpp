#pragma once

#include <cstdint>
#include <cmath>
#include <limits>

namespace gkm {

/// SplitMix64 finalizer; a bijective 64-bit mixer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Hash of (seed, a, b); order of arguments matters.
constexpr std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t a,
                                     std::uint64_t b) noexcept {
  return mix64(mix64(mix64(seed) ^ a) ^ (b * 0xd1342543de82ef95ULL));
}

/// Top 53 bits of `bits` as a double in [0, 1).
constexpr double to_unit_double(std::uint64_t bits) noexcept {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/// Uniform [0,1) variate addressed by (seed, a, b); independent of evaluation order.
constexpr double counter_uniform(std::uint64_t seed, std::uint64_t a, std::uint64_t b) noexcept {
  return to_unit_double(counter_hash(seed, a, b));
}

/// SplitMix64 stream. Satisfies UniformRandomBitGenerator.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  constexpr result_type operator()() noexcept {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  double uniform() noexcept { return to_unit_double((*this)()); }

  /// Standard normal variate via Box-Muller; portable across standard libraries.
  double normal() noexcept;

 private:
  std::uint64_t state_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

inline double SplitMix64::normal() noexcept {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * 3.14159265358979323846 * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

}  // namespace gkm
