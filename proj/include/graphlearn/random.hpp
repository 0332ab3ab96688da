#pragma once

// Deterministic randomness utilities.
//
// Every stochastic routine in the library draws from one explicit engine
// (std::mt19937_64) through the helpers below. Gaussian variates use the
// Box-Muller transform instead of std::normal_distribution, whose output
// is implementation defined; this keeps sequences identical across
// toolchains. Sub-streams (per trial, per column, per purpose) get their
// seeds from a splitmix64 chain so that parallel jobs are independent of
// scheduling order.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace graphlearn {

[[nodiscard]] constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seed of sub-stream `index` of a parent stream.
[[nodiscard]] constexpr std::uint64_t derive_seed(std::uint64_t seed,
                                                  std::uint64_t index) noexcept {
  return splitmix64(seed ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

[[nodiscard]] constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a,
                                                  std::uint64_t b) noexcept {
  return derive_seed(derive_seed(seed, a), b);
}

class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1) with 53-bit resolution.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Standard normal deviate (Box-Muller; deviates are produced in pairs).
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;  // (0, 1]
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace graphlearn
