#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace soco {

/// Deterministic scalar RNG used by every stochastic generator.
///
/// The algorithm is pinned so CSV goldens stay stable across platforms:
/// mt19937_64 for the raw stream, uniforms taken as the top 53 bits, and
/// gaussians via Box-Muller (std::normal_distribution is implementation
/// defined, so it is not used).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  /// Uniform double in [0, 1).
  double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  /// Standard normal via Box-Muller; draws two uniforms per pair.
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    do {
      u1 = uniform01();
    } while (u1 <= 0.0);
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace soco
