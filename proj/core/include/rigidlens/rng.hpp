#ifndef RIGIDLENS_RNG_HPP
#define RIGIDLENS_RNG_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace rigidlens {

// Distribution helpers built on raw mt19937_64 draws; std::*_distribution is
// implementation-defined, these reproduce bit-identically everywhere.

inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform_pm1(std::mt19937_64& rng) {
  return 2.0 * uniform01(rng) - 1.0;
}

inline double gaussian(std::mt19937_64& rng) {
  double u1 = uniform01(rng);
  while (u1 <= 0.0) u1 = uniform01(rng);
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace rigidlens

#endif  // RIGIDLENS_RNG_HPP
