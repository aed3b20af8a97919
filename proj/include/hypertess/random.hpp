#pragma once

#include <cstdint>
#include <random>

#include "hypertess/geometry.hpp"

namespace hypertess {

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// independent stream per replicate
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

inline double uniform01(Rng& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

// uniform direction on S^{d-1}
Vector random_direction(int d, Rng& rng);

// point uniform w.r.t. hyperbolic volume in B(o, R)
KleinPoint random_ball_point(int d, double R, Rng& rng);

// random isometry: boost by up to max_shift composed with a random rotation
Isometry random_isometry(int d, double max_shift, Rng& rng);

}  // namespace hypertess
