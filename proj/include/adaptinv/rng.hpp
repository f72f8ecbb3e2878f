#pragma once

#include <cstdint>
#include <random>

#include <boost/random/normal_distribution.hpp>
#include <boost/random/uniform_01.hpp>

namespace adaptinv {

// mt19937_64 output is fixed by the standard, and the boost distributions
// are portable code, so draws are identical across platforms and compilers
// (std::normal_distribution is not).
using Rng = std::mt19937_64;

inline Rng make_rng(std::int64_t seed) { return Rng(static_cast<std::uint64_t>(seed)); }

inline double standard_normal(Rng& rng) {
  boost::random::normal_distribution<double> dist(0.0, 1.0);
  return dist(rng);
}

inline double uniform01(Rng& rng) {
  boost::random::uniform_01<double> dist;
  return dist(rng);
}

}  // namespace adaptinv
