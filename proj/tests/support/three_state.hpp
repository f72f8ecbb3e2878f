#pragma once

// Runs the library's generic Metropolis-Hastings step on a three-state chain
// and tallies transitions, for comparison with oracle::mh_kernel.

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>

#include "adaptinv/metropolis.hpp"
#include "oracles.hpp"

namespace three_state {

struct Proposal {
  oracle::Matrix3 q;

  int draw(int from, adaptinv::Rng& rng) const {
    const double u = adaptinv::uniform01(rng);
    double acc = 0.0;
    for (int j = 0; j < 3; ++j) {
      acc += q[from][j];
      if (u < acc) return j;
    }
    return 2;
  }
  double log_density(int to, int from) const { return std::log(q[from][to]); }
};

struct Tally {
  std::array<std::array<std::size_t, 3>, 3> counts{};
  std::array<std::size_t, 3> visits{};
};

inline Tally run(const std::array<double, 3>& pi, const oracle::Matrix3& q, std::size_t steps,
                 std::int64_t seed) {
  adaptinv::Rng rng = adaptinv::make_rng(seed);
  const auto log_target = [&](int s) { return std::log(pi[s]); };
  Tally t;
  int state = 0;
  for (std::size_t k = 0; k < steps; ++k) {
    const auto out = adaptinv::metropolis_step(state, log_target, Proposal{q}, rng);
    ++t.visits[state];
    ++t.counts[state][out.state];
    state = out.state;
  }
  return t;
}

/// Largest |empirical - exact| / standard error over the nine transition probabilities.
inline double max_z(const Tally& t, const oracle::Matrix3& p) {
  double worst = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double v = static_cast<double>(t.visits[i]);
    for (int j = 0; j < 3; ++j) {
      const double est = static_cast<double>(t.counts[i][j]) / v;
      const double se = std::sqrt(p[i][j] * (1.0 - p[i][j]) / v);
      if (se == 0.0) {
        if (est != p[i][j]) return INFINITY;
        continue;
      }
      worst = std::max(worst, std::abs(est - p[i][j]) / se);
    }
  }
  return worst;
}

inline const std::array<double, 3> kTarget{0.2, 0.5, 0.3};
// Asymmetric proposal so the Hastings correction matters.
inline const oracle::Matrix3 kProposal{{{0.1, 0.6, 0.3}, {0.5, 0.2, 0.3}, {0.25, 0.25, 0.5}}};

}  // namespace three_state
