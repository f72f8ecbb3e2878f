#pragma once

#include <cmath>

#include "adaptinv/rng.hpp"

namespace adaptinv {

template <class State>
struct MhOutcome {
  State state;
  bool accepted;
  double log_acceptance;
};

/// One Metropolis-Hastings transition.
///
/// `proposal` provides draw(from, rng) and log_density(to, from) = log q(to | from).
/// The candidate is accepted with probability
///   1 ^ pi(x') q(x | x') / (pi(x) q(x' | x)),
/// computed in log space. One uniform is consumed per call whether or not the
/// move is accepted, so streams stay aligned across runs.
template <class State, class LogTarget, class Proposal>
MhOutcome<State> metropolis_step(const State& current, LogTarget&& log_target, Proposal&& proposal,
                                 Rng& rng) {
  State candidate = proposal.draw(current, rng);
  const double log_a = log_target(candidate) - log_target(current) +
                       proposal.log_density(current, candidate) -
                       proposal.log_density(candidate, current);
  const double u = uniform01(rng);
  if (std::log(u) < log_a) {
    return {candidate, true, log_a};
  }
  return {current, false, log_a};
}

}  // namespace adaptinv
