#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "adaptinv/rng.hpp"
#include "adaptinv/sequence_model.hpp"

namespace adaptinv {

/// Prior density lambda on the regularity alpha > 0.
class HyperPrior {
 public:
  struct Exponential {
    double rate;
  };
  struct Gamma {
    double shape;
    double rate;
  };
  struct InverseGamma {
    double shape;
    double scale;
  };
  using Kind = std::variant<Exponential, Gamma, InverseGamma>;

  static HyperPrior exponential(double rate = 1.0);
  static HyperPrior gamma(double shape, double rate);
  static HyperPrior inverse_gamma(double shape, double scale);

  /// log lambda(alpha); -inf for alpha <= 0.
  double log_density(double alpha) const;
  double density(double alpha) const;

  /// Constants (c2, c3, c4) such that
  ///   c4^{-1} a^{-c3} e^{-c2 a} <= lambda(a) <= c4 a^{-c3} e^{-c2 a}  for a >= c1,
  /// with c2 >= 0 and c3 > 1 whenever c2 == 0.
  struct Envelope {
    double c2;
    double c3;
    double c4;
  };
  Envelope envelope(double c1) const;

  const Kind& kind() const { return kind_; }

 private:
  explicit HyperPrior(Kind kind) : kind_(kind) {}
  Kind kind_;
};

/// N(alpha, sd^2) conditioned on the result being positive:
///   q(a' | a) = phi_sd(a' - a) / Phi(a / sd),  a' > 0.
struct TruncatedNormalProposal {
  double sd;

  double draw(double from, Rng& rng) const;
  double log_density(double to, double from) const;
};

/// log p(mu^J | alpha) up to an alpha-free constant:
///   sum_{j <= J} [ (1/2 + alpha) log j - 1/2 j^{1+2 alpha} mu_j^2 ].
double log_conditional_mu_density(std::span<const double> mu, double alpha);

/// log of the Metropolis-Hastings ratio for the move alpha -> alpha_prime with mu fixed:
///   log lambda(a') - log lambda(a) + log p(mu|a') - log p(mu|a) + log q(a|a') - log q(a'|a).
double log_acceptance_ratio(double alpha, double alpha_prime, std::span<const double> mu,
                            const HyperPrior& hyper, double proposal_sd);

struct AlphaStep {
  double alpha;
  bool accepted;
};

AlphaStep mh_alpha_step(double alpha, std::span<const double> mu, const HyperPrior& hyper,
                        double proposal_sd, Rng& rng);

struct HbConfig {
  std::size_t J = 1;
  std::size_t iterations = 1000;
  std::size_t burn_in = 100;
  std::optional<double> proposal_sd;  // unset: default_proposal_sd(n, J)
  std::int64_t seed = 0;
  std::size_t thin = 100;  // keep a full mu^J draw every `thin` post-burn-in sweeps
  double initial_alpha = 1.0;
  /// Test hook: hold alpha fixed and only run the conjugate mu updates.
  std::optional<double> pinned_alpha;

  /// Throws ConfigError on burn_in >= iterations, J == 0 or J > N.
  void validate(std::size_t N) const;
};

/// min(0.3 (1 v log log n), 2.38 / sqrt(2 sum_{j<=J} (log j)^2)). The second term
/// is the inverse curvature scale of alpha -> log p(mu^J | alpha); without it the
/// random walk is orders of magnitude too wide once J is in the thousands.
double default_proposal_sd(double n, std::size_t J);

/// Default configuration: J = N, burn-in 10% of iterations.
HbConfig default_hb_config(const Observation& obs, std::size_t iterations, std::int64_t seed);

struct HbChain {
  std::vector<double> alphas;  // post-burn-in draws
  std::vector<double> mu_mean;  // running moments of mu_j over post-burn-in sweeps
  std::vector<double> mu_var;
  std::vector<std::vector<double>> thinned_mu;
  std::size_t accepted = 0;
  std::size_t proposed = 0;
  double acceptance_rate = 0.0;  // accepted / proposed, 0 when nothing was proposed
  double proposal_sd = 0.0;  // the value actually used
  HbConfig config;
};

/// Metropolis-within-Gibbs for (alpha, mu^J): each sweep draws mu^J | alpha, Y
/// from the conjugate posterior and then makes one Metropolis-Hastings move on
/// alpha | mu^J. Throws NumericalError (with the sweep index) if the target
/// becomes non-finite.
HbChain run_mwg(const Observation& obs, const HyperPrior& hyper, const HbConfig& cfg);

struct ChainSummary {
  double acceptance_rate;
  double alpha_mean;
  double alpha_q025;
  double alpha_median;
  double alpha_q975;
  double alpha_mode;  // centre of the fullest histogram bin
};

ChainSummary summarize(const HbChain& chain, double mode_bin_width = 0.05);

/// Linear-interpolation (type 7) sample quantile.
double sample_quantile(std::span<const double> xs, double q);

/// Centre of the fullest bin of a histogram with edges at multiples of width.
/// Ties resolve to the leftmost bin.
double histogram_mode(std::span<const double> xs, double width);

/// Gelman-Rubin potential scale reduction over equal-length chains.
double potential_scale_reduction(const std::vector<std::vector<double>>& chains);

}  // namespace adaptinv
