#include "adaptinv/hierarchical_bayes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <string>

#include "adaptinv/errors.hpp"
#include "adaptinv/gaussian_posterior.hpp"
#include "adaptinv/metropolis.hpp"
#include "adaptinv/numeric.hpp"
#include "adaptinv/spectral.hpp"

namespace adaptinv {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_std_normal_cdf(double x) { return std::log(0.5 * std::erfc(-x / std::numbers::sqrt2)); }

}  // namespace

HyperPrior HyperPrior::exponential(double rate) {
  require(rate > 0.0, "exponential hyperprior needs rate > 0");
  return HyperPrior(Exponential{rate});
}

HyperPrior HyperPrior::gamma(double shape, double rate) {
  require(shape > 0.0 && rate > 0.0, "gamma hyperprior needs shape, rate > 0");
  return HyperPrior(Gamma{shape, rate});
}

HyperPrior HyperPrior::inverse_gamma(double shape, double scale) {
  require(shape > 0.0 && scale > 0.0, "inverse-gamma hyperprior needs shape, scale > 0");
  return HyperPrior(InverseGamma{shape, scale});
}

double HyperPrior::log_density(double alpha) const {
  if (!(alpha > 0.0)) return kNegInf;
  return std::visit(
      Overloaded{
          [&](const Exponential& h) { return std::log(h.rate) - h.rate * alpha; },
          [&](const Gamma& h) {
            return h.shape * std::log(h.rate) - std::lgamma(h.shape) +
                   (h.shape - 1.0) * std::log(alpha) - h.rate * alpha;
          },
          [&](const InverseGamma& h) {
            return h.shape * std::log(h.scale) - std::lgamma(h.shape) -
                   (h.shape + 1.0) * std::log(alpha) - h.scale / alpha;
          },
      },
      kind_);
}

double HyperPrior::density(double alpha) const { return std::exp(log_density(alpha)); }

HyperPrior::Envelope HyperPrior::envelope(double c1) const {
  require(c1 > 0.0, "envelope needs c1 > 0");
  const auto symmetric = [](double a) { return std::max(a, 1.0 / a); };
  return std::visit(
      Overloaded{
          [&](const Exponential& h) { return Envelope{h.rate, 0.0, symmetric(h.rate)}; },
          [&](const Gamma& h) {
            const double norm = std::exp(h.shape * std::log(h.rate) - std::lgamma(h.shape));
            return Envelope{h.rate, 1.0 - h.shape, symmetric(norm)};
          },
          [&](const InverseGamma& h) {
            // lambda(a) a^{shape+1} = norm e^{-scale/a} lies in [norm e^{-scale/c1}, norm].
            const double norm = std::exp(h.shape * std::log(h.scale) - std::lgamma(h.shape));
            const double low = norm * std::exp(-h.scale / c1);
            return Envelope{0.0, h.shape + 1.0, std::max(norm, 1.0 / low)};
          },
      },
      kind_);
}

double TruncatedNormalProposal::draw(double from, Rng& rng) const {
  // Exact sampling by rejection; the acceptance probability Phi(from/sd) is at
  // least 1/2 for from > 0.
  for (;;) {
    const double candidate = from + sd * standard_normal(rng);
    if (candidate > 0.0) return candidate;
  }
}

double TruncatedNormalProposal::log_density(double to, double from) const {
  if (!(to > 0.0)) return kNegInf;
  const double z = (to - from) / sd;
  return -0.5 * z * z - std::log(sd) - 0.5 * std::log(2.0 * std::numbers::pi) -
         log_std_normal_cdf(from / sd);
}

double log_conditional_mu_density(std::span<const double> mu, double alpha) {
  CompensatedSum s;
  for (std::size_t j = 1; j <= mu.size(); ++j) {
    const double log_j = std::log(static_cast<double>(j));
    s += (0.5 + alpha) * log_j;
    const double m = mu[j - 1];
    if (m != 0.0) {
      // j^{1+2a} mu^2 in log space: large alpha gives +inf, never inf * 0.
      s += -0.5 * std::exp((1.0 + 2.0 * alpha) * log_j + 2.0 * std::log(std::abs(m)));
    }
  }
  return s.value();
}

namespace {

struct AlphaTarget {
  std::span<const double> mu;
  const HyperPrior& hyper;

  double operator()(double alpha) const {
    const double prior = hyper.log_density(alpha);
    if (prior == kNegInf) return kNegInf;
    return prior + log_conditional_mu_density(mu, alpha);
  }
};

}  // namespace

double log_acceptance_ratio(double alpha, double alpha_prime, std::span<const double> mu,
                            const HyperPrior& hyper, double proposal_sd) {
  const AlphaTarget target{mu, hyper};
  const TruncatedNormalProposal q{proposal_sd};
  return target(alpha_prime) - target(alpha) + q.log_density(alpha, alpha_prime) -
         q.log_density(alpha_prime, alpha);
}

AlphaStep mh_alpha_step(double alpha, std::span<const double> mu, const HyperPrior& hyper,
                        double proposal_sd, Rng& rng) {
  require(alpha > 0.0, "alpha must be > 0 for the Metropolis step");
  require(proposal_sd > 0.0, "proposal sd must be > 0");
  const auto outcome =
      metropolis_step(alpha, AlphaTarget{mu, hyper}, TruncatedNormalProposal{proposal_sd}, rng);
  return {outcome.state, outcome.accepted};
}

void HbConfig::validate(std::size_t N) const {
  require(J >= 1, "chain truncation J must be >= 1");
  require(J <= N, "chain truncation J exceeds the observation length N");
  require(iterations >= 1, "chain needs at least one iteration");
  require(burn_in < iterations, "burn-in must be smaller than the number of iterations");
  require(thin >= 1, "thinning interval must be >= 1");
  require(initial_alpha > 0.0, "initial alpha must be > 0");
  if (proposal_sd) require(*proposal_sd > 0.0, "proposal sd must be > 0");
  if (pinned_alpha) require(*pinned_alpha >= 0.0, "pinned alpha must be >= 0");
}

double default_proposal_sd(double n, std::size_t J) {
  const double log_log_n = n > std::numbers::e ? std::log(std::log(n)) : 0.0;
  const double base = 0.3 * std::max(1.0, log_log_n);
  CompensatedSum curvature;
  for (std::size_t j = 2; j <= J; ++j) {
    const double l = std::log(static_cast<double>(j));
    curvature += 2.0 * l * l;
  }
  if (curvature.value() <= 0.0) return base;
  return std::min(base, 2.38 / std::sqrt(curvature.value()));
}

HbConfig default_hb_config(const Observation& obs, std::size_t iterations, std::int64_t seed) {
  HbConfig cfg;
  cfg.J = obs.N;
  cfg.iterations = iterations;
  cfg.burn_in = iterations / 10;
  cfg.seed = seed;
  return cfg;
}

HbChain run_mwg(const Observation& obs, const HyperPrior& hyper, const HbConfig& cfg) {
  obs.validate();
  cfg.validate(obs.N);
  const std::size_t J = cfg.J;
  const SpectralData spectra(obs.model, obs.n, J);
  const std::span<const double> y(obs.y.data(), J);

  HbChain chain;
  chain.config = cfg;
  chain.proposal_sd = cfg.proposal_sd.value_or(default_proposal_sd(obs.n, J));
  chain.alphas.reserve(cfg.iterations - cfg.burn_in);
  chain.mu_mean.assign(J, 0.0);
  std::vector<double> m2(J, 0.0);

  Rng rng = make_rng(cfg.seed);
  std::vector<double> means(J), vars(J), mu(J);
  double alpha = cfg.pinned_alpha.value_or(cfg.initial_alpha);
  std::size_t kept = 0;

  for (std::size_t sweep = 0; sweep < cfg.iterations; ++sweep) {
    posterior_moments(alpha, spectra, y, means, vars);
    for (std::size_t j = 0; j < J; ++j) mu[j] = means[j] + std::sqrt(vars[j]) * standard_normal(rng);

    if (!cfg.pinned_alpha) {
      const double current = hyper.log_density(alpha) + log_conditional_mu_density(mu, alpha);
      if (!std::isfinite(current)) {
        throw NumericalError("non-finite log target at sweep " + std::to_string(sweep));
      }
      const AlphaStep step = mh_alpha_step(alpha, mu, hyper, chain.proposal_sd, rng);
      alpha = step.alpha;
      ++chain.proposed;
      if (step.accepted) ++chain.accepted;
    }

    if (sweep < cfg.burn_in) continue;
    chain.alphas.push_back(alpha);
    ++kept;
    // Welford update of the per-coordinate moments.
    const double inv_kept = 1.0 / static_cast<double>(kept);
    for (std::size_t j = 0; j < J; ++j) {
      const double delta = mu[j] - chain.mu_mean[j];
      chain.mu_mean[j] += delta * inv_kept;
      m2[j] += delta * (mu[j] - chain.mu_mean[j]);
    }
    if ((kept - 1) % cfg.thin == 0) chain.thinned_mu.push_back(mu);
  }

  chain.mu_var.resize(J);
  for (std::size_t j = 0; j < J; ++j) {
    chain.mu_var[j] = kept > 1 ? m2[j] / static_cast<double>(kept - 1) : 0.0;
  }
  chain.acceptance_rate =
      chain.proposed == 0 ? 0.0
                          : static_cast<double>(chain.accepted) / static_cast<double>(chain.proposed);
  return chain;
}

double sample_quantile(std::span<const double> xs, double q) {
  require(!xs.empty(), "quantile of an empty sample");
  require(q >= 0.0 && q <= 1.0, "quantile level must lie in [0, 1]");
  std::vector<double> sorted(xs.begin(), xs.end());
  std::sort(sorted.begin(), sorted.end());
  const double h = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

double histogram_mode(std::span<const double> xs, double width) {
  require(!xs.empty(), "mode of an empty sample");
  require(width > 0.0, "histogram bin width must be > 0");
  std::map<long long, std::size_t> counts;
  for (double x : xs) ++counts[static_cast<long long>(std::floor(x / width))];
  auto best = counts.begin();
  for (auto it = counts.begin(); it != counts.end(); ++it) {
    if (it->second > best->second) best = it;
  }
  return (static_cast<double>(best->first) + 0.5) * width;
}

ChainSummary summarize(const HbChain& chain, double mode_bin_width) {
  require(!chain.alphas.empty(), "chain has no post-burn-in draws");
  CompensatedSum total;
  for (double a : chain.alphas) total += a;
  return ChainSummary{
      chain.acceptance_rate,
      total.value() / static_cast<double>(chain.alphas.size()),
      sample_quantile(chain.alphas, 0.025),
      sample_quantile(chain.alphas, 0.5),
      sample_quantile(chain.alphas, 0.975),
      histogram_mode(chain.alphas, mode_bin_width),
  };
}

double potential_scale_reduction(const std::vector<std::vector<double>>& chains) {
  require(chains.size() >= 2, "potential scale reduction needs at least two chains");
  const std::size_t len = chains.front().size();
  require(len >= 2, "chains need at least two draws");
  for (const auto& c : chains) require(c.size() == len, "chains must have equal length");
  const double m = static_cast<double>(chains.size());
  const double n = static_cast<double>(len);
  std::vector<double> means;
  double within = 0.0;
  for (const auto& c : chains) {
    double mean = 0.0;
    for (double x : c) mean += x;
    mean /= n;
    double var = 0.0;
    for (double x : c) var += (x - mean) * (x - mean);
    within += var / (n - 1.0);
    means.push_back(mean);
  }
  within /= m;
  double grand = 0.0;
  for (double mean : means) grand += mean;
  grand /= m;
  double between = 0.0;
  for (double mean : means) between += (mean - grand) * (mean - grand);
  between *= n / (m - 1.0);
  const double pooled = (n - 1.0) / n * within + between / n;
  return std::sqrt(pooled / within);
}

}  // namespace adaptinv
