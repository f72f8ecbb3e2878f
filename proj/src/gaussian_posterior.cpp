#include "adaptinv/gaussian_posterior.hpp"

#include <algorithm>
#include <cmath>

#include "adaptinv/errors.hpp"
#include "adaptinv/numeric.hpp"
#include "adaptinv/spectral.hpp"

namespace adaptinv {

void posterior_moments(double alpha, const SpectralData& spectra, std::span<const double> y,
                       std::span<double> means, std::span<double> vars) {
  for (std::size_t idx = 0; idx < means.size(); ++idx) {
    const double k = spectra.kappa[idx];
    // Multiply numerator and denominator of the textbook form by kappa^2.
    const double denom = spectra.prior_precision(idx, alpha) + spectra.n * k * k;
    means[idx] = spectra.n * k * y[idx] / denom;
    vars[idx] = 1.0 / denom;
  }
}

CoordinatePosterior posterior(double alpha, const Observation& obs, std::size_t J) {
  require(std::isfinite(alpha) && alpha >= 0.0, "alpha must be >= 0");
  obs.validate();
  require(J >= 1 && J <= obs.N, "posterior truncation J must lie in [1, N]");
  const SpectralData spectra(obs.model, obs.n, J);
  CoordinatePosterior post;
  post.alpha = alpha;
  post.n = obs.n;
  post.model = obs.model;
  post.means.resize(J);
  post.vars.resize(J);
  posterior_moments(alpha, spectra, obs.y, post.means, post.vars);
  return post;
}

CoordinatePosterior posterior(double alpha, const Observation& obs) {
  return posterior(alpha, obs, obs.N);
}

void sample_posterior(const CoordinatePosterior& post, Rng& rng, std::span<double> out) {
  for (std::size_t idx = 0; idx < out.size(); ++idx) {
    out[idx] = post.means[idx] + std::sqrt(post.vars[idx]) * standard_normal(rng);
  }
}

std::vector<double> sample_posterior(const CoordinatePosterior& post, std::int64_t seed) {
  Rng rng = make_rng(seed);
  std::vector<double> draw(post.size());
  sample_posterior(post, rng, draw);
  return draw;
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
  CompensatedSum s;
  const std::size_t len = std::max(a.size(), b.size());
  for (std::size_t idx = 0; idx < len; ++idx) {
    const double d = (idx < a.size() ? a[idx] : 0.0) - (idx < b.size() ? b[idx] : 0.0);
    s += d * d;
  }
  return s.value();
}

double posterior_risk(const CoordinatePosterior& post, std::span<const double> mu0) {
  CompensatedSum s;
  for (std::size_t idx = 0; idx < post.size(); ++idx) {
    const double truth = idx < mu0.size() ? mu0[idx] : 0.0;
    const double bias = post.means[idx] - truth;
    s += bias * bias;
    s += post.vars[idx];
  }
  return s.value();
}

double posterior_risk(double alpha, const Observation& obs, std::span<const double> mu0) {
  return posterior_risk(posterior(alpha, obs), mu0);
}

std::vector<double> posterior_mean_function(const CoordinatePosterior& post,
                                            std::span<const double> t_grid) {
  return synthesize_function(post.means, t_grid);
}

}  // namespace adaptinv
