#include "adaptinv/empirical_bayes.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "adaptinv/errors.hpp"
#include "adaptinv/numeric.hpp"
#include "adaptinv/spectral.hpp"

namespace adaptinv {

double log_likelihood(double alpha, const SpectralData& spectra, std::span<const double> y) {
  CompensatedSum s;
  for (std::size_t idx = 0; idx < spectra.size(); ++idx) {
    const double r = spectra.ratio(idx, alpha);
    // n^2 Y^2 / (t + n) = n Y^2 r / (1 + r) with t = n / r.
    s += std::log1p(r) - spectra.n * y[idx] * y[idx] * shrink_ratio(r);
  }
  return -0.5 * s.value();
}

double log_likelihood(double alpha, const Observation& obs) {
  require(std::isfinite(alpha) && alpha >= 0.0, "alpha must be >= 0");
  obs.validate();
  return log_likelihood(alpha, SpectralData(obs.model, obs.n, obs.N), obs.y);
}

double score(double alpha, const SpectralData& spectra, std::span<const double> y) {
  CompensatedSum s;
  for (std::size_t idx = 0; idx < spectra.size(); ++idx) {
    const double log_i = spectra.log_index[idx];
    if (log_i == 0.0) continue;
    const double r = spectra.ratio(idx, alpha);
    s += log_i * shrink_ratio(r);
    s += -spectra.n * y[idx] * y[idx] * log_i * shrink_ratio_sq(r);
  }
  return s.value();
}

double score(double alpha, const Observation& obs) {
  require(std::isfinite(alpha) && alpha >= 0.0, "alpha must be >= 0");
  obs.validate();
  return score(alpha, SpectralData(obs.model, obs.n, obs.N), obs.y);
}

std::vector<double> LikelihoodCurve::normalized() const {
  std::vector<double> out(values.size());
  const double peak = values.empty() ? 0.0 : values[argmax_index];
  std::transform(values.begin(), values.end(), out.begin(),
                 [peak](double v) { return std::exp(v - peak); });
  return out;
}

namespace {

LikelihoodCurve scan(const SpectralData& spectra, std::span<const double> y, double upper,
                     std::size_t grid_size) {
  LikelihoodCurve curve;
  curve.alphas.resize(grid_size);
  curve.values.resize(grid_size);
  for (std::size_t k = 0; k < grid_size; ++k) {
    // Pin the right endpoint exactly to log n.
    const double a = k + 1 == grid_size
                         ? upper
                         : upper * static_cast<double>(k) / static_cast<double>(grid_size - 1);
    curve.alphas[k] = a;
    curve.values[k] = log_likelihood(a, spectra, y);
    if (!std::isfinite(curve.values[k])) {
      throw NumericalError("non-finite log-likelihood at alpha = " + std::to_string(a));
    }
    if (curve.values[k] > curve.values[curve.argmax_index]) curve.argmax_index = k;
  }
  return curve;
}

void check_fit_inputs(const Observation& obs, std::size_t grid_size) {
  obs.validate();
  require(obs.n > 1.0, "fit needs n > 1 so that [0, log n] is non-degenerate");
  require(grid_size >= 16, "likelihood grid needs at least 16 points");
}

}  // namespace

LikelihoodCurve likelihood_curve(const Observation& obs, std::size_t grid_size) {
  check_fit_inputs(obs, grid_size);
  return scan(SpectralData(obs.model, obs.n, obs.N), obs.y, std::log(obs.n), grid_size);
}

EbFit fit(const Observation& obs, const FitOptions& options) {
  check_fit_inputs(obs, options.grid_size);
  require(options.refine_tol > 0.0, "refinement tolerance must be > 0");
  const SpectralData spectra(obs.model, obs.n, obs.N);
  EbFit result;
  result.curve = scan(spectra, obs.y, std::log(obs.n), options.grid_size);

  const auto& alphas = result.curve.alphas;
  const std::size_t k = result.curve.argmax_index;
  result.alpha_hat = alphas[k];
  result.log_likelihood_at_hat = result.curve.values[k];

  const double lo = alphas[k == 0 ? 0 : k - 1];
  const double hi = alphas[std::min(k + 1, alphas.size() - 1)];
  const auto objective = [&](double a) { return log_likelihood(a, spectra, obs.y); };
  const double candidate = golden_section_maximize(objective, lo, hi, options.refine_tol);
  const double candidate_value = objective(candidate);
  if (!std::isfinite(candidate_value)) {
    throw NumericalError("non-finite log-likelihood during refinement");
  }
  if (candidate_value > result.log_likelihood_at_hat) {
    result.alpha_hat = candidate;
    result.log_likelihood_at_hat = candidate_value;
    result.refined = true;
  }
  return result;
}

CoordinatePosterior eb_posterior(const Observation& obs, const EbFit& fit) {
  return posterior(fit.alpha_hat, obs);
}

}  // namespace adaptinv
