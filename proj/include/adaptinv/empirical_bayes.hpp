#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "adaptinv/gaussian_posterior.hpp"
#include "adaptinv/sequence_model.hpp"

namespace adaptinv {

struct SpectralData;

/// Marginal log-likelihood of alpha relative to the N(0, 1/n) product, truncated at i <= N:
///   l_n(alpha) = -1/2 sum_i [ log(1 + n / (i^{1+2a} kappa_i^{-2}))
///                             - n^2 Y_i^2 / (i^{1+2a} kappa_i^{-2} + n) ].
double log_likelihood(double alpha, const Observation& obs);
double log_likelihood(double alpha, const SpectralData& spectra, std::span<const double> y);

/// Derivative of log_likelihood in alpha.
double score(double alpha, const Observation& obs);
double score(double alpha, const SpectralData& spectra, std::span<const double> y);

struct LikelihoodCurve {
  std::vector<double> alphas;  // uniform on [0, log n], both endpoints included
  std::vector<double> values;
  std::size_t argmax_index = 0;  // first maximum, i.e. smallest alpha on ties

  /// exp(l - max l), the curve scaled to peak at 1.
  std::vector<double> normalized() const;
};

LikelihoodCurve likelihood_curve(const Observation& obs, std::size_t grid_size);

struct EbFit {
  double alpha_hat = 0.0;
  double log_likelihood_at_hat = 0.0;
  LikelihoodCurve curve;
  bool refined = false;  // alpha_hat came from the golden-section step
};

struct FitOptions {
  std::size_t grid_size = 200;
  double refine_tol = 1e-4;
};

/// Maximizes l_n over [0, log n]: uniform grid scan, then golden-section search
/// on the interval between the best grid point's neighbours. The refined point
/// replaces the grid point only if its likelihood is strictly larger, so exact
/// ties resolve to the smallest grid alpha. Requires n > 1 and grid_size >= 16.
EbFit fit(const Observation& obs, const FitOptions& options = {});

/// posterior(fit.alpha_hat, obs).
CoordinatePosterior eb_posterior(const Observation& obs, const EbFit& fit);

}  // namespace adaptinv
