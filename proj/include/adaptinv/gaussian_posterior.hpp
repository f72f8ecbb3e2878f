#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "adaptinv/rng.hpp"
#include "adaptinv/sequence_model.hpp"

namespace adaptinv {

struct SpectralData;

/// Conjugate posterior under the prior mu_i ~ N(0, i^{-1-2 alpha}), independent
/// across coordinates:
///   mean_i = n kappa_i^{-1} y_i / (i^{1+2 alpha} kappa_i^{-2} + n)
///   var_i  = kappa_i^{-2} / (i^{1+2 alpha} kappa_i^{-2} + n)
struct CoordinatePosterior {
  double alpha = 0.0;
  double n = 1.0;
  std::vector<double> means;
  std::vector<double> vars;
  ModelSpec model = ModelSpec::exact_power(0.0);

  std::size_t size() const { return means.size(); }
};

CoordinatePosterior posterior(double alpha, const Observation& obs);

/// Posterior restricted to the first J coordinates.
CoordinatePosterior posterior(double alpha, const Observation& obs, std::size_t J);

/// Fills means/vars for coordinates [0, means.size()) given precomputed spectra.
/// Uses the overflow-free form mean = n kappa y / (i^{1+2a} + n kappa^2),
/// var = 1 / (i^{1+2a} + n kappa^2).
void posterior_moments(double alpha, const SpectralData& spectra, std::span<const double> y,
                       std::span<double> means, std::span<double> vars);

/// One independent Gaussian draw per coordinate.
std::vector<double> sample_posterior(const CoordinatePosterior& post, std::int64_t seed);
void sample_posterior(const CoordinatePosterior& post, Rng& rng, std::span<double> out);

/// Integrated squared error of the posterior around mu0:
///   sum (mean_i - mu0_i)^2 + sum var_i over i <= N.
/// mu0 shorter than N is zero-padded.
double posterior_risk(double alpha, const Observation& obs, std::span<const double> mu0);
double posterior_risk(const CoordinatePosterior& post, std::span<const double> mu0);

std::vector<double> posterior_mean_function(const CoordinatePosterior& post,
                                            std::span<const double> t_grid);

/// sum_i (a_i - b_i)^2 over the longer length, zero-padding the shorter.
double squared_distance(std::span<const double> a, std::span<const double> b);

}  // namespace adaptinv
