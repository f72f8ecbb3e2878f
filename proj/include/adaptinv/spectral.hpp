#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "adaptinv/sequence_model.hpp"

namespace adaptinv {

/// Per-coordinate constants reused across alpha evaluations.
///
/// Every alpha-dependent quantity is written through the ratio
///   r_i(alpha) = n kappa_i^2 / i^{1+2 alpha} = n / (i^{1+2 alpha} kappa_i^{-2}),
/// evaluated as exp(log(n kappa_i^2) - (1 + 2 alpha) log i). The direct form
/// i^{1+2 alpha} kappa_i^{-2} overflows for large alpha and i, while r_i only
/// underflows to 0, which is the correct limit.
struct SpectralData {
  SpectralData(const ModelSpec& model, double n, std::size_t N) : n(n) {
    log_index.resize(N);
    kappa.resize(N);
    log_n_kappa_sq.resize(N);
    const double log_n = std::log(n);
    for (std::size_t i = 1; i <= N; ++i) {
      log_index[i - 1] = std::log(static_cast<double>(i));
      kappa[i - 1] = model.kappa(i);
      log_n_kappa_sq[i - 1] = log_n + 2.0 * std::log(kappa[i - 1]);
    }
  }

  std::size_t size() const { return kappa.size(); }

  double ratio(std::size_t idx, double alpha) const {
    return std::exp(log_n_kappa_sq[idx] - (1.0 + 2.0 * alpha) * log_index[idx]);
  }

  /// i^{1+2 alpha}; exactly 1 at i = 1.
  double prior_precision(std::size_t idx, double alpha) const {
    return std::exp((1.0 + 2.0 * alpha) * log_index[idx]);
  }

  double n;
  std::vector<double> log_index;
  std::vector<double> kappa;
  std::vector<double> log_n_kappa_sq;
};

}  // namespace adaptinv
