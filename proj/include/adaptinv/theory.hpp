#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "adaptinv/sequence_model.hpp"

namespace adaptinv {

/// h_n(alpha) = (1+2a+2p) / (n^{1/(1+2a+2p)} log n)
///              * sum_{i<=N} n^2 i^{1+2a} mu_{0,i}^2 log i / (i^{1+2a} kappa_i^{-2} + n)^2,
/// with p the declared order of the model. Requires n > e.
double h_n(double alpha, std::span<const double> mu0, const ModelSpec& model, double n,
           std::size_t N);

/// Evaluates h_n for one (mu0, model, n, N) at many alphas.
class HFunction {
 public:
  HFunction(std::span<const double> mu0, const ModelSpec& model, double n, std::size_t N);
  double operator()(double alpha) const;
  /// True when mu0_i = 0 for every 2 <= i <= N, so h_n vanishes identically.
  bool identically_zero() const { return terms_.empty(); }

 private:
  struct Term {
    double weight;  // mu0_i^2 log i * n kappa_i^2
    double log_n_kappa_sq;
    double log_index;
  };
  std::vector<Term> terms_;
  double n_;
  double log_n_;
  double p_;
};

enum class UpperStatus {
  Crossed,
  NoCrossingBelowCap,  // +inf: no crossing for alpha <= (log n) / (2 log 2)
  IdenticallyZero,     // +inf: mu0 supported on the first coordinate
};

struct BracketReport {
  double alpha_lower = 0.0;
  double alpha_upper = 0.0;  // +inf unless status == Crossed
  UpperStatus upper_status = UpperStatus::Crossed;
  double l = 0.0;
  double L = 0.0;
  double n = 0.0;
  std::vector<std::pair<double, double>> h_curve;  // (alpha, h_n(alpha))
};

struct BracketOptions {
  double scan_step = 1e-3;
  double bisection_tol = 1e-6;
  double curve_step = 1e-2;  // 0 disables h_curve sampling
};

/// alpha_lower = inf{a > 0 : h_n(a) > l} ^ sqrt(log n),
/// alpha_upper = inf{a > 0 : h_n(a) > L (log n)^2},
/// located by the first up-crossing on a scan grid and refined by bisection.
/// The upper scan stops at (log n) / (2 log 2).
BracketReport bracket(std::span<const double> mu0, const ModelSpec& model, double n, std::size_t N,
                      double l, double L, const BracketOptions& options = {});

/// (log n) / (2 log 2), the cap of the upper-bound scan.
double bracket_scan_cap(double n);

/// n^{-beta / (1 + 2 beta + 2p)}
double minimax_rate_sobolev(double beta, double p, double n);
/// n^{-1/2} (log n)^{1/2 + p}
double minimax_rate_analytic(double p, double n);

enum class RateCase { Sobolev, Analytic };

/// Sobolev:  (log n)^2 (log log n)^{1/2}
/// Analytic: (log n)^{(1/2+p) sqrt(log n)/2 + 1 - p} (log log n)^{1/2}
/// Throws ConfigError for n <= e, where log log n is not positive.
double slowly_varying_factor(RateCase rate_case, double p, double n);

}  // namespace adaptinv
