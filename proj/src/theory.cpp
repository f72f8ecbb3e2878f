#include "adaptinv/theory.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

#include "adaptinv/errors.hpp"
#include "adaptinv/numeric.hpp"

namespace adaptinv {

HFunction::HFunction(std::span<const double> mu0, const ModelSpec& model, double n, std::size_t N)
    : n_(n), log_n_(std::log(n)), p_(model.order()) {
  require(n > std::numbers::e, "h_n needs n > e");
  require(N >= 1, "truncation level N must be >= 1");
  for (std::size_t i = 2; i <= N && i <= mu0.size(); ++i) {
    const double m = mu0[i - 1];
    if (m == 0.0) continue;
    const double k = model.kappa(i);
    const double log_i = std::log(static_cast<double>(i));
    terms_.push_back({m * m * log_i * n * k * k, log_n_ + 2.0 * std::log(k), log_i});
  }
}

double HFunction::operator()(double alpha) const {
  // n^2 i^{1+2a} / (i^{1+2a} kappa^{-2} + n)^2 = n kappa^2 r / (1 + r)^2,
  // r = n kappa^2 / i^{1+2a}.
  CompensatedSum s;
  for (const Term& t : terms_) {
    const double r = std::exp(t.log_n_kappa_sq - (1.0 + 2.0 * alpha) * t.log_index);
    s += t.weight * shrink_ratio_sq(r);
  }
  const double e = 1.0 + 2.0 * alpha + 2.0 * p_;
  return e / (std::exp(log_n_ / e) * log_n_) * s.value();
}

double h_n(double alpha, std::span<const double> mu0, const ModelSpec& model, double n,
           std::size_t N) {
  require(alpha >= 0.0, "alpha must be >= 0");
  return HFunction(mu0, model, n, N)(alpha);
}

double bracket_scan_cap(double n) { return std::log(n) / (2.0 * std::numbers::ln2); }

namespace {

std::optional<double> first_crossing(const HFunction& h, double threshold, double cap,
                                     const BracketOptions& options) {
  double lo = 0.0;
  if (h(lo) > threshold) return 0.0;
  for (std::size_t k = 1;; ++k) {
    const double hi = std::min(cap, static_cast<double>(k) * options.scan_step);
    if (h(hi) > threshold) {
      double a = lo;
      double b = hi;
      while (b - a > options.bisection_tol) {
        const double mid = 0.5 * (a + b);
        if (h(mid) > threshold) {
          b = mid;
        } else {
          a = mid;
        }
      }
      return b;
    }
    if (hi >= cap) return std::nullopt;
    lo = hi;
  }
}

}  // namespace

BracketReport bracket(std::span<const double> mu0, const ModelSpec& model, double n, std::size_t N,
                      double l, double L, const BracketOptions& options) {
  require(l > 0.0 && L > 0.0, "bracket constants l and L must be > 0");
  require(options.scan_step > 0.0 && options.bisection_tol > 0.0, "scan step and tolerance must be > 0");
  const HFunction h(mu0, model, n, N);
  const double log_n = std::log(n);
  const double cap = bracket_scan_cap(n);

  BracketReport report;
  report.l = l;
  report.L = L;
  report.n = n;

  const double lower_cap = std::sqrt(log_n);
  report.alpha_lower = first_crossing(h, l, lower_cap, options).value_or(lower_cap);
  report.alpha_lower = std::min(report.alpha_lower, lower_cap);

  if (h.identically_zero()) {
    report.alpha_upper = std::numeric_limits<double>::infinity();
    report.upper_status = UpperStatus::IdenticallyZero;
  } else if (auto upper = first_crossing(h, L * log_n * log_n, cap, options)) {
    report.alpha_upper = *upper;
    report.upper_status = UpperStatus::Crossed;
  } else {
    report.alpha_upper = std::numeric_limits<double>::infinity();
    report.upper_status = UpperStatus::NoCrossingBelowCap;
  }

  if (options.curve_step > 0.0) {
    for (std::size_t k = 1;; ++k) {
      const double a = static_cast<double>(k) * options.curve_step;
      if (a > cap) break;
      report.h_curve.emplace_back(a, h(a));
    }
  }
  return report;
}

double minimax_rate_sobolev(double beta, double p, double n) {
  require(beta > 0.0 && p >= 0.0 && n > 0.0, "Sobolev rate needs beta > 0, p >= 0, n > 0");
  return std::pow(n, -beta / (1.0 + 2.0 * beta + 2.0 * p));
}

double minimax_rate_analytic(double p, double n) {
  require(p >= 0.0 && n > 1.0, "analytic rate needs p >= 0 and n > 1");
  return std::pow(n, -0.5) * std::pow(std::log(n), 0.5 + p);
}

double slowly_varying_factor(RateCase rate_case, double p, double n) {
  if (!(n > std::numbers::e)) throw ConfigError("slowly varying factor needs n > e (log log n > 0)");
  const double log_n = std::log(n);
  const double root_log_log = std::sqrt(std::log(log_n));
  switch (rate_case) {
    case RateCase::Sobolev:
      return log_n * log_n * root_log_log;
    case RateCase::Analytic:
      return std::pow(log_n, (0.5 + p) * std::sqrt(log_n) / 2.0 + 1.0 - p) * root_log_log;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace adaptinv
