#pragma once

// Independent reference computations for the tests. These use the textbook
// forms (direct powers, boost::math distributions, long double) rather than
// the library's log-space rewrites, so agreement checks the algebra as well
// as the code.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <array>
#include <functional>
#include <numbers>
#include <span>
#include <vector>

#include <boost/math/distributions/exponential.hpp>
#include <boost/math/distributions/gamma.hpp>
#include <boost/math/distributions/inverse_gamma.hpp>
#include <boost/math/distributions/normal.hpp>

namespace oracle {

inline double prior_scaled_precision(double alpha, double kappa, std::size_t i) {
  // i^{1+2a} kappa^{-2}
  return std::pow(static_cast<double>(i), 1.0 + 2.0 * alpha) / (kappa * kappa);
}

inline double post_mean(double alpha, double n, double kappa, double y, std::size_t i) {
  return n / kappa * y / (prior_scaled_precision(alpha, kappa, i) + n);
}

inline double post_var(double alpha, double n, double kappa, std::size_t i) {
  return 1.0 / (kappa * kappa) / (prior_scaled_precision(alpha, kappa, i) + n);
}

/// Textbook form in long double; the extra precision keeps central
/// differences of a large-magnitude likelihood meaningful.
inline long double log_likelihood_ld(long double alpha, double n, std::span<const double> kappa,
                                     std::span<const double> y) {
  long double s = 0.0L;
  for (std::size_t i = 1; i <= y.size(); ++i) {
    const long double t = std::pow(static_cast<long double>(i), 1.0L + 2.0L * alpha) /
                          (static_cast<long double>(kappa[i - 1]) * kappa[i - 1]);
    s += std::log(1.0L + n / t) - static_cast<long double>(n) * n / (t + n) * y[i - 1] * y[i - 1];
  }
  return -0.5L * s;
}

inline double log_likelihood(double alpha, double n, std::span<const double> kappa, std::span<const double> y) {
  return static_cast<double>(log_likelihood_ld(alpha, n, kappa, y));
}

inline double central_difference(double alpha, double h, double n, std::span<const double> kappa,
                                 std::span<const double> y) {
  const long double a = alpha;
  return static_cast<double>(
      (log_likelihood_ld(a + h, n, kappa, y) - log_likelihood_ld(a - h, n, kappa, y)) / (2.0L * h));
}

inline double h_n(double alpha, std::span<const double> mu0, std::span<const double> kappa, double p,
                  double n) {
  long double s = 0.0L;
  for (std::size_t i = 1; i <= mu0.size(); ++i) {
    const long double ip = std::pow(static_cast<long double>(i), 1.0L + 2.0L * alpha);
    const long double t = ip / (static_cast<long double>(kappa[i - 1]) * kappa[i - 1]);
    s += static_cast<long double>(n) * n * ip * mu0[i - 1] * mu0[i - 1] *
         std::log(static_cast<long double>(i)) / ((t + n) * (t + n));
  }
  const double e = 1.0 + 2.0 * alpha + 2.0 * p;
  return static_cast<double>(e / (std::pow(n, 1.0 / e) * std::log(n)) * s);
}

/// Composite Simpson rule with m (even) intervals.
inline double simpson(const std::function<double(double)>& f, double a, double b, std::size_t m) {
  const double h = (b - a) / static_cast<double>(m);
  double s = f(a) + f(b);
  for (std::size_t k = 1; k < m; ++k) s += (k % 2 ? 4.0 : 2.0) * f(a + h * static_cast<double>(k));
  return s * h / 3.0;
}

/// log of q(to | from) for N(from, sd^2) truncated to (0, inf).
inline double log_truncated_normal(double to, double from, double sd) {
  const boost::math::normal_distribution<double> unit(0.0, 1.0);
  return std::log(boost::math::pdf(unit, (to - from) / sd) / sd) - std::log(boost::math::cdf(unit, from / sd));
}

/// log of prod_j j^{1/2+a} exp(-1/2 j^{1+2a} mu_j^2).
inline double log_mu_density(std::span<const double> mu, double alpha) {
  long double s = 0.0L;
  for (std::size_t j = 1; j <= mu.size(); ++j) {
    const long double jj = static_cast<long double>(j);
    s += std::log(std::pow(jj, 0.5L + alpha)) - 0.5L * std::pow(jj, 1.0L + 2.0L * alpha) * mu[j - 1] * mu[j - 1];
  }
  return static_cast<double>(s);
}


/// log of [q(a | a') p(mu | a') lambda(a')] / [q(a' | a) p(mu | a) lambda(a)],
/// evaluated term by term from densities.
inline double mh_log_ratio(double a, double a_prime, std::span<const double> mu,
                           const std::function<double(double)>& prior_pdf, double sd) {
  const double num = std::log(prior_pdf(a_prime)) + log_mu_density(mu, a_prime) +
                     log_truncated_normal(a, a_prime, sd);
  const double den = std::log(prior_pdf(a)) + log_mu_density(mu, a) + log_truncated_normal(a_prime, a, sd);
  return num - den;
}

/// Metropolis-Hastings kernel on three states with target pi and proposal matrix q:
/// P(i, j) = q(i, j) min(1, pi_j q(j, i) / (pi_i q(i, j))) off the diagonal.
using Matrix3 = std::array<std::array<double, 3>, 3>;

inline Matrix3 mh_kernel(const std::array<double, 3>& pi, const Matrix3& q) {
  Matrix3 p{};
  for (int i = 0; i < 3; ++i) {
    double off = 0.0;
    for (int j = 0; j < 3; ++j) {
      if (i == j) continue;
      p[i][j] = q[i][j] * std::min(1.0, pi[j] * q[j][i] / (pi[i] * q[i][j]));
      off += p[i][j];
    }
    p[i][i] = 1.0 - off;
  }
  return p;
}

}  // namespace oracle
