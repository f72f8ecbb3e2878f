#pragma once

#include <cmath>
#include <cstddef>
#include <span>

namespace adaptinv {

/// Neumaier-compensated running sum. Terms are added in call order, so a
/// fixed ascending-index loop gives reproducible totals.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  CompensatedSum& operator+=(double x) {
    add(x);
    return *this;
  }
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

inline double compensated_sum(std::span<const double> xs) {
  CompensatedSum s;
  for (double x : xs) s.add(x);
  return s.value();
}

// r / (1 + r) and r / (1 + r)^2, finite for r in [0, inf].
inline double shrink_ratio(double r) { return 1.0 / (1.0 + 1.0 / r); }
inline double shrink_ratio_sq(double r) { return 1.0 / (r + 2.0 + 1.0 / r); }

/// Maximizes a unimodal function on [lo, hi] by golden-section search until
/// the bracket is narrower than tol. Returns the final midpoint.
template <class F>
double golden_section_maximize(F&& f, double lo, double hi, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace adaptinv
