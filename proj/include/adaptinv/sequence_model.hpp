#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace adaptinv {

using Coefficients = std::vector<double>;

/// Diagonal forward operator of the sequence model Y_i = kappa_i mu_i + n^{-1/2} Z_i.
///
/// All built-in kinds are mildly ill-posed: C^{-1} i^{-p} <= kappa_i <= C i^{-p}.
class ModelSpec {
 public:
  struct ExactPower {
    double p;
    friend bool operator==(const ExactPower&, const ExactPower&) = default;
  };
  /// kappa_i = 1 / ((i - 1/2) pi): integration on [0,1] against the cosine basis.
  struct Volterra {
    friend bool operator==(const Volterra&, const Volterra&) = default;
  };
  struct Table {
    std::vector<double> kappa;
    double p;
    double constant;
    friend bool operator==(const Table&, const Table&) = default;
  };
  using Kind = std::variant<ExactPower, Volterra, Table>;

  static ModelSpec exact_power(double p);
  static ModelSpec volterra();
  /// Throws ConfigError unless every entry is positive and the table lies in
  /// the sandwich with the declared (p, constant).
  static ModelSpec table(std::vector<double> kappa, double p, double constant);

  /// kappa_i for i >= 1. Throws std::out_of_range past the end of a table.
  double kappa(std::size_t i) const;
  double order() const;
  const Kind& kind() const { return kind_; }
  std::string name() const;

  /// Smallest C >= 1 with C^{-1} i^{-p} <= kappa_i <= C i^{-p} for i <= N.
  double fitted_constant(std::size_t N) const;
  bool sandwich_holds(std::size_t N, double constant) const;

  friend bool operator==(const ModelSpec&, const ModelSpec&) = default;

 private:
  explicit ModelSpec(Kind kind) : kind_(std::move(kind)) {}
  Kind kind_;
};

double kappa(const ModelSpec& model, std::size_t i);

/// Rule generating the true coefficients mu_0.
class TruthSpec {
 public:
  struct Explicit {
    std::vector<double> mu;
  };
  /// mu_i = scale * i^{-1/2 - beta}
  struct PowerLaw {
    double beta;
    double scale;
  };
  /// mu_i = i^{-3/2} sin(i)
  struct PaperExample {};
  /// mu_i = scale * exp(-gamma i)
  struct AnalyticDecay {
    double gamma;
    double scale;
  };
  struct Zero {};
  using Kind = std::variant<Explicit, PowerLaw, PaperExample, AnalyticDecay, Zero>;

  static TruthSpec explicit_coefficients(std::vector<double> mu);
  static TruthSpec power_law(double beta, double scale = 1.0);
  static TruthSpec paper_example();
  static TruthSpec analytic_decay(double gamma, double scale = 1.0);
  static TruthSpec zero();

  /// First N coefficients; explicit lists are zero-padded.
  Coefficients coefficients(std::size_t N) const;
  const Kind& kind() const { return kind_; }
  std::string name() const;

 private:
  explicit TruthSpec(Kind kind) : kind_(std::move(kind)) {}
  Kind kind_;
};

struct Observation {
  double n = 1.0;
  std::size_t N = 0;
  Coefficients y;
  std::int64_t seed = 0;
  ModelSpec model = ModelSpec::exact_power(0.0);

  /// Throws ConfigError if n <= 0, N == 0 or y.size() != N.
  void validate() const;
};

/// Builds an observation from given coefficients (no noise draw); for
/// replaying recorded data and for tests.
Observation make_observation(ModelSpec model, double n, Coefficients y, std::int64_t seed = 0);

/// y_i = kappa_i mu_{0,i} + n^{-1/2} z_i with z drawn from make_rng(seed).
Observation simulate(const TruthSpec& truth, const ModelSpec& model, double n, std::size_t N,
                     std::int64_t seed);

/// ceil(n^{1/(1+2p)}) capped at 10^5.
std::size_t auto_truncation(double n, double p);
inline constexpr std::size_t kMaxAutoTruncation = 100000;

double sobolev_norm_sq(std::span<const double> mu, double beta);
double analytic_norm_sq(std::span<const double> mu, double gamma);

/// e_i(t) = sqrt(2) cos((i - 1/2) pi t), i >= 1.
double basis_function(std::size_t i, double t);

/// f(t) = sum_i mu_i e_i(t) by direct cosine summation.
std::vector<double> synthesize_function(std::span<const double> mu, std::span<const double> t_grid);

/// Image of the integration operator, (K mu)(t) = int_0^t mu(u) du, in
/// coefficient space: sum_i kappa_i mu_i sqrt(2) sin((i - 1/2) pi t). The left
/// singular functions are sines, not the cosine basis e_i.
double volterra_image(std::span<const double> mu, double t);

/// Noiseless drift of the observed process, int_0^t int_0^s mu(u) du ds, in
/// coefficient space: sum_i kappa_i^2 mu_i (sqrt(2) - e_i(t)).
double volterra_forward_check(std::span<const double> mu, double t);

/// Uniform grid of `points` values on [0, 1], endpoints included.
std::vector<double> unit_grid(std::size_t points);

}  // namespace adaptinv
