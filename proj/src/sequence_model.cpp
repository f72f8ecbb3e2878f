#include "adaptinv/sequence_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "adaptinv/errors.hpp"
#include "adaptinv/numeric.hpp"
#include "adaptinv/rng.hpp"

namespace adaptinv {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// kappa_i i^p, the quantity the sandwich bounds from both sides.
double normalized_kappa(const ModelSpec& model, std::size_t i) {
  return model.kappa(i) * std::pow(static_cast<double>(i), model.order());
}

}  // namespace

ModelSpec ModelSpec::exact_power(double p) {
  require(std::isfinite(p) && p >= 0.0, "ill-posedness order p must be >= 0");
  return ModelSpec(ExactPower{p});
}

ModelSpec ModelSpec::volterra() { return ModelSpec(Volterra{}); }

ModelSpec ModelSpec::table(std::vector<double> kappa, double p, double constant) {
  require(!kappa.empty(), "kappa table is empty");
  require(std::isfinite(p) && p >= 0.0, "ill-posedness order p must be >= 0");
  require(constant >= 1.0, "sandwich constant C must be >= 1");
  for (double k : kappa) require(std::isfinite(k) && k > 0.0, "kappa entries must be positive");
  ModelSpec model(Table{std::move(kappa), p, constant});
  const auto N = std::get<Table>(model.kind_).kappa.size();
  require(model.sandwich_holds(N, constant), "kappa table violates C^-1 i^-p <= kappa_i <= C i^-p");
  return model;
}

double ModelSpec::kappa(std::size_t i) const {
  if (i == 0) throw std::out_of_range("kappa index starts at 1");
  const double x = static_cast<double>(i);
  return std::visit(Overloaded{
                        [&](const ExactPower& m) { return m.p == 0.0 ? 1.0 : std::pow(x, -m.p); },
                        [&](const Volterra&) { return 1.0 / ((x - 0.5) * std::numbers::pi); },
                        [&](const Table& m) {
                          if (i > m.kappa.size()) {
                            throw std::out_of_range("kappa index " + std::to_string(i) +
                                                    " beyond table of size " +
                                                    std::to_string(m.kappa.size()));
                          }
                          return m.kappa[i - 1];
                        },
                    },
                    kind_);
}

double ModelSpec::order() const {
  return std::visit(Overloaded{
                        [](const ExactPower& m) { return m.p; },
                        [](const Volterra&) { return 1.0; },
                        [](const Table& m) { return m.p; },
                    },
                    kind_);
}

std::string ModelSpec::name() const {
  return std::visit(Overloaded{
                        [](const ExactPower&) { return std::string("power"); },
                        [](const Volterra&) { return std::string("volterra"); },
                        [](const Table&) { return std::string("table"); },
                    },
                    kind_);
}

double ModelSpec::fitted_constant(std::size_t N) const {
  double c = 1.0;
  for (std::size_t i = 1; i <= N; ++i) {
    const double r = normalized_kappa(*this, i);
    c = std::max({c, r, 1.0 / r});
  }
  return c;
}

bool ModelSpec::sandwich_holds(std::size_t N, double constant) const {
  // Relative slack for the rounding in pow().
  const double slack = 1.0 + 1e-12;
  for (std::size_t i = 1; i <= N; ++i) {
    const double r = normalized_kappa(*this, i);
    if (!(r > 0.0) || r > constant * slack || r * constant * slack < 1.0) return false;
  }
  return true;
}

double kappa(const ModelSpec& model, std::size_t i) { return model.kappa(i); }

TruthSpec TruthSpec::explicit_coefficients(std::vector<double> mu) {
  for (double m : mu) require(std::isfinite(m), "truth coefficients must be finite");
  return TruthSpec(Explicit{std::move(mu)});
}

TruthSpec TruthSpec::power_law(double beta, double scale) {
  require(beta > 0.0 && scale > 0.0, "power-law truth needs beta > 0 and scale > 0");
  return TruthSpec(PowerLaw{beta, scale});
}

TruthSpec TruthSpec::paper_example() { return TruthSpec(PaperExample{}); }

TruthSpec TruthSpec::analytic_decay(double gamma, double scale) {
  require(gamma > 0.0 && scale > 0.0, "analytic truth needs gamma > 0 and scale > 0");
  return TruthSpec(AnalyticDecay{gamma, scale});
}

TruthSpec TruthSpec::zero() { return TruthSpec(Zero{}); }

Coefficients TruthSpec::coefficients(std::size_t N) const {
  Coefficients mu(N, 0.0);
  std::visit(Overloaded{
                 [&](const Explicit& t) {
                   std::copy_n(t.mu.begin(), std::min(N, t.mu.size()), mu.begin());
                 },
                 [&](const PowerLaw& t) {
                   for (std::size_t i = 1; i <= N; ++i) {
                     mu[i - 1] = t.scale * std::pow(static_cast<double>(i), -0.5 - t.beta);
                   }
                 },
                 [&](const PaperExample&) {
                   for (std::size_t i = 1; i <= N; ++i) {
                     const double x = static_cast<double>(i);
                     mu[i - 1] = std::pow(x, -1.5) * std::sin(x);
                   }
                 },
                 [&](const AnalyticDecay& t) {
                   for (std::size_t i = 1; i <= N; ++i) {
                     mu[i - 1] = t.scale * std::exp(-t.gamma * static_cast<double>(i));
                   }
                 },
                 [](const Zero&) {},
             },
             kind_);
  for (double m : mu) {
    if (!std::isfinite(m)) throw NumericalError("non-finite truth coefficient");
  }
  return mu;
}

std::string TruthSpec::name() const {
  return std::visit(Overloaded{
                        [](const Explicit&) { return std::string("explicit"); },
                        [](const PowerLaw&) { return std::string("power_law"); },
                        [](const PaperExample&) { return std::string("paper_example"); },
                        [](const AnalyticDecay&) { return std::string("analytic"); },
                        [](const Zero&) { return std::string("zero"); },
                    },
                    kind_);
}

void Observation::validate() const {
  require(std::isfinite(n) && n > 0.0, "noise precision n must be > 0");
  require(N >= 1, "truncation level N must be >= 1");
  require(y.size() == N, "observation length differs from N");
}

Observation make_observation(ModelSpec model, double n, Coefficients y, std::int64_t seed) {
  Observation obs;
  obs.n = n;
  obs.N = y.size();
  obs.y = std::move(y);
  obs.seed = seed;
  obs.model = std::move(model);
  obs.validate();
  // Surface out-of-range tables early rather than inside the first fit.
  (void)obs.model.kappa(obs.N);
  return obs;
}

Observation simulate(const TruthSpec& truth, const ModelSpec& model, double n, std::size_t N,
                     std::int64_t seed) {
  require(std::isfinite(n) && n > 0.0, "noise precision n must be > 0");
  require(N >= 1, "truncation level N must be >= 1");
  const Coefficients mu = truth.coefficients(N);
  const double noise_sd = 1.0 / std::sqrt(n);
  Rng rng = make_rng(seed);
  Coefficients y(N);
  for (std::size_t i = 1; i <= N; ++i) {
    y[i - 1] = model.kappa(i) * mu[i - 1] + noise_sd * standard_normal(rng);
  }
  return make_observation(model, n, std::move(y), seed);
}

std::size_t auto_truncation(double n, double p) {
  require(n > 0.0 && p >= 0.0, "auto truncation needs n > 0 and p >= 0");
  const double raw = std::ceil(std::pow(n, 1.0 / (1.0 + 2.0 * p)));
  if (!(raw < static_cast<double>(kMaxAutoTruncation))) return kMaxAutoTruncation;
  return std::max<std::size_t>(1, static_cast<std::size_t>(raw));
}

double sobolev_norm_sq(std::span<const double> mu, double beta) {
  CompensatedSum s;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    s += std::pow(static_cast<double>(i + 1), 2.0 * beta) * mu[i] * mu[i];
  }
  return s.value();
}

double analytic_norm_sq(std::span<const double> mu, double gamma) {
  CompensatedSum s;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    s += std::exp(2.0 * gamma * static_cast<double>(i + 1)) * mu[i] * mu[i];
  }
  return s.value();
}

double basis_function(std::size_t i, double t) {
  return std::numbers::sqrt2 * std::cos((static_cast<double>(i) - 0.5) * std::numbers::pi * t);
}

std::vector<double> synthesize_function(std::span<const double> mu, std::span<const double> t_grid) {
  std::vector<double> f(t_grid.size());
  for (std::size_t k = 0; k < t_grid.size(); ++k) {
    CompensatedSum s;
    for (std::size_t i = 0; i < mu.size(); ++i) {
      if (mu[i] != 0.0) s += mu[i] * basis_function(i + 1, t_grid[k]);
    }
    f[k] = s.value();
  }
  return f;
}

double volterra_image(std::span<const double> mu, double t) {
  const ModelSpec model = ModelSpec::volterra();
  CompensatedSum s;
  for (std::size_t i = 1; i <= mu.size(); ++i) {
    const double arg = (static_cast<double>(i) - 0.5) * std::numbers::pi * t;
    s += model.kappa(i) * mu[i - 1] * std::numbers::sqrt2 * std::sin(arg);
  }
  return s.value();
}

double volterra_forward_check(std::span<const double> mu, double t) {
  const ModelSpec model = ModelSpec::volterra();
  CompensatedSum s;
  for (std::size_t i = 1; i <= mu.size(); ++i) {
    const double k = model.kappa(i);
    s += k * k * mu[i - 1] * (std::numbers::sqrt2 - basis_function(i, t));
  }
  return s.value();
}

std::vector<double> unit_grid(std::size_t points) {
  require(points >= 2, "grid needs at least two points");
  std::vector<double> t(points);
  for (std::size_t k = 0; k < points; ++k) {
    t[k] = static_cast<double>(k) / static_cast<double>(points - 1);
  }
  return t;
}

}  // namespace adaptinv
