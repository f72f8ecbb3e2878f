#include "adaptinv/serialization.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "adaptinv/errors.hpp"

namespace adaptinv {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

template <class T>
T field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ConfigError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad field '") + key + "': " + e.what());
  }
}

template <class T>
T field_or(const Json& j, const char* key, T fallback) {
  return j.contains(key) ? field<T>(j, key) : fallback;
}

std::string kind_of(const Json& j) { return field<std::string>(j, "kind"); }

}  // namespace

Json to_json(const ModelSpec& model) {
  return std::visit(Overloaded{
                        [](const ModelSpec::ExactPower& m) { return Json{{"kind", "power"}, {"p", m.p}}; },
                        [](const ModelSpec::Volterra&) { return Json{{"kind", "volterra"}}; },
                        [](const ModelSpec::Table& m) {
                          return Json{{"kind", "table"}, {"kappa", m.kappa}, {"p", m.p}, {"C", m.constant}};
                        },
                    },
                    model.kind());
}

ModelSpec model_from_json(const Json& j) {
  const std::string kind = kind_of(j);
  if (kind == "power") return ModelSpec::exact_power(field<double>(j, "p"));
  if (kind == "volterra") return ModelSpec::volterra();
  if (kind == "table") {
    return ModelSpec::table(field<std::vector<double>>(j, "kappa"), field<double>(j, "p"),
                            field<double>(j, "C"));
  }
  throw ConfigError("unknown model kind '" + kind + "'");
}

Json to_json(const TruthSpec& truth) {
  return std::visit(
      Overloaded{
          [](const TruthSpec::Explicit& t) { return Json{{"kind", "explicit"}, {"mu", t.mu}}; },
          [](const TruthSpec::PowerLaw& t) {
            return Json{{"kind", "power_law"}, {"beta", t.beta}, {"c", t.scale}};
          },
          [](const TruthSpec::PaperExample&) { return Json{{"kind", "paper_example"}}; },
          [](const TruthSpec::AnalyticDecay& t) {
            return Json{{"kind", "analytic"}, {"gamma", t.gamma}, {"c", t.scale}};
          },
          [](const TruthSpec::Zero&) { return Json{{"kind", "zero"}}; },
      },
      truth.kind());
}

TruthSpec truth_from_json(const Json& j) {
  const std::string kind = kind_of(j);
  if (kind == "paper_example") return TruthSpec::paper_example();
  if (kind == "zero") return TruthSpec::zero();
  if (kind == "power_law") return TruthSpec::power_law(field<double>(j, "beta"), field_or(j, "c", 1.0));
  if (kind == "analytic") return TruthSpec::analytic_decay(field<double>(j, "gamma"), field_or(j, "c", 1.0));
  if (kind == "explicit") return TruthSpec::explicit_coefficients(field<std::vector<double>>(j, "mu"));
  throw ConfigError("unknown truth kind '" + kind + "'");
}

Json to_json(const HyperPrior& hyper) {
  return std::visit(
      Overloaded{
          [](const HyperPrior::Exponential& h) { return Json{{"kind", "exponential"}, {"rate", h.rate}}; },
          [](const HyperPrior::Gamma& h) {
            return Json{{"kind", "gamma"}, {"shape", h.shape}, {"rate", h.rate}};
          },
          [](const HyperPrior::InverseGamma& h) {
            return Json{{"kind", "inverse_gamma"}, {"shape", h.shape}, {"scale", h.scale}};
          },
      },
      hyper.kind());
}

HyperPrior hyper_from_json(const Json& j) {
  const std::string kind = kind_of(j);
  if (kind == "exponential") return HyperPrior::exponential(field_or(j, "rate", 1.0));
  if (kind == "gamma") return HyperPrior::gamma(field<double>(j, "shape"), field<double>(j, "rate"));
  if (kind == "inverse_gamma") {
    return HyperPrior::inverse_gamma(field<double>(j, "shape"), field<double>(j, "scale"));
  }
  throw ConfigError("unknown hyperprior kind '" + kind + "'");
}

Json to_json(const Observation& obs) {
  return Json{{"n", obs.n}, {"N", obs.N}, {"seed", obs.seed}, {"model", to_json(obs.model)}, {"y", obs.y}};
}

Observation observation_from_json(const Json& j) {
  Observation obs = make_observation(model_from_json(field<Json>(j, "model")), field<double>(j, "n"),
                                     field<std::vector<double>>(j, "y"), field<std::int64_t>(j, "seed"));
  require(field<std::size_t>(j, "N") == obs.N, "observation field N differs from length of y");
  return obs;
}

Json to_json(const CoordinatePosterior& post) {
  return Json{{"alpha", post.alpha}, {"n", post.n}, {"means", post.means}, {"vars", post.vars}};
}

Json to_json(const BracketReport& report) {
  const char* status = "crossed";
  if (report.upper_status == UpperStatus::NoCrossingBelowCap) status = "no_crossing_below_cap";
  if (report.upper_status == UpperStatus::IdenticallyZero) status = "h_identically_zero";
  Json upper = std::isfinite(report.alpha_upper) ? Json(report.alpha_upper) : Json(nullptr);
  return Json{{"alpha_lower", report.alpha_lower},
              {"alpha_upper", upper},
              {"upper_status", status},
              {"l", report.l},
              {"L", report.L},
              {"n", report.n}};
}

Json summary_json(const HbChain& chain) {
  const ChainSummary s = summarize(chain);
  return Json{{"acceptance_rate", s.acceptance_rate},
              {"alpha_mean", s.alpha_mean},
              {"alpha_quantiles", {s.alpha_q025, s.alpha_median, s.alpha_q975}},
              {"alpha_mode", s.alpha_mode},
              {"mu_mean", chain.mu_mean},
              {"mu_var", chain.mu_var},
              {"proposal_sd", chain.proposal_sd},
              {"iterations", chain.config.iterations},
              {"burn_in", chain.config.burn_in},
              {"thin", chain.config.thin},
              {"J", chain.config.J},
              {"seed", chain.config.seed}};
}

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

CsvTable::CsvTable(std::vector<std::string> columns) : width_(columns.size()) {
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (c) text_ += ',';
    text_ += columns[c];
  }
  text_ += '\n';
}

void CsvTable::add_row(std::span<const double> values) {
  if (values.size() != width_) throw std::logic_error("CSV row width differs from header");
  for (std::size_t c = 0; c < values.size(); ++c) {
    if (c) text_ += ',';
    text_ += format_double(values[c]);
  }
  text_ += '\n';
}

void CsvTable::add_row(std::initializer_list<double> values) {
  add_row(std::span<const double>(values.begin(), values.size()));
}

std::string CsvTable::str() const { return text_; }

std::string likelihood_csv(const LikelihoodCurve& curve) {
  CsvTable table({"alpha", "loglik", "normalized"});
  const auto normalized = curve.normalized();
  for (std::size_t k = 0; k < curve.alphas.size(); ++k) {
    table.add_row({curve.alphas[k], curve.values[k], normalized[k]});
  }
  return table.str();
}

std::string h_curve_csv(const BracketReport& report) {
  CsvTable table({"alpha", "h"});
  for (const auto& [a, h] : report.h_curve) table.add_row({a, h});
  return table.str();
}

std::string alpha_draws_csv(const HbChain& chain) {
  CsvTable table({"alpha"});
  for (double a : chain.alphas) table.add_row({a});
  return table.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << content;
  out.flush();
  if (!out) throw IoError("failed writing " + path.string());
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json read_json_file(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

}  // namespace adaptinv
