#pragma once

#include <filesystem>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "adaptinv/empirical_bayes.hpp"
#include "adaptinv/gaussian_posterior.hpp"
#include "adaptinv/hierarchical_bayes.hpp"
#include "adaptinv/sequence_model.hpp"
#include "adaptinv/theory.hpp"

namespace adaptinv {

using Json = nlohmann::json;

// Schemas:
//   model:  {"kind": "power", "p": p} | {"kind": "volterra"}
//           | {"kind": "table", "kappa": [...], "p": p, "C": C}
//   truth:  {"kind": "paper_example"} | {"kind": "zero"}
//           | {"kind": "power_law", "beta": b, "c": c} | {"kind": "analytic", "gamma": g, "c": c}
//           | {"kind": "explicit", "mu": [...]}
//   hyper:  {"kind": "exponential", "rate": r} | {"kind": "gamma", "shape": k, "rate": r}
//           | {"kind": "inverse_gamma", "shape": a, "scale": b}
// Malformed input throws ConfigError.
Json to_json(const ModelSpec& model);
ModelSpec model_from_json(const Json& j);
Json to_json(const TruthSpec& truth);
TruthSpec truth_from_json(const Json& j);
Json to_json(const HyperPrior& hyper);
HyperPrior hyper_from_json(const Json& j);

/// {"n", "N", "seed", "model", "y"}
Json to_json(const Observation& obs);
Observation observation_from_json(const Json& j);

/// {"alpha", "n", "means", "vars"}
Json to_json(const CoordinatePosterior& post);

/// alpha_upper is null when infinite; "upper_status" names the reason.
Json to_json(const BracketReport& report);

/// {"acceptance_rate", "alpha_mean", "alpha_quantiles": [q025, q50, q975], "alpha_mode",
///  "mu_mean", "mu_var", "proposal_sd", "burn_in", "thin", "iterations", "J", "seed"}
Json summary_json(const HbChain& chain);

/// Shortest round-trip decimal form, independent of the C locale.
std::string format_double(double x);

/// Header-first CSV with a fixed column order.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> columns);
  void add_row(std::initializer_list<double> values);
  void add_row(std::span<const double> values);
  std::string str() const;

 private:
  std::size_t width_;
  std::string text_;
};

std::string likelihood_csv(const LikelihoodCurve& curve);
std::string h_curve_csv(const BracketReport& report);
std::string alpha_draws_csv(const HbChain& chain);

/// Throws IoError when the file cannot be written or read.
void write_text_file(const std::filesystem::path& path, const std::string& content);
std::string read_text_file(const std::filesystem::path& path);
Json read_json_file(const std::filesystem::path& path);

}  // namespace adaptinv
