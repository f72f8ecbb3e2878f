#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "adaptinv/empirical_bayes.hpp"
#include "adaptinv/hierarchical_bayes.hpp"
#include "adaptinv/sequence_model.hpp"
#include "adaptinv/serialization.hpp"

namespace adaptinv {

inline constexpr const char* kLibraryVersion = "0.1.0";

enum class RunMode { EB, HB, Both };

struct HbSettings {
  std::size_t iterations = 5000;
  std::optional<std::size_t> burn_in;  // default: 10% of iterations
  std::optional<double> proposal_sd;   // default: default_proposal_sd(n, J)
  std::optional<std::size_t> J;        // default: the observation's N
  std::size_t thin = 100;
  HyperPrior hyper = HyperPrior::exponential(1.0);
  /// Test hook forwarded to HbConfig::pinned_alpha.
  std::optional<double> pinned_alpha;
};

struct ExperimentConfig {
  ModelSpec model = ModelSpec::volterra();
  TruthSpec truth = TruthSpec::paper_example();
  std::vector<double> n_ladder = {1e3, 1e5, 1e7, 1e9, 1e11};
  std::size_t replicates = 1;
  std::int64_t seed = 1;
  std::optional<std::size_t> fixed_N;  // unset: auto_truncation(n, p)
  std::filesystem::path output_dir = "out";
  RunMode mode = RunMode::Both;
  FitOptions fit;
  HbSettings hb;
  std::size_t grid_points = 512;
  double bracket_l = 0.01;
  double bracket_L = 1.0;
  unsigned threads = 0;  // 0: hardware concurrency

  /// Throws ConfigError on an empty or non-increasing ladder, replicates == 0, ...
  void validate() const;
};

/// Accepts either a config object or a manifest written by one of the runs
/// (its "config" member), so manifests can be replayed directly.
ExperimentConfig config_from_json(const Json& j);
/// Canonical form; also the input of the manifest's config hash.
Json to_json(const ExperimentConfig& cfg);
std::string config_hash(const ExperimentConfig& cfg);

std::size_t truncation_for(const ExperimentConfig& cfg, double n);
/// seed + rung * replicates + replicate; every (rung, replicate) pair gets its own stream.
std::int64_t replicate_seed(const ExperimentConfig& cfg, std::size_t rung, std::size_t replicate);

/// HbConfig for one observation, with the chain started at `initial_alpha`.
HbConfig hb_config_for(const ExperimentConfig& cfg, const Observation& obs, double initial_alpha);

struct Figure1Result {
  // [rung][replicate]
  std::vector<std::vector<double>> alpha_hat;
  std::vector<std::vector<double>> l2_error;  // grid L2 distance of the EB mean function to the truth
  std::vector<std::filesystem::path> files;
};

/// Per rung and replicate: <prefix>_function.csv (t, true_f, eb_mean_f) on a
/// grid_points grid, <prefix>_likelihood.csv (alpha, loglik, normalized),
/// then figure1_manifest.json.
Figure1Result run_figure1(const ExperimentConfig& cfg);

struct Figure2Result {
  std::vector<std::vector<double>> alpha_mode;
  std::vector<std::vector<double>> acceptance_rate;
  std::vector<std::vector<double>> alpha_hat;  // EB fit used as the chain's starting point
  std::vector<std::filesystem::path> files;
};

/// Per rung and replicate: <prefix>_alpha.csv, <prefix>_summary.json and
/// <prefix>_function.csv (t, true_f, hb_mean_f), then figure2_manifest.json.
/// Chains start at the EB estimate for the same observation.
Figure2Result run_figure2(const ExperimentConfig& cfg);

struct RateSweepResult {
  std::vector<double> n;
  std::vector<double> mean_squared_error;
  std::vector<double> mean_posterior_risk;
  double squared_error_slope = 0.0;
  double posterior_risk_slope = 0.0;
  double reference_slope = 0.0;  // -2 beta / (1 + 2 beta + 2p)
  std::vector<std::filesystem::path> files;
};

/// rate_sweep.csv (n, mean_squared_error, mean_posterior_risk) plus a manifest
/// holding the fitted log-log slopes. The truth must be a power law or the
/// i^{-3/2} sin(i) example truth; needs at least 3 ladder rungs.
RateSweepResult run_rate_sweep(const ExperimentConfig& cfg, double beta);

/// Least-squares slope of log(y) against log(x).
double log_log_slope(std::span<const double> x, std::span<const double> y);

// Single-observation commands on the first ladder rung.
std::filesystem::path run_simulate(const ExperimentConfig& cfg);
std::filesystem::path run_eb_fit(const ExperimentConfig& cfg, const std::optional<Observation>& obs);
std::filesystem::path run_hb(const ExperimentConfig& cfg, const std::optional<Observation>& obs);
std::filesystem::path run_bracket(const ExperimentConfig& cfg);

}  // namespace adaptinv
