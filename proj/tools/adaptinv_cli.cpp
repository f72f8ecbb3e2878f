// Command-line front end: simulate data, fit the empirical-Bayes and
// hierarchical-Bayes procedures, compute hyperparameter brackets, and run the
// figure / rate-sweep experiments. Every command writes a JSON manifest next
// to its outputs.
//
// Exit codes: 0 success, 2 configuration error, 3 numerical failure, 4 I/O error.

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>

#include "adaptinv/errors.hpp"
#include "adaptinv/harness.hpp"
#include "adaptinv/serialization.hpp"

namespace {

using namespace adaptinv;

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIo = 4;

struct CommonOptions {
  std::string config_path;
  std::optional<std::int64_t> seed;
  std::optional<std::string> out;
  std::optional<double> n;
  std::optional<std::size_t> replicates;
  std::optional<unsigned> threads;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--config", opts.config_path, "experiment config JSON (or a run manifest to replay)");
  cmd->add_option("--seed", opts.seed, "base seed");
  cmd->add_option("--out", opts.out, "output directory");
  cmd->add_option("--n", opts.n, "single noise precision n, replacing the ladder");
  cmd->add_option("--replicates", opts.replicates, "replicates per ladder rung");
  cmd->add_option("--threads", opts.threads, "worker threads (0 = all cores)");
}

ExperimentConfig load_config(const CommonOptions& opts) {
  Json j = opts.config_path.empty() ? Json::object() : read_json_file(opts.config_path);
  ExperimentConfig cfg = config_from_json(j);
  if (opts.seed) cfg.seed = *opts.seed;
  if (opts.out) cfg.output_dir = *opts.out;
  if (opts.n) cfg.n_ladder = {*opts.n};
  if (opts.replicates) cfg.replicates = *opts.replicates;
  if (opts.threads) cfg.threads = *opts.threads;
  cfg.validate();
  return cfg;
}

std::optional<Observation> load_observation(const std::string& path) {
  if (path.empty()) return std::nullopt;
  return observation_from_json(read_json_file(path));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adaptive empirical and hierarchical Bayes for mildly ill-posed sequence models"};
  app.require_subcommand(1);

  CommonOptions opts;
  std::string obs_path;
  double beta = 1.0;

  auto* simulate_cmd = app.add_subcommand("simulate", "simulate one observation (first ladder rung)");
  auto* eb_cmd = app.add_subcommand("eb-fit", "maximize the marginal likelihood and write the EB posterior");
  auto* hb_cmd = app.add_subcommand("hb-run", "run the Metropolis-within-Gibbs sampler");
  auto* bracket_cmd = app.add_subcommand("bracket", "compute h_n and the hyperparameter bracket");
  auto* fig1_cmd = app.add_subcommand("figure1", "EB posterior means and likelihood curves over the ladder");
  auto* fig2_cmd = app.add_subcommand("figure2", "HB alpha histograms and posterior means over the ladder");
  auto* rate_cmd = app.add_subcommand("rate-sweep", "EB squared error against n with a log-log slope");

  for (auto* cmd : {simulate_cmd, eb_cmd, hb_cmd, bracket_cmd, fig1_cmd, fig2_cmd, rate_cmd}) {
    add_common(cmd, opts);
  }
  eb_cmd->add_option("--obs", obs_path, "observation JSON to fit instead of simulating");
  hb_cmd->add_option("--obs", obs_path, "observation JSON to fit instead of simulating");
  rate_cmd->add_option("--beta", beta, "regularity used for the reference slope");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    const ExperimentConfig cfg = load_config(opts);
    if (simulate_cmd->parsed()) {
      std::cout << run_simulate(cfg).string() << '\n';
    } else if (eb_cmd->parsed()) {
      std::cout << run_eb_fit(cfg, load_observation(obs_path)).string() << '\n';
    } else if (hb_cmd->parsed()) {
      std::cout << run_hb(cfg, load_observation(obs_path)).string() << '\n';
    } else if (bracket_cmd->parsed()) {
      std::cout << run_bracket(cfg).string() << '\n';
    } else if (fig1_cmd->parsed()) {
      const auto result = run_figure1(cfg);
      std::cout << "wrote " << result.files.size() << " files to " << cfg.output_dir.string() << '\n';
    } else if (fig2_cmd->parsed()) {
      const auto result = run_figure2(cfg);
      std::cout << "wrote " << result.files.size() << " files to " << cfg.output_dir.string() << '\n';
    } else if (rate_cmd->parsed()) {
      const auto result = run_rate_sweep(cfg, beta);
      std::cout << "squared-error slope " << result.squared_error_slope << " (reference "
                << result.reference_slope << ")\n";
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::out_of_range& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
