#include "adaptinv/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <openssl/evp.h>

#include "adaptinv/errors.hpp"
#include "adaptinv/gaussian_posterior.hpp"
#include "adaptinv/numeric.hpp"
#include "adaptinv/parallel.hpp"
#include "adaptinv/theory.hpp"

namespace adaptinv {

namespace fs = std::filesystem;

namespace {

const char* mode_name(RunMode mode) {
  switch (mode) {
    case RunMode::EB:
      return "eb";
    case RunMode::HB:
      return "hb";
    case RunMode::Both:
      return "both";
  }
  return "both";
}

RunMode mode_from_name(const std::string& name) {
  if (name == "eb") return RunMode::EB;
  if (name == "hb") return RunMode::HB;
  if (name == "both") return RunMode::Both;
  throw ConfigError("unknown mode '" + name + "' (expected eb, hb or both)");
}

template <class T>
T get_as(const Json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad field '") + key + "': " + e.what());
  }
}

std::string sha256_hex(const std::string& text) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(text.data(), text.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  std::string hex;
  char buf[3];
  for (unsigned int k = 0; k < length; ++k) {
    std::snprintf(buf, sizeof(buf), "%02x", digest[k]);
    hex += buf;
  }
  return hex;
}

std::string prefix_for(const char* figure, std::size_t rung, std::size_t replicate) {
  return std::string(figure) + "_rung" + std::to_string(rung) + "_rep" + std::to_string(replicate);
}

// The output directory is left out so a replay into another directory
// produces a byte-identical manifest.
Json manifest_base(const char* command, const ExperimentConfig& cfg) {
  Json config = to_json(cfg);
  config.erase("output_dir");
  return Json{{"command", command},
              {"library_version", kLibraryVersion},
              {"config", config},
              {"config_hash", config_hash(cfg)}};
}

void write_manifest(const fs::path& path, const Json& manifest) {
  write_text_file(path, manifest.dump(2) + "\n");
}

// sqrt of the trapezoid integral of (a - b)^2 over a uniform [0,1] grid.
double grid_l2_distance(std::span<const double> a, std::span<const double> b) {
  const std::size_t m = a.size();
  const double h = 1.0 / static_cast<double>(m - 1);
  CompensatedSum s;
  for (std::size_t k = 0; k < m; ++k) {
    const double d = a[k] - b[k];
    s += (k == 0 || k + 1 == m ? 0.5 : 1.0) * d * d;
  }
  return std::sqrt(h * s.value());
}

std::string function_csv(const char* estimate_column, std::span<const double> t,
                         std::span<const double> truth, std::span<const double> estimate) {
  CsvTable table({"t", "true_f", estimate_column});
  for (std::size_t k = 0; k < t.size(); ++k) table.add_row({t[k], truth[k], estimate[k]});
  return table.str();
}

std::vector<std::string> relative_names(const std::vector<fs::path>& files) {
  std::vector<std::string> names;
  for (const auto& f : files) names.push_back(f.filename().string());
  return names;
}

template <class T>
std::vector<std::vector<T>> grid_of(std::size_t rungs, std::size_t replicates) {
  return std::vector<std::vector<T>>(rungs, std::vector<T>(replicates));
}

double eb_start(double alpha_hat) { return std::max(alpha_hat, 1e-3); }

}  // namespace

void ExperimentConfig::validate() const {
  require(!n_ladder.empty(), "n ladder is empty");
  for (std::size_t k = 0; k < n_ladder.size(); ++k) {
    require(std::isfinite(n_ladder[k]) && n_ladder[k] > 1.0, "ladder values must be > 1");
    if (k) require(n_ladder[k] > n_ladder[k - 1], "n ladder must be strictly increasing");
  }
  require(replicates >= 1, "replicates must be >= 1");
  if (fixed_N) require(*fixed_N >= 1, "fixed N must be >= 1");
  require(grid_points >= 2, "function grid needs at least 2 points");
  require(fit.grid_size >= 16, "likelihood grid needs at least 16 points");
  require(bracket_l > 0.0 && bracket_L > 0.0, "bracket constants must be > 0");
  require(hb.iterations >= 1 && hb.thin >= 1, "chain iterations and thinning must be >= 1");
  if (hb.burn_in) require(*hb.burn_in < hb.iterations, "burn-in must be smaller than iterations");
}

ExperimentConfig config_from_json(const Json& input) {
  const Json& j = input.contains("config") && input.contains("config_hash") ? input.at("config") : input;
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  ExperimentConfig cfg;
  if (j.contains("model")) cfg.model = model_from_json(j.at("model"));
  if (j.contains("truth")) cfg.truth = truth_from_json(j.at("truth"));
  if (j.contains("n_ladder")) cfg.n_ladder = get_as<std::vector<double>>(j, "n_ladder");
  if (j.contains("replicates")) cfg.replicates = get_as<std::size_t>(j, "replicates");
  if (j.contains("seed")) cfg.seed = get_as<std::int64_t>(j, "seed");
  if (j.contains("N")) {
    const Json& N = j.at("N");
    if (N.is_string()) {
      require(N.get<std::string>() == "auto", "N must be \"auto\" or a positive integer");
    } else {
      cfg.fixed_N = get_as<std::size_t>(j, "N");
    }
  }
  if (j.contains("output_dir")) cfg.output_dir = get_as<std::string>(j, "output_dir");
  if (j.contains("mode")) cfg.mode = mode_from_name(get_as<std::string>(j, "mode"));
  if (j.contains("fit")) {
    const Json& f = j.at("fit");
    if (f.contains("grid_size")) cfg.fit.grid_size = get_as<std::size_t>(f, "grid_size");
    if (f.contains("refine_tol")) cfg.fit.refine_tol = get_as<double>(f, "refine_tol");
  }
  if (j.contains("hb")) {
    const Json& h = j.at("hb");
    if (h.contains("iterations")) cfg.hb.iterations = get_as<std::size_t>(h, "iterations");
    if (h.contains("burn_in")) cfg.hb.burn_in = get_as<std::size_t>(h, "burn_in");
    if (h.contains("proposal_sd")) cfg.hb.proposal_sd = get_as<double>(h, "proposal_sd");
    if (h.contains("J")) cfg.hb.J = get_as<std::size_t>(h, "J");
    if (h.contains("thin")) cfg.hb.thin = get_as<std::size_t>(h, "thin");
    if (h.contains("hyperprior")) cfg.hb.hyper = hyper_from_json(h.at("hyperprior"));
    if (h.contains("pinned_alpha")) cfg.hb.pinned_alpha = get_as<double>(h, "pinned_alpha");
  }
  if (j.contains("grid_points")) cfg.grid_points = get_as<std::size_t>(j, "grid_points");
  if (j.contains("bracket")) {
    const Json& b = j.at("bracket");
    if (b.contains("l")) cfg.bracket_l = get_as<double>(b, "l");
    if (b.contains("L")) cfg.bracket_L = get_as<double>(b, "L");
  }
  if (j.contains("threads")) cfg.threads = get_as<unsigned>(j, "threads");
  cfg.validate();
  return cfg;
}

Json to_json(const ExperimentConfig& cfg) {
  Json hb{{"iterations", cfg.hb.iterations},
          {"thin", cfg.hb.thin},
          {"hyperprior", to_json(cfg.hb.hyper)}};
  if (cfg.hb.burn_in) hb["burn_in"] = *cfg.hb.burn_in;
  if (cfg.hb.proposal_sd) hb["proposal_sd"] = *cfg.hb.proposal_sd;
  if (cfg.hb.J) hb["J"] = *cfg.hb.J;
  if (cfg.hb.pinned_alpha) hb["pinned_alpha"] = *cfg.hb.pinned_alpha;
  Json j{{"model", to_json(cfg.model)},
         {"truth", to_json(cfg.truth)},
         {"n_ladder", cfg.n_ladder},
         {"replicates", cfg.replicates},
         {"seed", cfg.seed},
         {"output_dir", cfg.output_dir.string()},
         {"mode", mode_name(cfg.mode)},
         {"fit", {{"grid_size", cfg.fit.grid_size}, {"refine_tol", cfg.fit.refine_tol}}},
         {"hb", hb},
         {"grid_points", cfg.grid_points},
         {"bracket", {{"l", cfg.bracket_l}, {"L", cfg.bracket_L}}}};
  if (cfg.fixed_N) {
    j["N"] = *cfg.fixed_N;
  } else {
    j["N"] = "auto";
  }
  return j;
}

std::string config_hash(const ExperimentConfig& cfg) {
  Json j = to_json(cfg);
  // Where the files go does not change their content.
  j.erase("output_dir");
  return sha256_hex(j.dump());
}

std::size_t truncation_for(const ExperimentConfig& cfg, double n) {
  return cfg.fixed_N.value_or(auto_truncation(n, cfg.model.order()));
}

std::int64_t replicate_seed(const ExperimentConfig& cfg, std::size_t rung, std::size_t replicate) {
  return cfg.seed + static_cast<std::int64_t>(rung * cfg.replicates + replicate);
}

HbConfig hb_config_for(const ExperimentConfig& cfg, const Observation& obs, double initial_alpha) {
  HbConfig hb;
  hb.J = cfg.hb.J ? std::min(*cfg.hb.J, obs.N) : obs.N;
  hb.iterations = cfg.hb.iterations;
  hb.burn_in = cfg.hb.burn_in.value_or(cfg.hb.iterations / 10);
  hb.proposal_sd = cfg.hb.proposal_sd;
  hb.seed = obs.seed;
  hb.thin = cfg.hb.thin;
  hb.initial_alpha = initial_alpha;
  hb.pinned_alpha = cfg.hb.pinned_alpha;
  return hb;
}

Figure1Result run_figure1(const ExperimentConfig& cfg) {
  cfg.validate();
  require(cfg.mode != RunMode::HB, "figure1 needs mode eb or both");
  const std::size_t rungs = cfg.n_ladder.size();
  const std::vector<double> grid = unit_grid(cfg.grid_points);

  std::vector<std::vector<double>> truth_f(rungs);
  for (std::size_t r = 0; r < rungs; ++r) {
    truth_f[r] = synthesize_function(cfg.truth.coefficients(truncation_for(cfg, cfg.n_ladder[r])), grid);
  }

  Figure1Result result;
  result.alpha_hat = grid_of<double>(rungs, cfg.replicates);
  result.l2_error = grid_of<double>(rungs, cfg.replicates);
  auto files = grid_of<std::vector<fs::path>>(rungs, cfg.replicates);
  auto refined = grid_of<char>(rungs, cfg.replicates);

  parallel_for(
      rungs * cfg.replicates,
      [&](std::size_t task) {
        const std::size_t r = task / cfg.replicates;
        const std::size_t k = task % cfg.replicates;
        const double n = cfg.n_ladder[r];
        const Observation obs =
            simulate(cfg.truth, cfg.model, n, truncation_for(cfg, n), replicate_seed(cfg, r, k));
        const EbFit eb = fit(obs, cfg.fit);
        const CoordinatePosterior post = eb_posterior(obs, eb);
        const std::vector<double> estimate = posterior_mean_function(post, grid);

        const std::string prefix = prefix_for("figure1", r, k);
        const fs::path function_path = cfg.output_dir / (prefix + "_function.csv");
        const fs::path likelihood_path = cfg.output_dir / (prefix + "_likelihood.csv");
        write_text_file(function_path, function_csv("eb_mean_f", grid, truth_f[r], estimate));
        write_text_file(likelihood_path, likelihood_csv(eb.curve));

        result.alpha_hat[r][k] = eb.alpha_hat;
        result.l2_error[r][k] = grid_l2_distance(estimate, truth_f[r]);
        refined[r][k] = eb.refined;
        files[r][k] = {function_path, likelihood_path};
      },
      cfg.threads);

  Json manifest = manifest_base("figure1", cfg);
  Json runs = Json::array();
  for (std::size_t r = 0; r < rungs; ++r) {
    for (std::size_t k = 0; k < cfg.replicates; ++k) {
      runs.push_back({{"n", cfg.n_ladder[r]},
                      {"N", truncation_for(cfg, cfg.n_ladder[r])},
                      {"rung", r},
                      {"replicate", k},
                      {"seed", replicate_seed(cfg, r, k)},
                      {"alpha_hat", result.alpha_hat[r][k]},
                      {"refined", static_cast<bool>(refined[r][k])},
                      {"grid_l2_error", result.l2_error[r][k]},
                      {"files", relative_names(files[r][k])}});
      for (const auto& f : files[r][k]) result.files.push_back(f);
    }
  }
  manifest["runs"] = runs;
  const fs::path manifest_path = cfg.output_dir / "figure1_manifest.json";
  write_manifest(manifest_path, manifest);
  result.files.push_back(manifest_path);
  return result;
}

Figure2Result run_figure2(const ExperimentConfig& cfg) {
  cfg.validate();
  require(cfg.mode != RunMode::EB, "figure2 needs mode hb or both");
  const std::size_t rungs = cfg.n_ladder.size();
  const std::vector<double> grid = unit_grid(cfg.grid_points);

  std::vector<std::vector<double>> truth_f(rungs);
  for (std::size_t r = 0; r < rungs; ++r) {
    truth_f[r] = synthesize_function(cfg.truth.coefficients(truncation_for(cfg, cfg.n_ladder[r])), grid);
  }

  Figure2Result result;
  result.alpha_mode = grid_of<double>(rungs, cfg.replicates);
  result.acceptance_rate = grid_of<double>(rungs, cfg.replicates);
  result.alpha_hat = grid_of<double>(rungs, cfg.replicates);
  auto summaries = grid_of<Json>(rungs, cfg.replicates);
  auto files = grid_of<std::vector<fs::path>>(rungs, cfg.replicates);

  parallel_for(
      rungs * cfg.replicates,
      [&](std::size_t task) {
        const std::size_t r = task / cfg.replicates;
        const std::size_t k = task % cfg.replicates;
        const double n = cfg.n_ladder[r];
        const Observation obs =
            simulate(cfg.truth, cfg.model, n, truncation_for(cfg, n), replicate_seed(cfg, r, k));
        const EbFit eb = fit(obs, cfg.fit);
        const HbChain chain = run_mwg(obs, cfg.hb.hyper, hb_config_for(cfg, obs, eb_start(eb.alpha_hat)));
        const Json summary = summary_json(chain);
        const std::vector<double> estimate = synthesize_function(chain.mu_mean, grid);

        const std::string prefix = prefix_for("figure2", r, k);
        const fs::path alpha_path = cfg.output_dir / (prefix + "_alpha.csv");
        const fs::path summary_path = cfg.output_dir / (prefix + "_summary.json");
        const fs::path function_path = cfg.output_dir / (prefix + "_function.csv");
        write_text_file(alpha_path, alpha_draws_csv(chain));
        write_text_file(summary_path, summary.dump(2) + "\n");
        write_text_file(function_path, function_csv("hb_mean_f", grid, truth_f[r], estimate));

        result.alpha_mode[r][k] = summary.at("alpha_mode").get<double>();
        result.acceptance_rate[r][k] = chain.acceptance_rate;
        result.alpha_hat[r][k] = eb.alpha_hat;
        summaries[r][k] = Json{{"acceptance_rate", chain.acceptance_rate},
                               {"alpha_mode", summary.at("alpha_mode")},
                               {"alpha_mean", summary.at("alpha_mean")},
                               {"proposal_sd", chain.proposal_sd},
                               {"burn_in", chain.config.burn_in},
                               {"thin", chain.config.thin},
                               {"initial_alpha", chain.config.initial_alpha}};
        files[r][k] = {alpha_path, summary_path, function_path};
      },
      cfg.threads);

  Json manifest = manifest_base("figure2", cfg);
  Json runs = Json::array();
  for (std::size_t r = 0; r < rungs; ++r) {
    for (std::size_t k = 0; k < cfg.replicates; ++k) {
      Json run{{"n", cfg.n_ladder[r]},
               {"N", truncation_for(cfg, cfg.n_ladder[r])},
               {"rung", r},
               {"replicate", k},
               {"seed", replicate_seed(cfg, r, k)},
               {"eb_alpha_hat", result.alpha_hat[r][k]},
               {"files", relative_names(files[r][k])}};
      run.update(summaries[r][k]);
      runs.push_back(run);
      for (const auto& f : files[r][k]) result.files.push_back(f);
    }
  }
  manifest["runs"] = runs;
  const fs::path manifest_path = cfg.output_dir / "figure2_manifest.json";
  write_manifest(manifest_path, manifest);
  result.files.push_back(manifest_path);
  return result;
}

double log_log_slope(std::span<const double> x, std::span<const double> y) {
  require(x.size() == y.size() && x.size() >= 2, "slope needs two or more matching points");
  const double m = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sx += std::log(x[k]);
    sy += std::log(y[k]);
  }
  const double mx = sx / m;
  const double my = sy / m;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double dx = std::log(x[k]) - mx;
    sxy += dx * (std::log(y[k]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

RateSweepResult run_rate_sweep(const ExperimentConfig& cfg, double beta) {
  cfg.validate();
  require(cfg.n_ladder.size() >= 3, "rate sweep needs at least 3 ladder rungs");
  const bool power_law = std::holds_alternative<TruthSpec::PowerLaw>(cfg.truth.kind());
  const bool paper = std::holds_alternative<TruthSpec::PaperExample>(cfg.truth.kind());
  require(power_law || paper, "rate sweep needs a power_law or paper_example truth");
  require(beta > 0.0, "beta must be > 0");
  const std::size_t rungs = cfg.n_ladder.size();
  auto sq_error = grid_of<double>(rungs, cfg.replicates);
  auto risk = grid_of<double>(rungs, cfg.replicates);

  parallel_for(
      rungs * cfg.replicates,
      [&](std::size_t task) {
        const std::size_t r = task / cfg.replicates;
        const std::size_t k = task % cfg.replicates;
        const double n = cfg.n_ladder[r];
        const std::size_t N = truncation_for(cfg, n);
        const Observation obs = simulate(cfg.truth, cfg.model, n, N, replicate_seed(cfg, r, k));
        const CoordinatePosterior post = eb_posterior(obs, fit(obs, cfg.fit));
        const Coefficients mu0 = cfg.truth.coefficients(N);
        sq_error[r][k] = squared_distance(post.means, mu0);
        risk[r][k] = posterior_risk(post, mu0);
      },
      cfg.threads);

  RateSweepResult result;
  result.n = cfg.n_ladder;
  CsvTable table({"n", "mean_squared_error", "mean_posterior_risk"});
  for (std::size_t r = 0; r < rungs; ++r) {
    CompensatedSum e, q;
    for (std::size_t k = 0; k < cfg.replicates; ++k) {
      e += sq_error[r][k];
      q += risk[r][k];
    }
    const double reps = static_cast<double>(cfg.replicates);
    result.mean_squared_error.push_back(e.value() / reps);
    result.mean_posterior_risk.push_back(q.value() / reps);
    table.add_row({cfg.n_ladder[r], result.mean_squared_error.back(), result.mean_posterior_risk.back()});
  }
  result.squared_error_slope = log_log_slope(result.n, result.mean_squared_error);
  result.posterior_risk_slope = log_log_slope(result.n, result.mean_posterior_risk);
  const double p = cfg.model.order();
  result.reference_slope = -2.0 * beta / (1.0 + 2.0 * beta + 2.0 * p);

  const fs::path csv_path = cfg.output_dir / "rate_sweep.csv";
  write_text_file(csv_path, table.str());
  Json manifest = manifest_base("rate-sweep", cfg);
  manifest["beta"] = beta;
  manifest["squared_error_slope"] = result.squared_error_slope;
  manifest["posterior_risk_slope"] = result.posterior_risk_slope;
  manifest["reference_slope"] = result.reference_slope;
  Json seeds = Json::array();
  for (std::size_t r = 0; r < rungs; ++r) {
    for (std::size_t k = 0; k < cfg.replicates; ++k) seeds.push_back(replicate_seed(cfg, r, k));
  }
  manifest["seeds"] = seeds;
  manifest["files"] = {csv_path.filename().string()};
  const fs::path manifest_path = cfg.output_dir / "rate_sweep_manifest.json";
  write_manifest(manifest_path, manifest);
  result.files = {csv_path, manifest_path};
  return result;
}

namespace {

Observation first_rung_observation(const ExperimentConfig& cfg) {
  const double n = cfg.n_ladder.front();
  return simulate(cfg.truth, cfg.model, n, truncation_for(cfg, n), replicate_seed(cfg, 0, 0));
}

}  // namespace

fs::path run_simulate(const ExperimentConfig& cfg) {
  cfg.validate();
  const Observation obs = first_rung_observation(cfg);
  const fs::path obs_path = cfg.output_dir / "observation.json";
  write_text_file(obs_path, to_json(obs).dump() + "\n");
  Json manifest = manifest_base("simulate", cfg);
  manifest["seed"] = obs.seed;
  manifest["files"] = {obs_path.filename().string()};
  write_manifest(cfg.output_dir / "simulate_manifest.json", manifest);
  return obs_path;
}

fs::path run_eb_fit(const ExperimentConfig& cfg, const std::optional<Observation>& given) {
  cfg.validate();
  const Observation obs = given ? *given : first_rung_observation(cfg);
  const EbFit eb = fit(obs, cfg.fit);
  const fs::path fit_path = cfg.output_dir / "eb_fit.json";
  const fs::path curve_path = cfg.output_dir / "likelihood.csv";
  const fs::path post_path = cfg.output_dir / "eb_posterior.json";
  write_text_file(fit_path, Json{{"alpha_hat", eb.alpha_hat},
                                 {"log_likelihood", eb.log_likelihood_at_hat},
                                 {"refined", eb.refined},
                                 {"grid_size", cfg.fit.grid_size},
                                 {"refine_tol", cfg.fit.refine_tol},
                                 {"n", obs.n},
                                 {"N", obs.N}}
                                .dump(2) +
                                "\n");
  write_text_file(curve_path, likelihood_csv(eb.curve));
  write_text_file(post_path, to_json(eb_posterior(obs, eb)).dump() + "\n");
  Json manifest = manifest_base("eb-fit", cfg);
  manifest["seed"] = obs.seed;
  manifest["observation_supplied"] = given.has_value();
  manifest["files"] = relative_names({fit_path, curve_path, post_path});
  write_manifest(cfg.output_dir / "eb_fit_manifest.json", manifest);
  return fit_path;
}

fs::path run_hb(const ExperimentConfig& cfg, const std::optional<Observation>& given) {
  cfg.validate();
  const Observation obs = given ? *given : first_rung_observation(cfg);
  const EbFit eb = fit(obs, cfg.fit);
  const HbChain chain = run_mwg(obs, cfg.hb.hyper, hb_config_for(cfg, obs, eb_start(eb.alpha_hat)));
  const fs::path alpha_path = cfg.output_dir / "alpha_draws.csv";
  const fs::path summary_path = cfg.output_dir / "hb_summary.json";
  write_text_file(alpha_path, alpha_draws_csv(chain));
  Json summary = summary_json(chain);
  summary["initial_alpha"] = chain.config.initial_alpha;
  write_text_file(summary_path, summary.dump(2) + "\n");
  Json manifest = manifest_base("hb-run", cfg);
  manifest["seed"] = obs.seed;
  manifest["observation_supplied"] = given.has_value();
  manifest["files"] = relative_names({alpha_path, summary_path});
  write_manifest(cfg.output_dir / "hb_run_manifest.json", manifest);
  return summary_path;
}

fs::path run_bracket(const ExperimentConfig& cfg) {
  cfg.validate();
  const double n = cfg.n_ladder.front();
  const std::size_t N = truncation_for(cfg, n);
  const BracketReport report =
      bracket(cfg.truth.coefficients(N), cfg.model, n, N, cfg.bracket_l, cfg.bracket_L);
  const fs::path report_path = cfg.output_dir / "bracket.json";
  const fs::path curve_path = cfg.output_dir / "h_curve.csv";
  Json j = to_json(report);
  j["N"] = N;
  write_text_file(report_path, j.dump(2) + "\n");
  write_text_file(curve_path, h_curve_csv(report));
  Json manifest = manifest_base("bracket", cfg);
  manifest["files"] = relative_names({report_path, curve_path});
  write_manifest(cfg.output_dir / "bracket_manifest.json", manifest);
  return report_path;
}

}  // namespace adaptinv
