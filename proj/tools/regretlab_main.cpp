#include <CLI11.hpp>

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <thread>

#include "regretlab/classify.hpp"
#include "regretlab/errors.hpp"
#include "regretlab/experiment.hpp"
#include "regretlab/json_io.hpp"
#include "regretlab/lemma1.hpp"
#include "regretlab/oracles.hpp"
#include "regretlab/planner.hpp"
#include "regretlab/signals.hpp"
#include "regretlab/util.hpp"

namespace {

namespace fs = std::filesystem;
using namespace regretlab;

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

// REGRETLAB_LOG: "debug" > "info" > anything else (silent).
int log_level() {
  static const int level = [] {
    const char* raw = std::getenv("REGRETLAB_LOG");
    if (raw == nullptr) return 0;
    const std::string value(raw);
    if (value == "debug") return 2;
    if (value == "info") return 1;
    return 0;
  }();
  return level;
}

void log_info(const std::string& message) {
  if (log_level() >= 1) std::cerr << "[regretlab] " << message << "\n";
}

void log_debug(const std::string& message) {
  if (log_level() >= 2) std::cerr << "[regretlab] " << message << "\n";
}

std::string bool_word(bool v) { return v ? "true" : "false"; }

int default_mc_jobs() {
  const unsigned hw = std::thread::hardware_concurrency();
  return static_cast<int>(std::min(8u, std::max(1u, hw)));
}

int cmd_run(const std::string& config_path, const std::string& out_dir,
            std::optional<std::int64_t> seed_override, int jobs) {
  ExperimentConfig cfg = load_experiment_config(config_path);
  if (seed_override.has_value()) {
    if (*seed_override < 0) throw ConfigError("--seed", "expected a non-negative integer");
    cfg.seeds = {static_cast<std::uint64_t>(*seed_override)};
  }
  log_info("loaded " + config_path + " (hash " + config_hash(cfg) + ", " +
           std::to_string(cfg.seeds.size()) + " seeds, T=" + std::to_string(cfg.T) + ")");

  fs::create_directories(out_dir);
  const SeedSink sink = [&](const SeedResult& result) {
    const fs::path path = fs::path(out_dir) / ("seed_" + std::to_string(result.seed) + ".csv");
    write_text_file(path.string(), csv_header() + report_to_csv(result));
    log_debug("seed " + std::to_string(result.seed) + " -> " + path.string());
  };
  const ExperimentSummary summary = run_experiment(cfg, sink, jobs);

  const fs::path summary_path = fs::path(out_dir) / "summary.json";
  write_text_file(summary_path.string(), summary_to_json(summary));
  log_info("wrote " + summary_path.string());

  std::cout << "mean final regret = " << format_g17(summary.mean_final_regret) << " ± "
            << format_g17(summary.se_final_regret) << " (" << summary.n_seeds
            << " seeds, T=" << summary.T << ")\n";
  return kExitOk;
}

int cmd_counterexample(int h_max, std::int64_t T, double p, std::int64_t mc_seeds) {
  const CounterexampleResult exact = exact_counterexample(h_max, T, p);
  std::cout << "signed_sum " << format_g17(exact.signed_sum) << "\n";
  std::cout << "absolute_sum " << format_g17(exact.absolute_sum) << "\n";
  if (mc_seeds > 0) {
    ExperimentConfig cfg;
    cfg.environment.kind = EnvironmentSpec::Kind::prior;
    cfg.environment.name = "two_point_bandit";
    cfg.environment.p = p;
    cfg.agent.kind = AgentSpec::Kind::lazy_psrl;
    cfg.agent.signal = EpisodeSignal::reward_threshold(1.0, h_max);
    cfg.T = T;
    cfg.decompose = true;
    cfg.seeds.reserve(static_cast<std::size_t>(mc_seeds));
    for (std::int64_t i = 0; i < mc_seeds; ++i) {
      cfg.seeds.push_back(static_cast<std::uint64_t>(i + 1));
    }
    log_info("monte carlo cross-check over " + std::to_string(mc_seeds) + " seeds");
    const ExperimentSummary summary = run_experiment(cfg, {}, default_mc_jobs());
    const double mc_mean = summary.decomposition->summed_delta_opt_mean;
    const double mc_se = summary.decomposition->summed_delta_opt_se;
    double z = 0.0;
    if (mc_se > 0.0) {
      z = (mc_mean - exact.signed_sum) / mc_se;
    } else if (mc_mean != exact.signed_sum) {
      z = std::numeric_limits<double>::infinity();
    }
    std::cout << "mc_mean " << format_g17(mc_mean) << "\n";
    std::cout << "mc_se " << format_g17(mc_se) << "\n";
    std::cout << "z_score " << format_g17(z) << "\n";
  }
  return kExitOk;
}

int cmd_heaven_hell(std::int64_t T, double p) {
  std::cout << "exact_expected_regret " << format_g17(exact_heaven_hell(T, p)) << "\n";
  return kExitOk;
}

int cmd_classify(const std::string& mdp_path, std::int64_t policy_cap) {
  const LoadedMdp loaded = load_mdp_file(mdp_path);
  const ConnectednessReport report = classify(loaded.mdp, policy_cap);
  std::cout << "ergodic: " << bool_word(report.ergodic) << "\n";
  std::cout << "unichain: " << bool_word(report.unichain) << "\n";
  std::cout << "communicating: " << bool_word(report.communicating) << "\n";
  std::cout << "weakly_communicating: " << bool_word(report.weakly_communicating) << "\n";
  std::cout << "method: " << report.method << "\n";
  if (!report.witness.empty()) {
    std::cout << "witness: " << report.witness << "\n";
  }
  return kExitOk;
}

int cmd_lemma_check(const std::string& config_path, std::int64_t n) {
  const LemmaCheckConfig cfg = load_lemma_check_config(config_path);
  log_info("lemma check: " + std::to_string(n) + " replications, seed " +
           std::to_string(cfg.seed));
  const auto g = [](const TabularMdp& mdp) {
    return optimal_gain(mdp, GainMethod::brute_force).gain[0];
  };
  const Lemma1Result result = lemma1_check(cfg.prior, cfg.scheme, g, n, cfg.seed);
  std::cout << "statistic: " << format_g17(result.statistic) << "\n";
  std::cout << "p_value: " << format_g17(result.p_value) << "\n";
  std::cout << "mean_difference: " << format_g17(result.mean_difference) << "\n";
  std::cout << "n_used: " << result.n_used << "\n";
  std::cout << "dof: " << result.dof << "\n";
  std::cout << "n_strata_used: " << result.n_strata_used << "\n";
  std::cout << "reject_at_0.01: " << bool_word(result.p_value < 0.01) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tabular reinforcement-learning regret laboratory"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "Run a Monte Carlo regret experiment from a config");
  std::string run_config, run_out;
  std::int64_t run_seed = -1;
  int run_jobs = 1;
  bool run_seed_given = false;
  run->add_option("--config", run_config, "Experiment config JSON")->required();
  run->add_option("--out", run_out, "Output directory")->required();
  run->add_option("--seed", run_seed, "Override the config's seed list with this single seed")
      ->check(CLI::NonNegativeNumber);
  run->add_option("--jobs", run_jobs, "Worker threads for seeds")->check(CLI::PositiveNumber);
  run->callback([&]() { run_seed_given = run->count("--seed") > 0; });

  // counterexample
  auto* cex = app.add_subcommand(
      "counterexample", "Exact time-summed optimism gap of the reward-threshold bandit");
  int cex_hmax = 0;
  std::int64_t cex_T = 0;
  double cex_p = 0.5;
  std::int64_t cex_mc = 0;
  cex->add_option("--hmax", cex_hmax, "Episode length cap H_max (> 1)")
      ->required()
      ->check(CLI::Range(2, std::numeric_limits<int>::max()));
  cex->add_option("--T", cex_T, "Run length")->required()->check(CLI::PositiveNumber);
  cex->add_option("--p", cex_p, "Prior weight of the reward-1 arm")
      ->check(CLI::Range(0.0, 1.0));
  cex->add_option("--mc-seeds", cex_mc, "Monte Carlo cross-check seed count")
      ->check(CLI::NonNegativeNumber);

  // heaven-hell
  auto* hh = app.add_subcommand("heaven-hell",
                                "Exact Bayesian regret of posterior sampling on heaven-hell");
  std::int64_t hh_T = 0;
  double hh_p = 0.5;
  hh->add_option("--T", hh_T, "Run length")->required()->check(CLI::PositiveNumber);
  hh->add_option("--p", hh_p, "Prior weight of heaven being the first arm")
      ->check(CLI::Range(0.0, 1.0));

  // classify
  auto* cls = app.add_subcommand("classify", "Connectedness classification of an MDP file");
  std::string cls_path;
  std::int64_t cls_cap = kDefaultPolicyCap;
  cls->add_option("--mdp", cls_path, "MDP JSON file")->required();
  cls->add_option("--policy-cap", cls_cap, "Max deterministic policies to enumerate")
      ->check(CLI::PositiveNumber);

  // lemma-check
  auto* lemma = app.add_subcommand("lemma-check",
                                   "Statistical check of the posterior-sampling identity");
  std::string lemma_config;
  std::int64_t lemma_n = 0;
  lemma->add_option("--config", lemma_config, "Lemma check config JSON")->required();
  lemma->add_option("--n", lemma_n, "Replication count")->required()->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (run->parsed()) {
      std::optional<std::int64_t> seed_override;
      if (run_seed_given) seed_override = run_seed;
      return cmd_run(run_config, run_out, seed_override, run_jobs);
    }
    if (cex->parsed()) return cmd_counterexample(cex_hmax, cex_T, cex_p, cex_mc);
    if (hh->parsed()) return cmd_heaven_hell(hh_T, hh_p);
    if (cls->parsed()) return cmd_classify(cls_path, cls_cap);
    if (lemma->parsed()) return cmd_lemma_check(lemma_config, lemma_n);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  std::cerr << "no subcommand selected\n";
  return kExitUsage;
}
