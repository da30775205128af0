#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "regretlab/regret.hpp"
#include "regretlab/signals.hpp"

namespace regretlab {

/// Where the true MDP of a run comes from. named/file fix it; prior and
/// conjugate_prior draw it per seed (Bayesian regret), and the agent's belief
/// starts from that same prior.
struct EnvironmentSpec {
  enum class Kind { named, file, prior, conjugate_prior };
  Kind kind = Kind::named;
  std::string name;                      // named: build_named_env; prior: which two-point prior
  std::map<std::string, double> params;  // named
  std::string path;                      // file
  double p = 0.5;                        // prior weight (prior kind)
  int n_states = 1;                      // conjugate_prior
  int n_actions = 1;
};

struct AgentSpec {
  enum class Kind { psrl, lazy_psrl, ofu, smoothed_psrl };
  Kind kind = Kind::psrl;
  std::optional<int> H;                  // psrl (required there)
  std::optional<EpisodeSignal> signal;   // lazy/ofu; default doubling
  double gamma = 0.95;                   // smoothed
  double delta = 0.05;                   // ofu
  double evi_epsilon = 1e-4;             // ofu
};

struct ExperimentConfig {
  EnvironmentSpec environment;
  AgentSpec agent;
  std::int64_t T = 1;
  int start_state = 0;
  /// Present: the state redraws from initial_dist every `horizon` steps
  /// (finite-horizon run). initial_dist defaults to a point mass on
  /// start_state.
  std::optional<int> horizon;
  std::optional<std::vector<double>> initial_dist;
  std::vector<std::uint64_t> seeds;
  /// Override for the regret baseline; otherwise the true MDP's optimal gain
  /// at start_state (per drawn MDP for prior environments).
  std::optional<double> lambda_star;
  /// Attach the per-episode optimism/concentration decomposition.
  bool decompose = false;

  void validate() const;
};

struct SeedResult {
  std::uint64_t seed = 0;
  RegretReport report;
};

struct DecompositionSummary {
  /// Indexed by episode number k-1; episodes beyond max_episodes are folded
  /// into the per-seed sums only.
  std::vector<double> mean_delta_opt_by_k;
  std::vector<double> se_delta_opt_by_k;
  std::vector<double> mean_delta_conc_by_k;
  std::vector<double> se_delta_conc_by_k;
  std::vector<std::int64_t> n_by_k;
  /// Per-seed total of delta_opt (the time-summed optimism gap), pooled.
  double summed_delta_opt_mean = 0.0;
  double summed_delta_opt_se = 0.0;
};

struct ExperimentSummary {
  std::string config_hash;
  std::int64_t n_seeds = 0;
  std::int64_t T = 0;
  double mean_final_regret = 0.0;
  double se_final_regret = 0.0;
  /// Mean cumulative-regret curve across seeds (not serialized).
  std::vector<double> mean_curve;
  std::optional<DecompositionSummary> decomposition;
};

using SeedSink = std::function<void(const SeedResult&)>;

/// Runs every seed and pools the results. The sink, when given, receives each
/// seed's report in seed-list order regardless of `jobs`; all aggregation is
/// sequential in that same order, so outputs are identical for any job count.
ExperimentSummary run_experiment(const ExperimentConfig& cfg, const SeedSink& sink = {},
                                 int jobs = 1);

/// Canonical serialization of the config (sorted keys), hashed for summary
/// identification.
std::string config_hash(const ExperimentConfig& cfg);

/// Column header "seed,t,episode_index,reward,cumulative_regret". All seeds
/// of a run share one CSV: header once, then each seed's rows.
std::string csv_header();

/// CSV rows for one seed (no header), floats with 17 significant digits.
std::string report_to_csv(const SeedResult& result);

/// The summary JSON document (fixed key order, 17 significant digits).
std::string summary_to_json(const ExperimentSummary& summary);

}  // namespace regretlab
