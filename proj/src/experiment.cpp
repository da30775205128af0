#include "regretlab/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>
#include <utility>

#include "regretlab/belief.hpp"
#include "regretlab/envs.hpp"
#include "regretlab/errors.hpp"
#include "regretlab/json_io.hpp"
#include "regretlab/planner.hpp"
#include "regretlab/stats.hpp"
#include "regretlab/util.hpp"

namespace regretlab {
namespace {

/// Episode indices beyond this many get folded into the per-seed sums only.
constexpr int kMaxEpisodesSummarized = 10'000;

GainMethod pick_gain_method(const TabularMdp& mdp) {
  const double log_policies =
      mdp.n_states() * std::log(static_cast<double>(mdp.n_actions()));
  return log_policies <= std::log(static_cast<double>(kDefaultPolicyCap)) + 1e-9
             ? GainMethod::brute_force
             : GainMethod::relative_vi;
}

/// Environment pieces resolved once per experiment and shared across seeds.
struct ResolvedSetup {
  std::optional<TabularMdp> fixed_truth;
  std::optional<FiniteSupportBelief> finite_prior;
  std::optional<ConjugateBelief> conjugate_prior;
  std::optional<int> horizon;
  std::vector<double> initial_dist;  // meaningful when horizon is set
  std::optional<double> fixed_lambda_star;
  int n_states = 0;
  int n_actions = 0;
};

ResolvedSetup resolve_setup(const ExperimentConfig& cfg) {
  ResolvedSetup setup;
  std::optional<int> file_horizon;
  std::optional<std::vector<double>> file_dist;

  switch (cfg.environment.kind) {
    case EnvironmentSpec::Kind::named:
      try {
        setup.fixed_truth = build_named_env(cfg.environment.name, cfg.environment.params);
      } catch (const std::invalid_argument& err) {
        throw ConfigError("environment", err.what());
      }
      break;
    case EnvironmentSpec::Kind::file: {
      LoadedMdp loaded = load_mdp_file(cfg.environment.path);
      setup.fixed_truth = std::move(loaded.mdp);
      file_horizon = loaded.horizon;
      file_dist = std::move(loaded.initial_dist);
      break;
    }
    case EnvironmentSpec::Kind::prior:
      setup.finite_prior = cfg.environment.name == "two_point_bandit"
                               ? two_point_bandit_prior(cfg.environment.p)
                               : heaven_hell_prior(cfg.environment.p);
      break;
    case EnvironmentSpec::Kind::conjugate_prior:
      setup.conjugate_prior =
          ConjugateBelief(cfg.environment.n_states, cfg.environment.n_actions);
      break;
  }

  if (setup.fixed_truth.has_value()) {
    setup.n_states = setup.fixed_truth->n_states();
    setup.n_actions = setup.fixed_truth->n_actions();
  } else if (setup.finite_prior.has_value()) {
    setup.n_states = setup.finite_prior->n_states();
    setup.n_actions = setup.finite_prior->n_actions();
  } else {
    setup.n_states = setup.conjugate_prior->n_states();
    setup.n_actions = setup.conjugate_prior->n_actions();
  }

  if (cfg.start_state < 0 || cfg.start_state >= setup.n_states) {
    throw ConfigError("start_state", "out of range for an environment with " +
                                         std::to_string(setup.n_states) + " states");
  }

  setup.horizon = cfg.horizon.has_value() ? cfg.horizon : file_horizon;
  if (setup.horizon.has_value()) {
    if (cfg.initial_dist.has_value()) {
      setup.initial_dist = *cfg.initial_dist;
    } else if (file_dist.has_value()) {
      setup.initial_dist = *file_dist;
    } else {
      setup.initial_dist.assign(static_cast<std::size_t>(setup.n_states), 0.0);
      setup.initial_dist[static_cast<std::size_t>(cfg.start_state)] = 1.0;
    }
    if (setup.initial_dist.size() != static_cast<std::size_t>(setup.n_states)) {
      throw ConfigError("initial_dist", "expected one probability per state");
    }
  }

  if (setup.fixed_truth.has_value() && !cfg.lambda_star.has_value()) {
    setup.fixed_lambda_star =
        optimal_gain(*setup.fixed_truth, pick_gain_method(*setup.fixed_truth))
            .gain[static_cast<std::size_t>(cfg.start_state)];
  }
  return setup;
}

Belief make_belief(const ResolvedSetup& setup) {
  if (setup.finite_prior.has_value()) return Belief(*setup.finite_prior);
  return Belief(ConjugateBelief(setup.n_states, setup.n_actions));
}

std::unique_ptr<Agent> build_agent(const AgentSpec& spec, const ResolvedSetup& setup) {
  const EpisodeSignal default_signal = EpisodeSignal::visit_count_doubling();
  switch (spec.kind) {
    case AgentSpec::Kind::psrl:
      return psrl_fixed(make_belief(setup), *spec.H);
    case AgentSpec::Kind::lazy_psrl:
      return lazy_psrl(make_belief(setup), spec.signal.value_or(default_signal));
    case AgentSpec::Kind::ofu:
      return ofu_rl(setup.n_states, setup.n_actions, default_confidence_set,
                    spec.signal.value_or(default_signal), spec.delta, spec.evi_epsilon);
    case AgentSpec::Kind::smoothed_psrl:
      return smoothed_psrl(make_belief(setup), spec.gamma);
  }
  throw ContractViolation("unknown agent kind");
}

SeedResult run_one_seed(const ExperimentConfig& cfg, const ResolvedSetup& setup,
                        std::uint64_t seed) {
  Rng rng(seed);
  TabularMdp truth = setup.fixed_truth.has_value()
                         ? *setup.fixed_truth
                         : (setup.finite_prior.has_value()
                                ? setup.finite_prior->sample(rng)
                                : setup.conjugate_prior->sample(rng));

  double lambda_star = 0.0;
  if (cfg.lambda_star.has_value()) {
    lambda_star = *cfg.lambda_star;
  } else if (setup.fixed_lambda_star.has_value()) {
    lambda_star = *setup.fixed_lambda_star;
  } else {
    lambda_star = optimal_gain(truth, pick_gain_method(truth))
                      .gain[static_cast<std::size_t>(cfg.start_state)];
  }

  std::unique_ptr<Agent> agent = build_agent(cfg.agent, setup);
  Trajectory traj;
  if (setup.horizon.has_value()) {
    FiniteHorizonMdp fh(truth, *setup.horizon, setup.initial_dist);
    traj = run_agent(*agent, fh, cfg.start_state, cfg.T, rng);
  } else {
    traj = run_agent(*agent, truth, cfg.start_state, cfg.T, rng);
  }

  SeedResult result;
  result.seed = seed;
  result.report = regret_curve(traj, lambda_star);
  result.report.seed = seed;

  if (cfg.decompose) {
    std::vector<Decomposition> decs;
    if (cfg.agent.kind == AgentSpec::Kind::psrl) {
      std::vector<double> rho = setup.horizon.has_value()
                                    ? setup.initial_dist
                                    : std::vector<double>(
                                          static_cast<std::size_t>(setup.n_states), 0.0);
      if (!setup.horizon.has_value()) rho[static_cast<std::size_t>(cfg.start_state)] = 1.0;
      FiniteHorizonMdp true_fh(truth, *cfg.agent.H, std::move(rho));
      decs = decompose_finite(agent->episodes(), true_fh);
    } else {
      decs = decompose_gain(agent->episodes(), truth, cfg.start_state);
    }
    if (decs.size() != result.report.episodes.size()) {
      throw ContractViolation("episode decomposition does not match the regret curve");
    }
    for (std::size_t i = 0; i < decs.size(); ++i) {
      result.report.episodes[i].delta_opt = decs[i].delta_opt;
      result.report.episodes[i].delta_conc = decs[i].delta_conc;
      result.report.episodes[i].has_decomposition = true;
    }
  }
  return result;
}

/// Streaming accumulator; fed strictly in seed-list order.
struct Pooled {
  std::vector<double> finals;
  std::vector<double> curve_sum;
  // Decomposition, per episode index (0-based), sums and squared sums.
  std::vector<double> opt_sum, opt_sq, conc_sum, conc_sq;
  std::vector<std::int64_t> count_by_k;
  std::vector<double> summed_opt;

  explicit Pooled(std::int64_t T) : curve_sum(static_cast<std::size_t>(T), 0.0) {}

  void add(const SeedResult& r, bool decompose) {
    finals.push_back(r.report.final_regret());
    for (std::size_t t = 0; t < curve_sum.size(); ++t) {
      curve_sum[t] += r.report.cumulative[t];
    }
    if (!decompose) return;
    double seed_opt = 0.0;
    for (const EpisodeRegretRecord& e : r.report.episodes) {
      seed_opt += e.delta_opt;
      const int idx = e.k - 1;
      if (idx < 0 || idx >= kMaxEpisodesSummarized) continue;
      const std::size_t u = static_cast<std::size_t>(idx);
      if (u >= opt_sum.size()) {
        opt_sum.resize(u + 1, 0.0);
        opt_sq.resize(u + 1, 0.0);
        conc_sum.resize(u + 1, 0.0);
        conc_sq.resize(u + 1, 0.0);
        count_by_k.resize(u + 1, 0);
      }
      opt_sum[u] += e.delta_opt;
      opt_sq[u] += e.delta_opt * e.delta_opt;
      conc_sum[u] += e.delta_conc;
      conc_sq[u] += e.delta_conc * e.delta_conc;
      ++count_by_k[u];
    }
    summed_opt.push_back(seed_opt);
  }
};

void moments_to_mean_se(const std::vector<double>& sum, const std::vector<double>& sq,
                        const std::vector<std::int64_t>& count, std::vector<double>& mean_out,
                        std::vector<double>& se_out) {
  mean_out.resize(sum.size(), 0.0);
  se_out.resize(sum.size(), 0.0);
  for (std::size_t i = 0; i < sum.size(); ++i) {
    const double n = static_cast<double>(count[i]);
    if (count[i] < 1) continue;
    mean_out[i] = sum[i] / n;
    if (count[i] < 2) continue;
    const double var = std::max(0.0, (sq[i] - sum[i] * sum[i] / n) / (n - 1.0));
    se_out[i] = std::sqrt(var / n);
  }
}

}  // namespace

void ExperimentConfig::validate() const {
  if (T < 1) throw ConfigError("T", "must be positive");
  if (start_state < 0) throw ConfigError("start_state", "must be non-negative");
  if (horizon.has_value() && *horizon < 1) throw ConfigError("horizon", "must be positive");
  if (initial_dist.has_value() && !horizon.has_value()) {
    throw ConfigError("initial_dist", "requires horizon");
  }
  if (seeds.empty()) throw ConfigError("seeds", "at least one seed is required");
  std::set<std::uint64_t> unique_seeds(seeds.begin(), seeds.end());
  if (unique_seeds.size() != seeds.size()) {
    throw ConfigError("seeds", "seed list contains duplicates");
  }
  if (agent.kind == AgentSpec::Kind::psrl) {
    if (!agent.H.has_value()) {
      throw ConfigError("agent.H", "psrl requires a planning horizon H");
    }
  }
  if (agent.H.has_value() && *agent.H < 1) throw ConfigError("agent.H", "must be positive");
  if (!(agent.gamma > 0.0 && agent.gamma < 1.0)) {
    throw ConfigError("agent.gamma", "must lie in (0, 1)");
  }
  if (!(agent.delta > 0.0 && agent.delta < 1.0)) {
    throw ConfigError("agent.delta", "must lie in (0, 1)");
  }
  if (!(agent.evi_epsilon > 0.0)) throw ConfigError("agent.evi_epsilon", "must be positive");
  if (environment.kind == EnvironmentSpec::Kind::conjugate_prior &&
      (environment.n_states < 1 || environment.n_actions < 1)) {
    throw ConfigError("environment", "conjugate_prior needs positive dimensions");
  }
}

ExperimentSummary run_experiment(const ExperimentConfig& cfg, const SeedSink& sink, int jobs) {
  cfg.validate();
  const ResolvedSetup setup = resolve_setup(cfg);
  if (jobs < 1) jobs = 1;

  ExperimentSummary summary;
  summary.config_hash = config_hash(cfg);
  summary.n_seeds = static_cast<std::int64_t>(cfg.seeds.size());
  summary.T = cfg.T;

  Pooled pooled(cfg.T);
  const std::size_t n = cfg.seeds.size();

  if (jobs == 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) {
      SeedResult result = run_one_seed(cfg, setup, cfg.seeds[i]);
      if (sink) sink(result);
      pooled.add(result, cfg.decompose);
    }
  } else {
    // Blocks of seeds run in parallel; reduction stays sequential in
    // seed-list order so the output never depends on the job count.
    const std::size_t block = static_cast<std::size_t>(jobs) * 8;
    std::vector<std::optional<SeedResult>> slots(std::min(block, n));
    for (std::size_t begin = 0; begin < n; begin += block) {
      const std::size_t end = std::min(n, begin + block);
      std::atomic<std::size_t> next{begin};
      std::mutex error_mutex;
      std::exception_ptr first_error;
      auto worker = [&]() {
        while (true) {
          const std::size_t i = next.fetch_add(1);
          if (i >= end) return;
          try {
            slots[i - begin] = run_one_seed(cfg, setup, cfg.seeds[i]);
          } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!first_error) first_error = std::current_exception();
            return;
          }
        }
      };
      std::vector<std::thread> threads;
      const std::size_t n_threads = std::min<std::size_t>(static_cast<std::size_t>(jobs),
                                                          end - begin);
      threads.reserve(n_threads);
      for (std::size_t w = 0; w < n_threads; ++w) threads.emplace_back(worker);
      for (std::thread& t : threads) t.join();
      if (first_error) std::rethrow_exception(first_error);
      for (std::size_t i = begin; i < end; ++i) {
        SeedResult& result = *slots[i - begin];
        if (sink) sink(result);
        pooled.add(result, cfg.decompose);
        slots[i - begin].reset();
      }
    }
  }

  summary.mean_final_regret = mean(pooled.finals);
  summary.se_final_regret = standard_error(pooled.finals);
  summary.mean_curve.resize(pooled.curve_sum.size());
  for (std::size_t t = 0; t < pooled.curve_sum.size(); ++t) {
    summary.mean_curve[t] = pooled.curve_sum[t] / static_cast<double>(n);
  }
  if (cfg.decompose) {
    DecompositionSummary dec;
    moments_to_mean_se(pooled.opt_sum, pooled.opt_sq, pooled.count_by_k,
                       dec.mean_delta_opt_by_k, dec.se_delta_opt_by_k);
    moments_to_mean_se(pooled.conc_sum, pooled.conc_sq, pooled.count_by_k,
                       dec.mean_delta_conc_by_k, dec.se_delta_conc_by_k);
    dec.n_by_k = pooled.count_by_k;
    dec.summed_delta_opt_mean = mean(pooled.summed_opt);
    dec.summed_delta_opt_se = standard_error(pooled.summed_opt);
    summary.decomposition = std::move(dec);
  }
  return summary;
}

std::string csv_header() { return "seed,t,episode_index,reward,cumulative_regret\n"; }

std::string report_to_csv(const SeedResult& result) {
  std::ostringstream out;
  const RegretReport& r = result.report;
  for (std::size_t t = 0; t < r.rewards.size(); ++t) {
    out << result.seed << ',' << (t + 1) << ',' << r.episode_index[t] << ','
        << format_g17(r.rewards[t]) << ',' << format_g17(r.cumulative[t]) << '\n';
  }
  return out.str();
}

namespace {

void append_double_array(std::ostringstream& out, const std::vector<double>& values) {
  out << '[';
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out << ',';
    out << format_g17(values[i]);
  }
  out << ']';
}

void append_int_array(std::ostringstream& out, const std::vector<std::int64_t>& values) {
  out << '[';
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out << ',';
    out << values[i];
  }
  out << ']';
}

}  // namespace

std::string summary_to_json(const ExperimentSummary& summary) {
  std::ostringstream out;
  out << "{\n";
  out << "  \"config_hash\": \"" << summary.config_hash << "\",\n";
  out << "  \"n_seeds\": " << summary.n_seeds << ",\n";
  out << "  \"T\": " << summary.T << ",\n";
  out << "  \"mean_final_regret\": " << format_g17(summary.mean_final_regret) << ",\n";
  out << "  \"se_final_regret\": " << format_g17(summary.se_final_regret);
  if (summary.decomposition.has_value()) {
    const DecompositionSummary& dec = *summary.decomposition;
    out << ",\n  \"per_episode_decomposition\": {\n";
    out << "    \"mean_delta_opt\": ";
    append_double_array(out, dec.mean_delta_opt_by_k);
    out << ",\n    \"se_delta_opt\": ";
    append_double_array(out, dec.se_delta_opt_by_k);
    out << ",\n    \"mean_delta_conc\": ";
    append_double_array(out, dec.mean_delta_conc_by_k);
    out << ",\n    \"se_delta_conc\": ";
    append_double_array(out, dec.se_delta_conc_by_k);
    out << ",\n    \"n\": ";
    append_int_array(out, dec.n_by_k);
    out << ",\n    \"summed_delta_opt_mean\": " << format_g17(dec.summed_delta_opt_mean);
    out << ",\n    \"summed_delta_opt_se\": " << format_g17(dec.summed_delta_opt_se);
    out << "\n  }";
  }
  out << "\n}\n";
  return out.str();
}

}  // namespace regretlab
