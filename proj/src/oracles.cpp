#include "regretlab/oracles.hpp"

#include <cmath>

#include "regretlab/belief.hpp"
#include "regretlab/envs.hpp"
#include "regretlab/errors.hpp"
#include "regretlab/planner.hpp"
#include "regretlab/signals.hpp"

namespace regretlab {

CounterexampleResult exact_counterexample(int H_max, std::int64_t T, double p) {
  if (T < 1) throw ContractViolation("T must be >= 1");
  if (H_max <= 1) throw ContractViolation("H_max must exceed 1");
  if (p < 0.0 || p > 1.0) throw ContractViolation("p must lie in [0,1]");

  const EpisodeSignal signal = EpisodeSignal::reward_threshold(1.0, H_max);
  double total = 0.0;
  for (int r_true = 0; r_true <= 1; ++r_true) {
    for (int r_hat1 = 0; r_hat1 <= 1; ++r_hat1) {
      const double weight = (r_true == 1 ? p : 1.0 - p) * (r_hat1 == 1 ? p : 1.0 - p);
      if (weight == 0.0) continue;
      // Replay the episode signal on the deterministic reward stream. The
      // first observation reveals the true reward, so every episode after the
      // first samples the collapsed posterior exactly.
      EpisodeStats stats(1, 1);
      double branch = 0.0;
      int k = 0;
      bool fired = true;
      for (std::int64_t t = 1; t <= T; ++t) {
        if (fired) {
          ++k;
          stats = EpisodeStats(1, 1);
          fired = false;
        }
        const double lambda_k = (k == 1) ? r_hat1 : r_true;
        branch += static_cast<double>(r_true) - lambda_k;
        ++stats.elapsed;
        stats.cumulative_reward += r_true;
        stats.visits_within(0, 0) += 1.0;
        fired = signal_eval(signal, stats);
      }
      total += weight * branch;
    }
  }
  return {total, std::abs(total)};
}

double exact_heaven_hell(std::int64_t T, double p) {
  if (T < 1) throw ContractViolation("T must be >= 1");
  if (p < 0.0 || p > 1.0) throw ContractViolation("p must lie in [0,1]");

  const FiniteSupportBelief prior = heaven_hell_prior(p);
  double expected_regret = 0.0;
  for (size_t true_i = 0; true_i < prior.atoms().size(); ++true_i) {
    const auto& true_mdp = prior.atoms()[true_i];
    const double lambda_star = optimal_gain(true_mdp, GainMethod::brute_force).gain[0];
    for (size_t hat_i = 0; hat_i < prior.atoms().size(); ++hat_i) {
      const double weight = prior.weights()[true_i] * prior.weights()[hat_i];
      if (weight == 0.0) continue;
      // Plan in the sampled atom; the first action absorbs, so the episode
      // schedule is irrelevant and the collected reward is T or 0.
      const auto plan = optimal_gain(prior.atoms()[hat_i], GainMethod::brute_force);
      const int destination = plan.policy.at(0) + 1;
      const double collected =
          true_mdp.reward(destination, 0).mean() * static_cast<double>(T);
      expected_regret += weight * (lambda_star * static_cast<double>(T) - collected);
    }
  }
  return expected_regret;
}

}  // namespace regretlab
