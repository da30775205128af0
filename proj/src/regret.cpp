#include "regretlab/regret.hpp"

#include "regretlab/planner.hpp"

#include "regretlab/errors.hpp"

namespace regretlab {

RegretReport regret_curve(const Trajectory& traj, double lambda_star) {
  if (lambda_star < 0.0 || lambda_star > 1.0) {
    throw ContractViolation("lambda_star must lie in [0,1]");
  }
  RegretReport report;
  report.T = traj.length();
  report.lambda_star = lambda_star;
  report.rewards.reserve(traj.steps.size());
  report.episode_index.reserve(traj.steps.size());
  report.cumulative.reserve(traj.steps.size());
  double acc = 0.0;
  size_t next_episode = 0;
  int k = 0;
  for (size_t i = 0; i < traj.steps.size(); ++i) {
    const std::int64_t t = static_cast<std::int64_t>(i) + 1;
    while (next_episode < traj.episode_starts.size() &&
           traj.episode_starts[next_episode] == t) {
      ++k;
      ++next_episode;
      report.episodes.push_back({k, t, 0, 0.0, 0.0, false});
    }
    acc += lambda_star - traj.steps[i].reward;
    report.rewards.push_back(traj.steps[i].reward);
    report.episode_index.push_back(k);
    report.cumulative.push_back(acc);
    if (!report.episodes.empty()) ++report.episodes.back().length;
  }
  return report;
}

std::vector<Decomposition> decompose_finite(const std::vector<EpisodeRecord>& episodes,
                                            const FiniteHorizonMdp& true_mdp) {
  QTable optimal_q = backward_induction_q(true_mdp);
  std::vector<Decomposition> out;
  out.reserve(episodes.size());
  for (const auto& record : episodes) {
    if (!record.sampled_mdp.has_value() || !record.time_policy.has_value()) {
      throw ContractViolation("episode " + std::to_string(record.k) +
                              " lacks a logged sampled MDP or time policy");
    }
    const int s = record.start_state;
    const auto& policy = *record.time_policy;
    FiniteHorizonMdp sampled_fh(*record.sampled_mdp, true_mdp.horizon,
                                true_mdp.initial_dist);
    QTable sampled_q = policy_value_finite(sampled_fh, policy);
    QTable true_q = policy_value_finite(true_mdp, policy);
    const double v_star = optimal_q.value(0, s);
    const double v_sampled = sampled_q.at(0, s, policy.at(s, 0));
    const double v_true = true_q.at(0, s, policy.at(s, 0));
    out.push_back({v_star - v_sampled, v_sampled - v_true});
  }
  return out;
}

std::vector<Decomposition> decompose_gain(const std::vector<EpisodeRecord>& episodes,
                                          const TabularMdp& true_mdp, int run_start_state) {
  const double lambda_star =
      optimal_gain(true_mdp, GainMethod::brute_force).gain[run_start_state];
  std::vector<Decomposition> out;
  out.reserve(episodes.size());
  for (const auto& record : episodes) {
    if (!record.stationary_policy.has_value()) {
      throw ContractViolation("episode " + std::to_string(record.k) +
                              " lacks a logged stationary policy");
    }
    const double length = static_cast<double>(record.length);
    const auto& policy = *record.stationary_policy;
    double lambda_k;
    if (record.optimistic) {
      lambda_k = record.planned_value;
    } else {
      if (!record.sampled_mdp.has_value()) {
        throw ContractViolation("episode " + std::to_string(record.k) +
                                " lacks a logged sampled MDP");
      }
      lambda_k = gain(*record.sampled_mdp, policy)[record.start_state];
    }
    const double lambda_true = gain(true_mdp, policy)[record.start_state];
    out.push_back(
        {length * (lambda_star - lambda_k), length * (lambda_k - lambda_true)});
  }
  return out;
}

}  // namespace regretlab
