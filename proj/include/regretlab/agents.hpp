#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "regretlab/belief.hpp"
#include "regretlab/planner.hpp"
#include "regretlab/signals.hpp"

namespace regretlab {

/// What an agent decided at one episode start, kept for regret decomposition.
/// planned_value holds the quantity the plan was optimal for: the sampled
/// MDP's gain at the start state (stationary planners), its H-step value
/// (fixed-episode planner), or the optimistic gain (confidence-set planner,
/// flagged by `optimistic`; no sampled MDP then).
struct EpisodeRecord {
  int k = 0;
  std::int64_t start_t = 0;
  std::int64_t length = 0;
  int start_state = 0;
  std::optional<TabularMdp> sampled_mdp;
  std::optional<StationaryPolicy> stationary_policy;
  std::optional<TimePolicy> time_policy;
  double planned_value = 0.0;
  bool optimistic = false;
};

/// Base harness shared by every agent: episode bookkeeping, signal
/// evaluation, and the act/observe driver loop contract. A policy is
/// recomputed exactly at the first act() and whenever the signal fired at the
/// previous step; the episode index advances by one per recomputation.
class Agent {
 public:
  virtual ~Agent() = default;

  int act(int state, Rng& rng);
  void observe(const Observation& obs, Rng& rng);

  int current_episode() const { return k_; }
  std::int64_t steps_taken() const { return t_; }
  const std::vector<EpisodeRecord>& episodes() const { return episodes_; }
  const std::vector<std::string>& warnings() const { return warnings_; }
  const EpisodeStats& stats() const { return stats_; }
  const EpisodeSignal& signal() const { return signal_; }

 protected:
  Agent(int n_states, int n_actions, EpisodeSignal signal);

  virtual void plan(int state, Rng& rng, EpisodeRecord& record) = 0;
  virtual int policy_action(int state) = 0;
  virtual void learn(const Observation& obs, Rng& rng) = 0;

  EpisodeStats stats_;
  EpisodeSignal signal_;
  std::vector<EpisodeRecord> episodes_;
  std::vector<std::string> warnings_;
  std::int64_t t_ = 0;
  int k_ = 0;
  bool pending_replan_ = true;
};

/// Fixed-episode posterior sampling: sample M_k at each episode start, plan a
/// horizon-H time policy by backward induction, follow it for H steps while
/// updating the belief each step. On a plain (non-resetting) MDP this imposes
/// artificial episodes.
std::unique_ptr<Agent> psrl_fixed(Belief prior, int H);

/// Posterior sampling with a data-dependent episode signal: sample M_k,
/// follow its optimal stationary policy until the signal fires. A sampled MDP
/// whose planning fails numerically is skipped and resampled (at most 10
/// tries), then the posterior mean is planned instead; both paths log a
/// warning.
std::unique_ptr<Agent> lazy_psrl(Belief prior, EpisodeSignal signal);

/// Optimistic agent: build a confidence set from history counts at each
/// episode start, run extended value iteration, follow the optimistic policy
/// until the signal fires (doubling visit counts by default).
std::unique_ptr<Agent> ofu_rl(int n_states, int n_actions, ConfidenceSetBuilder phi,
                              EpisodeSignal signal = EpisodeSignal::visit_count_doubling(),
                              double delta = 0.05, double evi_epsilon = 1e-4);

/// Per-step resampling with linear smoothing: every step draws a posterior
/// sample and folds it into a running MDP, row by row, at mixing weight
/// (1-gamma); the running MDP is replanned when it moved since the last plan.
std::unique_ptr<Agent> smoothed_psrl(Belief prior, double gamma);

/// Drives an agent for T steps on a fixed environment and returns the
/// realized trajectory, episode starts taken from the agent's records. The
/// finite-horizon overload redraws the state from the initial distribution
/// every `horizon` steps while the recorded observation keeps the sampled
/// successor, mirroring simulate().
Trajectory run_agent(Agent& agent, const TabularMdp& mdp, int s1, std::int64_t T, Rng& rng);
Trajectory run_agent(Agent& agent, const FiniteHorizonMdp& fh, int s1, std::int64_t T,
                     Rng& rng);

}  // namespace regretlab
