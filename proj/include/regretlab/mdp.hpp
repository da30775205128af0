#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "regretlab/rng.hpp"

namespace regretlab {

inline constexpr double kRowSumTol = 1e-12;

/// Reward distribution of one (state, action) pair: Bernoulli over {0,1} or a
/// point mass, both with mean in [0,1].
struct RewardModel {
  enum class Kind { bernoulli, point };

  Kind kind = Kind::point;
  double value = 0.0;  // Bernoulli success probability, or the point-mass value

  static RewardModel make_bernoulli(double p);
  static RewardModel make_point(double v);

  double mean() const { return value; }

  /// Bernoulli consumes one uniform; a point mass consumes no randomness.
  double sample(Rng& rng) const;

  bool operator==(const RewardModel&) const = default;
};

/// Finite MDP with row-stochastic transitions and rewards in [0,1].
///
/// Immutable after construction through the public API; operations take
/// explicit random streams, so values can be shared freely across threads.
class TabularMdp {
 public:
  TabularMdp(int n_states, int n_actions);

  int n_states() const { return n_states_; }
  int n_actions() const { return n_actions_; }

  /// Replaces one transition row; validates non-negativity and row sum.
  void set_transition_row(int s, int a, std::span<const double> row);
  void set_reward(int s, int a, RewardModel model);

  std::span<const double> transition_row(int s, int a) const;
  double transition(int s, int a, int next) const;
  const RewardModel& reward(int s, int a) const;
  double reward_mean(int s, int a) const { return reward(s, a).mean(); }

  /// Re-checks every invariant (used by loaders). Throws std::invalid_argument.
  void validate() const;

  bool operator==(const TabularMdp&) const = default;

 private:
  void check_state_action(int s, int a) const;

  int n_states_ = 0;
  int n_actions_ = 0;
  std::vector<double> transitions_;     // [s][a][s'] flattened
  std::vector<RewardModel> rewards_;    // [s][a] flattened
};

/// Episodic wrapper: the state resets according to `initial_dist` every
/// `horizon` steps.
struct FiniteHorizonMdp {
  TabularMdp base;
  int horizon = 1;
  std::vector<double> initial_dist;

  FiniteHorizonMdp(TabularMdp base_, int horizon_, std::vector<double> initial_dist_);

  int n_states() const { return base.n_states(); }
  int n_actions() const { return base.n_actions(); }
};

/// state -> action.
struct StationaryPolicy {
  std::vector<int> action;

  int at(int s) const { return action[static_cast<std::size_t>(s)]; }
  bool operator==(const StationaryPolicy&) const = default;
};

/// (state, period h) -> action, h zero-based in [0, horizon).
struct TimePolicy {
  int n_states = 0;
  int horizon = 0;
  std::vector<int> action;  // [h][s] flattened

  TimePolicy() = default;
  TimePolicy(int n_states_, int horizon_)
    : n_states(n_states_), horizon(horizon_),
     action(static_cast<std::size_t>(n_states_) * horizon_, 0) {}

  int at(int s, int h) const { return action[static_cast<std::size_t>(h) * n_states + s]; }
  int& at(int s, int h) { return action[static_cast<std::size_t>(h) * n_states + s]; }
  bool operator==(const TimePolicy&) const = default;
};

struct Observation {
  int state = 0;
  int action = 0;
  double reward = 0.0;
  int next_state = 0;
};

/// Realized interaction history. Timesteps are 1-based; `episode_starts`
/// always begins with 1 and is strictly increasing.
struct Trajectory {
  struct Step {
    int state;
    int action;
    double reward;
    int next_state;
  };

  int start_state = 0;
  std::vector<Step> steps;
  std::vector<long long> episode_starts;

  long long length() const { return static_cast<long long>(steps.size()); }
};

/// One environment step: reward drawn first, then the next state.
std::pair<double, int> step(const TabularMdp& mdp, int s, int a, Rng& rng);

/// Rolls a stationary policy forward for T steps. Single episode.
Trajectory simulate(const TabularMdp& mdp, const StationaryPolicy& policy, int s1, long long T,
          Rng& rng);

/// Episodic rollout: the state re-draws from the initial distribution every
/// `horizon` steps, and episode starts land at 1, H+1, 2H+1, ...
Trajectory simulate(const FiniteHorizonMdp& fh, const TimePolicy& policy, int s1, long long T,
          Rng& rng);
Trajectory simulate(const FiniteHorizonMdp& fh, const StationaryPolicy& policy, int s1,
          long long T, Rng& rng);

}  // namespace regretlab
