#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "regretlab/chain.hpp"
#include "regretlab/classify.hpp"
#include "regretlab/mdp.hpp"
#include "regretlab/util.hpp"

namespace regretlab {

/// Expected reward-to-go, indexed by zero-based period h in 0..H-1.
class QTable {
 public:
  QTable(int horizon, int n_states, int n_actions);

  int horizon() const { return horizon_; }
  int n_states() const { return n_states_; }
  int n_actions() const { return n_actions_; }

  double& at(int h, int s, int a);
  double at(int h, int s, int a) const;
  /// max_a Q_h(s, a)
  double value(int h, int s) const;
  /// lowest-index maximizing action
  int greedy(int h, int s) const;

 private:
  int horizon_, n_states_, n_actions_;
  std::vector<double> q_;
};

/// Per-state long-run average reward.
using GainVector = std::vector<double>;

QTable backward_induction_q(const FiniteHorizonMdp& fh);

struct BackwardInductionResult {
  QTable q;
  TimePolicy policy;
};

/// Optimal Q-values by dynamic programming with the zero boundary Q_{H+1} = 0,
/// plus the greedy policy (lowest index wins ties). Optimal at every (s, h).
BackwardInductionResult backward_induction(const FiniteHorizonMdp& fh);

/// Q-values of a fixed time policy: the same recursion with the successor
/// action pinned to policy(s', h+1).
QTable policy_value_finite(const FiniteHorizonMdp& fh, const TimePolicy& policy);

/// Exact per-state gain of a stationary policy (chain decomposition plus
/// linear solves; the Cesaro limit always exists for finite chains).
GainVector gain(const TabularMdp& mdp, const StationaryPolicy& policy);

enum class GainMethod { brute_force, relative_vi };

struct OptimalGainResult {
  GainVector gain;
  StationaryPolicy policy;
  /// True when the returned policy attains the per-state optimum at every
  /// state simultaneously (within 1e-9). Brute force may find no such policy
  /// on non-communicating inputs; the returned policy is then optimal for
  /// state 0 and this flag is the warning.
  bool simultaneously_optimal = true;
};

/// brute_force: enumerate all A^S deterministic stationary policies (requires
/// A^S <= policy_cap) and report the per-state maximum gain. relative_vi:
/// relative value iteration with reference state 0 and an aperiodicity
/// transform, to span < 1e-9; requires a weakly communicating MDP, where the
/// optimal gain is constant.
OptimalGainResult optimal_gain(const TabularMdp& mdp, GainMethod method,
                               std::int64_t policy_cap = kDefaultPolicyCap);

/// Visit counts and empirical sums accumulated from observations.
class EmpiricalStats {
 public:
  EmpiricalStats(int n_states, int n_actions);

  void record(const Observation& obs);

  int n_states() const { return n_states_; }
  int n_actions() const { return n_actions_; }
  double visits(int s, int a) const { return visit_(s, a); }
  double reward_sum(int s, int a) const { return reward_sum_(s, a); }
  double transition_count(int s, int a, int t) const;
  std::int64_t total_steps() const { return total_steps_; }

 private:
  int n_states_, n_actions_;
  Grid<double> visit_, reward_sum_;
  std::vector<double> next_count_;
  std::int64_t total_steps_ = 0;
};

struct ConfidenceSet {
  TabularMdp center;
  Grid<double> reward_radius;
  Grid<double> transition_radius;
  Grid<double> counts;
};

using ConfidenceSetBuilder =
    std::function<ConfidenceSet(const EmpiricalStats&, std::int64_t t, double delta)>;

/// Standard optimistic construction: empirical means at the center (uniform
/// row and reward 1/2 before any visit), transition L1 radius
/// sqrt(14 S log(2 A t / delta) / max(1, N)) and reward radius
/// sqrt(7 log(2 S A t / delta) / (2 max(1, N))).
ConfidenceSet default_confidence_set(const EmpiricalStats& stats, std::int64_t t,
                                     double delta);

struct EviResult {
  double optimistic_gain = 0.0;
  StationaryPolicy policy;
  int iterations = 0;
};

/// Extended value iteration over a confidence set: rewards pushed to
/// min(1, mean + radius), transition rows chosen inside their L1 balls to
/// favor high-value states (sorted mass shifting), iterated with an
/// aperiodicity transform until the value-increment span drops below epsilon.
/// The returned gain is within epsilon of the extended MDP's optimal gain and
/// at least any member MDP's optimal gain minus epsilon.
EviResult extended_value_iteration(const ConfidenceSet& set, double epsilon,
                                   int max_iterations = 1'000'000);

}  // namespace regretlab
