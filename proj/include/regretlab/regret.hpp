#pragma once

#include <cstdint>
#include <vector>

#include "regretlab/agents.hpp"
#include "regretlab/mdp.hpp"

namespace regretlab {

struct EpisodeRegretRecord {
  int k = 0;
  std::int64_t start_t = 0;
  std::int64_t length = 0;
  double delta_opt = 0.0;
  double delta_conc = 0.0;
  bool has_decomposition = false;
};

/// Regret accounting for one run: cumulative shortfall against lambda_star
/// per timestep, plus per-episode records.
struct RegretReport {
  std::uint64_t seed = 0;
  std::int64_t T = 0;
  double lambda_star = 0.0;
  std::vector<double> rewards;
  std::vector<int> episode_index;
  std::vector<double> cumulative;
  std::vector<EpisodeRegretRecord> episodes;

  double final_regret() const { return cumulative.empty() ? 0.0 : cumulative.back(); }
};

/// Prefix sums of (lambda_star - r_t), with episode bookkeeping copied from
/// the trajectory annotations. Decomposition fields are left unset.
RegretReport regret_curve(const Trajectory& traj, double lambda_star);

struct Decomposition {
  double delta_opt = 0.0;
  double delta_conc = 0.0;
};

/// Finite-horizon decomposition per episode, evaluated at each episode's
/// start state: delta_opt is the true MDP's optimal H-step value minus the
/// sampled MDP's value of the followed policy; delta_conc is the sampled
/// value minus the true value of that same policy. Episodes missing a logged
/// MDP or time policy are a contract violation.
std::vector<Decomposition> decompose_finite(const std::vector<EpisodeRecord>& episodes,
                                            const FiniteHorizonMdp& true_mdp);

/// Gain-based decomposition per episode: delta_opt = L_k (lambda_star -
/// lambda_k), delta_conc = L_k (lambda_k - true gain of the followed policy
/// at the episode start state), where lambda_star is the true optimal gain at
/// run_start_state and lambda_k is the followed policy's gain in the logged
/// sampled MDP (for optimistic records, the logged optimistic gain).
std::vector<Decomposition> decompose_gain(const std::vector<EpisodeRecord>& episodes,
                                          const TabularMdp& true_mdp, int run_start_state);

}  // namespace regretlab
