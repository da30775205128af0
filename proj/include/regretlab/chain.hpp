#pragma once

#include <vector>

#include "regretlab/mdp.hpp"
#include "regretlab/util.hpp"

namespace regretlab {

/// Solves A x = b in place by partial-pivot elimination.
/// Throws NumericalFailure when the matrix is numerically singular.
std::vector<double> solve_linear(Grid<double> a, std::vector<double> b);

/// Decomposition of the chain P(s' | s, policy(s)).
struct ChainAnalysis {
  /// Recurrent classes, each a sorted list of states.
  std::vector<std::vector<int>> recurrent_classes;
  /// Stationary distribution of each recurrent class, restricted to and
  /// indexed like the class member list.
  std::vector<std::vector<double>> stationary;
  /// absorption(s, c): probability that the chain started at s is absorbed
  /// into recurrent class c. Rows sum to 1.
  Grid<double> absorption;
  /// Long-run average reward from each start state (Cesaro limit).
  std::vector<double> gain_per_state;
};

ChainAnalysis analyze_chain(const TabularMdp& mdp, const StationaryPolicy& policy);

/// Expected long-run average reward of a stationary policy, weighting start
/// states by initial_dist. Exact up to linear-solve roundoff.
double policy_gain(const TabularMdp& mdp, const StationaryPolicy& policy,
                   std::span<const double> initial_dist);

double policy_gain(const TabularMdp& mdp, const StationaryPolicy& policy, int start_state);

}  // namespace regretlab
