#pragma once

#include <map>
#include <string>

#include "regretlab/mdp.hpp"

namespace regretlab {

/// Built-in environments.
///
/// heaven_hell(heaven=1|2): three states, two actions. Action a at state 0
/// moves deterministically to state a+1; states 1 and 2 are absorbing. The
/// heaven state pays 1 per step, the hell state 0, and the first step out of
/// state 0 already pays the destination's rate (reward on arrival), so the
/// optimal policy collects exactly 1 per step from t=1 on.
/// two_point_bandit(R=0|1): one state, one action, PointMass(R) reward.
/// chain(n): n-state swim-upstream chain; action 1 fights the current
/// (0.3 forward, 0.6 stay, 0.1 back), action 0 drifts down deterministically.
/// Reward 0.1 for drifting at state 0, reward 1 for fighting at state n-1.
/// random(n_states, n_actions, seed): strictly positive Dirichlet(1,..,1)
/// rows with Bernoulli rewards of uniform means.
///
/// Unknown names and malformed parameter sets raise std::invalid_argument.
TabularMdp build_named_env(const std::string& name,
                           const std::map<std::string, double>& params = {});

}  // namespace regretlab
