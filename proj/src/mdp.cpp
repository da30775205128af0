#include "regretlab/mdp.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "regretlab/errors.hpp"

namespace regretlab {

RewardModel RewardModel::make_bernoulli(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("bernoulli: p must lie in [0,1]");
  return RewardModel{Kind::bernoulli, p};
}

RewardModel RewardModel::make_point(double v) {
  if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("point mass: value must lie in [0,1]");
  return RewardModel{Kind::point, v};
}

double RewardModel::sample(Rng& rng) const {
  if (kind == Kind::bernoulli) return rng.bernoulli(value) ? 1.0 : 0.0;
  return value;
}

TabularMdp::TabularMdp(int n_states, int n_actions)
  : n_states_(n_states), n_actions_(n_actions) {
  if (n_states < 1 || n_actions < 1)
    throw std::invalid_argument("TabularMdp: need at least one state and one action");
  transitions_.assign(static_cast<std::size_t>(n_states) * n_actions * n_states, 0.0);
  rewards_.assign(static_cast<std::size_t>(n_states) * n_actions, RewardModel{});
  // Default rows are self-loops, so a freshly built MDP is already valid.
  for (int s = 0; s < n_states; ++s)
    for (int a = 0; a < n_actions; ++a)
      transitions_[(static_cast<std::size_t>(s) * n_actions + a) * n_states + s] = 1.0;
}

void TabularMdp::check_state_action(int s, int a) const {
  if (s < 0 || s >= n_states_ || a < 0 || a >= n_actions_)
    throw std::invalid_argument("state/action index out of range: s=" + std::to_string(s) +
                  " a=" + std::to_string(a));
}

void TabularMdp::set_transition_row(int s, int a, std::span<const double> row) {
  check_state_action(s, a);
  if (static_cast<int>(row.size()) != n_states_)
    throw std::invalid_argument("transition row has wrong length");
  double sum = 0.0;
  for (double p : row) {
    if (p < 0.0 || std::isnan(p)) throw std::invalid_argument("transition row has negative or NaN entry");
    sum += p;
  }
  if (std::abs(sum - 1.0) > kRowSumTol)
    throw std::invalid_argument("transition row sums to " + std::to_string(sum) +
                  ", expected 1 within 1e-12");
  auto* dst = &transitions_[(static_cast<std::size_t>(s) * n_actions_ + a) * n_states_];
  for (int i = 0; i < n_states_; ++i) dst[i] = row[i];
}

void TabularMdp::set_reward(int s, int a, RewardModel model) {
  check_state_action(s, a);
  if (!(model.value >= 0.0 && model.value <= 1.0))
    throw std::invalid_argument("reward mean must lie in [0,1]");
  rewards_[static_cast<std::size_t>(s) * n_actions_ + a] = model;
}

std::span<const double> TabularMdp::transition_row(int s, int a) const {
  check_state_action(s, a);
  return {&transitions_[(static_cast<std::size_t>(s) * n_actions_ + a) * n_states_],
      static_cast<std::size_t>(n_states_)};
}

double TabularMdp::transition(int s, int a, int next) const {
  check_state_action(s, a);
  if (next < 0 || next >= n_states_) throw std::invalid_argument("next state out of range");
  return transitions_[(static_cast<std::size_t>(s) * n_actions_ + a) * n_states_ + next];
}

const RewardModel& TabularMdp::reward(int s, int a) const {
  check_state_action(s, a);
  return rewards_[static_cast<std::size_t>(s) * n_actions_ + a];
}

void TabularMdp::validate() const {
  for (int s = 0; s < n_states_; ++s) {
    for (int a = 0; a < n_actions_; ++a) {
      double sum = 0.0;
      for (int next = 0; next < n_states_; ++next) {
        const double p = transition(s, a, next);
        if (p < 0.0 || std::isnan(p))
          throw std::invalid_argument("negative transition probability at (" +
                        std::to_string(s) + "," + std::to_string(a) + ")");
        sum += p;
      }
      if (std::abs(sum - 1.0) > kRowSumTol)
        throw std::invalid_argument("transition row (" + std::to_string(s) + "," +
                      std::to_string(a) + ") sums to " + std::to_string(sum));
      const double m = reward_mean(s, a);
      if (!(m >= 0.0 && m <= 1.0))
        throw std::invalid_argument("reward mean out of [0,1] at (" + std::to_string(s) +
                      "," + std::to_string(a) + ")");
    }
  }
}

FiniteHorizonMdp::FiniteHorizonMdp(TabularMdp base_, int horizon_,
                  std::vector<double> initial_dist_)
  : base(std::move(base_)), horizon(horizon_), initial_dist(std::move(initial_dist_)) {
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  if (static_cast<int>(initial_dist.size()) != base.n_states())
    throw std::invalid_argument("initial distribution has wrong length");
  double sum = 0.0;
  for (double p : initial_dist) {
    if (p < 0.0) throw std::invalid_argument("initial distribution has negative entry");
    sum += p;
  }
  if (std::abs(sum - 1.0) > kRowSumTol)
    throw std::invalid_argument("initial distribution sums to " + std::to_string(sum));
}

std::pair<double, int> step(const TabularMdp& mdp, int s, int a, Rng& rng) {
  const double r = mdp.reward(s, a).sample(rng);
  const int next = rng.categorical(mdp.transition_row(s, a));
  return {r, next};
}

Trajectory simulate(const TabularMdp& mdp, const StationaryPolicy& policy, int s1, long long T,
          Rng& rng) {
  if (T < 1) throw std::invalid_argument("simulate: T must be >= 1");
  if (static_cast<int>(policy.action.size()) != mdp.n_states())
    throw ContractViolation("simulate: policy not defined for every state");
  Trajectory traj;
  traj.start_state = s1;
  traj.episode_starts = {1};
  traj.steps.reserve(static_cast<std::size_t>(T));
  int s = s1;
  for (long long t = 0; t < T; ++t) {
    const int a = policy.at(s);
    auto [r, next] = step(mdp, s, a, rng);
    traj.steps.push_back({s, a, r, next});
    s = next;
  }
  return traj;
}

namespace {

Trajectory simulate_episodic(const FiniteHorizonMdp& fh, long long T, int s1, Rng& rng,
               auto&& pick_action) {
  if (T < 1) throw std::invalid_argument("simulate: T must be >= 1");
  Trajectory traj;
  traj.start_state = s1;
  traj.steps.reserve(static_cast<std::size_t>(T));
  int s = s1;
  for (long long t = 0; t < T; ++t) {
    const int h = static_cast<int>(t % fh.horizon);
    if (h == 0) traj.episode_starts.push_back(t + 1);
    const int a = pick_action(s, h);
    auto [r, next] = step(fh.base, s, a, rng);
    traj.steps.push_back({s, a, r, next});
    // End of period H: reset instead of following the sampled transition.
    s = (h == fh.horizon - 1) ? rng.categorical(fh.initial_dist) : next;
  }
  return traj;
}

}  // namespace

Trajectory simulate(const FiniteHorizonMdp& fh, const TimePolicy& policy, int s1, long long T,
          Rng& rng) {
  if (policy.n_states != fh.n_states() || policy.horizon != fh.horizon)
    throw ContractViolation("simulate: time policy does not match the MDP's shape");
  return simulate_episodic(fh, T, s1, rng, [&](int s, int h) { return policy.at(s, h); });
}

Trajectory simulate(const FiniteHorizonMdp& fh, const StationaryPolicy& policy, int s1,
          long long T, Rng& rng) {
  if (static_cast<int>(policy.action.size()) != fh.n_states())
    throw ContractViolation("simulate: policy not defined for every state");
  return simulate_episodic(fh, T, s1, rng, [&](int s, int) { return policy.at(s); });
}

}  // namespace regretlab
