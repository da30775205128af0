#include "regretlab/agents.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "regretlab/errors.hpp"

namespace regretlab {

Agent::Agent(int n_states, int n_actions, EpisodeSignal signal)
    : stats_(n_states, n_actions), signal_(signal) {}

int Agent::act(int state, Rng& rng) {
  if (pending_replan_) {
    for (int s = 0; s < stats_.visits_within.rows(); ++s) {
      for (int a = 0; a < stats_.visits_within.cols(); ++a) {
        stats_.visits_at_start(s, a) += stats_.visits_within(s, a);
        stats_.visits_within(s, a) = 0.0;
      }
    }
    stats_.elapsed = 0;
    stats_.cumulative_reward = 0.0;
    ++k_;
    EpisodeRecord record;
    record.k = k_;
    record.start_t = t_ + 1;
    record.start_state = state;
    plan(state, rng, record);
    episodes_.push_back(std::move(record));
    pending_replan_ = false;
  }
  return policy_action(state);
}

void Agent::observe(const Observation& obs, Rng& rng) {
  if (episodes_.empty()) throw ContractViolation("observe() before the first act()");
  ++t_;
  ++stats_.elapsed;
  stats_.cumulative_reward += obs.reward;
  stats_.visits_within(obs.state, obs.action) += 1.0;
  episodes_.back().length = stats_.elapsed;
  learn(obs, rng);
  if (signal_eval(signal_, stats_)) pending_replan_ = true;
}

namespace {

class PsrlFixedAgent final : public Agent {
 public:
  PsrlFixedAgent(Belief prior, int H)
      : Agent(prior.n_states(), prior.n_actions(), EpisodeSignal::fixed_length(H)),
        belief_(std::move(prior)),
        H_(H) {
    if (H < 1) throw ContractViolation("episode length must be positive");
  }

 private:
  void plan(int state, Rng& rng, EpisodeRecord& record) override {
    TabularMdp sample = belief_.sample(rng);
    // Planning ignores the reset distribution; any valid one will do.
    std::vector<double> uniform(sample.n_states(), 1.0 / sample.n_states());
    auto bi = backward_induction(FiniteHorizonMdp(sample, H_, uniform));
    record.planned_value = bi.q.value(0, state);
    record.time_policy = bi.policy;
    record.sampled_mdp = std::move(sample);
    policy_ = std::move(bi.policy);
  }

  int policy_action(int state) override {
    int h = static_cast<int>(std::min<std::int64_t>(stats_.elapsed, H_ - 1));
    return policy_.at(state, h);
  }

  void learn(const Observation& obs, Rng& rng) override { belief_.update(obs, rng); }

  Belief belief_;
  int H_;
  TimePolicy policy_;
};

class LazyPsrlAgent final : public Agent {
 public:
  LazyPsrlAgent(Belief prior, EpisodeSignal signal)
      : Agent(prior.n_states(), prior.n_actions(), signal), belief_(std::move(prior)) {}

 private:
  static constexpr int kMaxSampleAttempts = 10;

  void plan(int state, Rng& rng, EpisodeRecord& record) override {
    for (int attempt = 0; attempt < kMaxSampleAttempts; ++attempt) {
      TabularMdp sample = belief_.sample(rng);
      try {
        adopt(sample, state, record);
        return;
      } catch (const NumericalFailure& e) {
        warnings_.push_back("episode " + std::to_string(record.k) +
                            ": planning failed on a posterior sample (" + e.what() +
                            "), resampling");
      }
    }
    warnings_.push_back("episode " + std::to_string(record.k) +
                        ": falling back to posterior-mean planning");
    adopt(belief_.mean(), state, record);
  }

  void adopt(const TabularMdp& mdp, int state, EpisodeRecord& record) {
    auto result = optimal_gain(mdp, GainMethod::brute_force);
    record.planned_value = result.gain[state];
    record.stationary_policy = result.policy;
    record.sampled_mdp = mdp;
    policy_ = std::move(result.policy);
  }

  int policy_action(int state) override { return policy_.at(state); }
  void learn(const Observation& obs, Rng& rng) override { belief_.update(obs, rng); }

  Belief belief_;
  StationaryPolicy policy_;
};

class OfuAgent final : public Agent {
 public:
  OfuAgent(int n_states, int n_actions, ConfidenceSetBuilder phi, EpisodeSignal signal,
           double delta, double evi_epsilon)
      : Agent(n_states, n_actions, signal),
        phi_(std::move(phi)),
        delta_(delta),
        evi_epsilon_(evi_epsilon),
        history_(n_states, n_actions) {
    if (!(delta > 0.0 && delta < 1.0)) throw ContractViolation("delta must be in (0,1)");
    if (!phi_) throw ContractViolation("confidence set constructor must be callable");
  }

 private:
  void plan(int, Rng&, EpisodeRecord& record) override {
    ConfidenceSet set = phi_(history_, std::max<std::int64_t>(t_ + 1, 1), delta_);
    EviResult evi = extended_value_iteration(set, evi_epsilon_);
    record.planned_value = evi.optimistic_gain;
    record.stationary_policy = evi.policy;
    record.optimistic = true;
    policy_ = std::move(evi.policy);
  }

  int policy_action(int state) override { return policy_.at(state); }
  void learn(const Observation& obs, Rng&) override { history_.record(obs); }

  ConfidenceSetBuilder phi_;
  double delta_;
  double evi_epsilon_;
  EmpiricalStats history_;
  StationaryPolicy policy_;
};

class SmoothedPsrlAgent final : public Agent {
 public:
  SmoothedPsrlAgent(Belief prior, double gamma)
      : Agent(prior.n_states(), prior.n_actions(), EpisodeSignal::fixed_length(1)),
        belief_(std::move(prior)),
        gamma_(gamma) {
    if (!(gamma > 0.0 && gamma < 1.0)) throw ContractViolation("gamma must be in (0,1)");
  }

 private:
  static constexpr double kReplanTol = 1e-9;

  void plan(int state, Rng& rng, EpisodeRecord& record) override {
    TabularMdp sample = belief_.sample(rng);
    if (!smoothed_.has_value()) {
      smoothed_ = sample;
    } else {
      blend(sample);
    }
    double moved = last_planned_.has_value() ? distance(*smoothed_, *last_planned_)
                                             : std::numeric_limits<double>::infinity();
    if (moved > kReplanTol) {
      auto result = optimal_gain(*smoothed_, GainMethod::brute_force);
      policy_ = std::move(result.policy);
      gain_ = std::move(result.gain);
      last_planned_ = *smoothed_;
    }
    record.planned_value = gain_[state];
    record.stationary_policy = policy_;
    record.sampled_mdp = *smoothed_;
  }

  void blend(const TabularMdp& sample) {
    const int n = smoothed_->n_states();
    const int m = smoothed_->n_actions();
    TabularMdp next(n, m);
    std::vector<double> row(n);
    for (int s = 0; s < n; ++s) {
      for (int a = 0; a < m; ++a) {
        auto old_row = smoothed_->transition_row(s, a);
        auto new_row = sample.transition_row(s, a);
        double l1 = 0.0;
        for (int u = 0; u < n; ++u) {
          row[u] = gamma_ * old_row[u] + (1.0 - gamma_) * new_row[u];
          l1 += std::abs(row[u] - old_row[u]);
        }
        // One step moves each row at most (1-gamma) * 2 in L1.
        if (l1 > (1.0 - gamma_) * 2.0 + 1e-9) {
          throw ContractViolation("smoothed row moved more than the convexity bound");
        }
        next.set_transition_row(s, a, row);
        double mean = gamma_ * smoothed_->reward(s, a).mean() +
                      (1.0 - gamma_) * sample.reward(s, a).mean();
        next.set_reward(s, a, RewardModel::make_bernoulli(std::clamp(mean, 0.0, 1.0)));
      }
    }
    smoothed_ = std::move(next);
  }

  static double distance(const TabularMdp& x, const TabularMdp& y) {
    double d = 0.0;
    for (int s = 0; s < x.n_states(); ++s) {
      for (int a = 0; a < x.n_actions(); ++a) {
        auto rx = x.transition_row(s, a);
        auto ry = y.transition_row(s, a);
        for (int u = 0; u < x.n_states(); ++u) d = std::max(d, std::abs(rx[u] - ry[u]));
        d = std::max(d, std::abs(x.reward(s, a).mean() - y.reward(s, a).mean()));
      }
    }
    return d;
  }

  int policy_action(int state) override { return policy_.at(state); }
  void learn(const Observation& obs, Rng& rng) override { belief_.update(obs, rng); }

  Belief belief_;
  double gamma_;
  std::optional<TabularMdp> smoothed_;
  std::optional<TabularMdp> last_planned_;
  StationaryPolicy policy_;
  GainVector gain_;
};

}  // namespace

std::unique_ptr<Agent> psrl_fixed(Belief prior, int H) {
  return std::make_unique<PsrlFixedAgent>(std::move(prior), H);
}

std::unique_ptr<Agent> lazy_psrl(Belief prior, EpisodeSignal signal) {
  return std::make_unique<LazyPsrlAgent>(std::move(prior), signal);
}

std::unique_ptr<Agent> ofu_rl(int n_states, int n_actions, ConfidenceSetBuilder phi,
                              EpisodeSignal signal, double delta, double evi_epsilon) {
  return std::make_unique<OfuAgent>(n_states, n_actions, std::move(phi), signal, delta,
                                    evi_epsilon);
}

std::unique_ptr<Agent> smoothed_psrl(Belief prior, double gamma) {
  return std::make_unique<SmoothedPsrlAgent>(std::move(prior), gamma);
}

namespace {

Trajectory run_agent_impl(Agent& agent, const TabularMdp& mdp, int s1, std::int64_t T,
                          Rng& rng, int reset_period, std::span<const double> initial_dist) {
  if (T < 1) throw ContractViolation("run_agent: T must be >= 1");
  if (s1 < 0 || s1 >= mdp.n_states()) throw ContractViolation("start state out of range");
  Trajectory traj;
  traj.start_state = s1;
  traj.steps.reserve(static_cast<size_t>(T));
  int s = s1;
  for (std::int64_t t = 0; t < T; ++t) {
    const int a = agent.act(s, rng);
    auto [r, next] = step(mdp, s, a, rng);
    agent.observe({s, a, r, next}, rng);
    traj.steps.push_back({s, a, r, next});
    if (reset_period > 0 && (t + 1) % reset_period == 0) {
      s = rng.categorical(initial_dist);
    } else {
      s = next;
    }
  }
  for (const auto& record : agent.episodes()) traj.episode_starts.push_back(record.start_t);
  return traj;
}

}  // namespace

Trajectory run_agent(Agent& agent, const TabularMdp& mdp, int s1, std::int64_t T, Rng& rng) {
  return run_agent_impl(agent, mdp, s1, T, rng, 0, {});
}

Trajectory run_agent(Agent& agent, const FiniteHorizonMdp& fh, int s1, std::int64_t T,
                     Rng& rng) {
  return run_agent_impl(agent, fh.base, s1, T, rng, fh.horizon, fh.initial_dist);
}

}  // namespace regretlab
