#include "regretlab/planner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "regretlab/errors.hpp"

namespace regretlab {

namespace {
constexpr double kAperiodicityMix = 0.01;
constexpr double kGainTol = 1e-9;
constexpr double kRviSpanTol = 1e-9;
constexpr int kRviMaxIterations = 2'000'000;
}

QTable::QTable(int horizon, int n_states, int n_actions)
    : horizon_(horizon), n_states_(n_states), n_actions_(n_actions) {
  if (horizon < 1 || n_states < 1 || n_actions < 1) {
    throw ContractViolation("QTable dimensions must be positive");
  }
  q_.assign(static_cast<size_t>(horizon) * n_states * n_actions, 0.0);
}

double& QTable::at(int h, int s, int a) {
  return q_[(static_cast<size_t>(h) * n_states_ + s) * n_actions_ + a];
}

double QTable::at(int h, int s, int a) const {
  return q_[(static_cast<size_t>(h) * n_states_ + s) * n_actions_ + a];
}

double QTable::value(int h, int s) const {
  double best = at(h, s, 0);
  for (int a = 1; a < n_actions_; ++a) best = std::max(best, at(h, s, a));
  return best;
}

int QTable::greedy(int h, int s) const {
  int best = 0;
  for (int a = 1; a < n_actions_; ++a) {
    if (at(h, s, a) > at(h, s, best)) best = a;
  }
  return best;
}

namespace {

// Shared recursion for optimal and fixed-policy backward passes. pick(h, s)
// returns -1 for a max over actions or the pinned action index.
template <typename Pick>
QTable backward_pass(const FiniteHorizonMdp& fh, Pick pick) {
  const auto& mdp = fh.base;
  const int H = fh.horizon;
  const int n = mdp.n_states();
  const int m = mdp.n_actions();
  QTable q(H, n, m);
  std::vector<double> next_v(n, 0.0);
  for (int h = H - 1; h >= 0; --h) {
    for (int s = 0; s < n; ++s) {
      for (int a = 0; a < m; ++a) {
        double acc = mdp.reward(s, a).mean();
        auto row = mdp.transition_row(s, a);
        for (int t = 0; t < n; ++t) acc += row[t] * next_v[t];
        q.at(h, s, a) = acc;
      }
    }
    for (int s = 0; s < n; ++s) {
      int a = pick(h, s);
      next_v[s] = (a < 0) ? q.value(h, s) : q.at(h, s, a);
    }
  }
  return q;
}

}  // namespace

QTable backward_induction_q(const FiniteHorizonMdp& fh) {
  return backward_pass(fh, [](int, int) { return -1; });
}

BackwardInductionResult backward_induction(const FiniteHorizonMdp& fh) {
  QTable q = backward_induction_q(fh);
  TimePolicy policy;
  policy.n_states = fh.base.n_states();
  policy.horizon = fh.horizon;
  policy.action.resize(static_cast<size_t>(fh.horizon) * fh.base.n_states());
  for (int h = 0; h < fh.horizon; ++h) {
    for (int s = 0; s < fh.base.n_states(); ++s) {
      policy.action[static_cast<size_t>(h) * fh.base.n_states() + s] = q.greedy(h, s);
    }
  }
  return {std::move(q), std::move(policy)};
}

QTable policy_value_finite(const FiniteHorizonMdp& fh, const TimePolicy& policy) {
  if (policy.n_states != fh.base.n_states() || policy.horizon != fh.horizon) {
    throw ContractViolation("time policy shape does not match the MDP");
  }
  return backward_pass(fh, [&](int h, int s) { return policy.at(s, h); });
}

GainVector gain(const TabularMdp& mdp, const StationaryPolicy& policy) {
  return analyze_chain(mdp, policy).gain_per_state;
}

namespace {

OptimalGainResult optimal_gain_brute_force(const TabularMdp& mdp, std::int64_t policy_cap) {
  const int n = mdp.n_states();
  const int m = mdp.n_actions();
  double n_policies = std::pow(static_cast<double>(m), static_cast<double>(n));
  if (n_policies > static_cast<double>(policy_cap)) {
    throw ContractViolation("brute-force optimal gain: policy count exceeds cap");
  }
  OptimalGainResult out;
  out.gain.assign(n, -1.0);
  out.policy.action.assign(n, 0);

  auto for_each_policy = [&](auto&& body) {
    StationaryPolicy policy;
    policy.action.assign(n, 0);
    while (true) {
      if (!body(policy)) return;
      int s = 0;
      while (s < n && policy.action[s] == m - 1) policy.action[s++] = 0;
      if (s == n) return;
      ++policy.action[s];
    }
  };

  for_each_policy([&](const StationaryPolicy& policy) {
    GainVector g = gain(mdp, policy);
    for (int s = 0; s < n; ++s) out.gain[s] = std::max(out.gain[s], g[s]);
    return true;
  });
  // Second pass: the first policy optimal at every state simultaneously, or
  // failing that the first one optimal at state 0.
  bool found_simultaneous = false;
  StationaryPolicy state0_best;
  bool found_state0 = false;
  for_each_policy([&](const StationaryPolicy& policy) {
    GainVector g = gain(mdp, policy);
    bool all = true;
    for (int s = 0; s < n; ++s) all = all && g[s] >= out.gain[s] - kGainTol;
    if (all) {
      found_simultaneous = true;
      out.policy = policy;
      return false;
    }
    if (!found_state0 && g[0] >= out.gain[0] - kGainTol) {
      found_state0 = true;
      state0_best = policy;
    }
    return true;
  });
  if (!found_simultaneous) out.policy = state0_best;
  out.simultaneously_optimal = found_simultaneous;
  return out;
}

OptimalGainResult optimal_gain_relative_vi(const TabularMdp& mdp) {
  auto report = classify(mdp);
  if (!report.weakly_communicating) {
    throw ContractViolation(
        "relative value iteration requires a weakly communicating MDP; "
        "classifier says this one is not (" + report.witness + ")");
  }
  const int n = mdp.n_states();
  const int m = mdp.n_actions();
  std::vector<double> v(n, 0.0), w(n, 0.0), d(n, 0.0);
  double gain_estimate = 0.0;
  bool converged = false;
  for (int it = 0; it < kRviMaxIterations; ++it) {
    for (int s = 0; s < n; ++s) {
      // The relative values in v can be arbitrarily negative after
      // normalization, so the running max must start at -infinity.
      double best = -std::numeric_limits<double>::infinity();
      for (int a = 0; a < m; ++a) {
        double acc = mdp.reward(s, a).mean();
        auto row = mdp.transition_row(s, a);
        double dot = 0.0;
        for (int t = 0; t < n; ++t) dot += row[t] * v[t];
        acc += kAperiodicityMix * v[s] + (1.0 - kAperiodicityMix) * dot;
        if (acc > best) best = acc;
      }
      w[s] = best;
    }
    double lo = w[0] - v[0], hi = lo;
    for (int s = 0; s < n; ++s) {
      d[s] = w[s] - v[s];
      lo = std::min(lo, d[s]);
      hi = std::max(hi, d[s]);
    }
    gain_estimate = 0.5 * (lo + hi);
    double ref = w[0];
    for (int s = 0; s < n; ++s) v[s] = w[s] - ref;
    if (hi - lo < kRviSpanTol) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    throw NumericalFailure("relative value iteration did not converge");
  }
  OptimalGainResult out;
  out.gain.assign(n, gain_estimate);
  out.policy.action.assign(n, 0);
  for (int s = 0; s < n; ++s) {
    int best_a = 0;
    double best = -std::numeric_limits<double>::infinity();
    for (int a = 0; a < m; ++a) {
      double acc = mdp.reward(s, a).mean();
      auto row = mdp.transition_row(s, a);
      double dot = 0.0;
      for (int t = 0; t < n; ++t) dot += row[t] * v[t];
      acc += kAperiodicityMix * v[s] + (1.0 - kAperiodicityMix) * dot;
      if (acc > best + kGainTol) {
        best = acc;
        best_a = a;
      } else if (acc > best) {
        best = std::max(best, acc);
      }
    }
    out.policy.action[s] = best_a;
  }
  out.simultaneously_optimal = true;
  return out;
}

}  // namespace

OptimalGainResult optimal_gain(const TabularMdp& mdp, GainMethod method,
                               std::int64_t policy_cap) {
  switch (method) {
    case GainMethod::brute_force:
      return optimal_gain_brute_force(mdp, policy_cap);
    case GainMethod::relative_vi:
      return optimal_gain_relative_vi(mdp);
  }
  throw ContractViolation("unknown gain method");
}

EmpiricalStats::EmpiricalStats(int n_states, int n_actions)
    : n_states_(n_states),
      n_actions_(n_actions),
      visit_(n_states, n_actions, 0.0),
      reward_sum_(n_states, n_actions, 0.0),
      next_count_(static_cast<size_t>(n_states) * n_actions * n_states, 0.0) {
  if (n_states < 1 || n_actions < 1) {
    throw ContractViolation("EmpiricalStats dimensions must be positive");
  }
}

void EmpiricalStats::record(const Observation& obs) {
  if (obs.state < 0 || obs.state >= n_states_ || obs.action < 0 ||
      obs.action >= n_actions_ || obs.next_state < 0 || obs.next_state >= n_states_) {
    throw ContractViolation("observation indices out of range");
  }
  visit_(obs.state, obs.action) += 1.0;
  reward_sum_(obs.state, obs.action) += obs.reward;
  next_count_[(static_cast<size_t>(obs.state) * n_actions_ + obs.action) * n_states_ +
              obs.next_state] += 1.0;
  ++total_steps_;
}

double EmpiricalStats::transition_count(int s, int a, int t) const {
  return next_count_[(static_cast<size_t>(s) * n_actions_ + a) * n_states_ + t];
}

ConfidenceSet default_confidence_set(const EmpiricalStats& stats, std::int64_t t,
                                     double delta) {
  if (delta <= 0.0 || delta >= 1.0) throw ContractViolation("delta must be in (0,1)");
  const int n = stats.n_states();
  const int m = stats.n_actions();
  const double tt = static_cast<double>(std::max<std::int64_t>(t, 1));
  ConfidenceSet set{TabularMdp(n, m), Grid<double>(n, m, 0.0), Grid<double>(n, m, 0.0),
                    Grid<double>(n, m, 0.0)};
  std::vector<double> row(n);
  for (int s = 0; s < n; ++s) {
    for (int a = 0; a < m; ++a) {
      double count = stats.visits(s, a);
      set.counts(s, a) = count;
      if (count > 0.0) {
        for (int u = 0; u < n; ++u) row[u] = stats.transition_count(s, a, u) / count;
        set.center.set_reward(
            s, a, RewardModel::make_bernoulli(
                      std::clamp(stats.reward_sum(s, a) / count, 0.0, 1.0)));
      } else {
        std::fill(row.begin(), row.end(), 1.0 / n);
        set.center.set_reward(s, a, RewardModel::make_bernoulli(0.5));
      }
      set.center.set_transition_row(s, a, row);
      double n_eff = std::max(1.0, count);
      set.transition_radius(s, a) =
          std::sqrt(14.0 * n * std::log(2.0 * m * tt / delta) / n_eff);
      set.reward_radius(s, a) =
          std::sqrt(7.0 * std::log(2.0 * n * m * tt / delta) / (2.0 * n_eff));
    }
  }
  return set;
}

namespace {

// Most optimistic row inside the L1 ball around `center` for the value
// ranking `order` (descending value): push mass onto the best state, then
// strip mass from the worst states until the row is a distribution again.
void optimistic_row(std::span<const double> center, double radius,
                    const std::vector<int>& order, std::vector<double>& out) {
  const int n = static_cast<int>(center.size());
  out.assign(center.begin(), center.end());
  int best = order.front();
  out[best] = std::min(1.0, center[best] + radius / 2.0);
  double excess = std::accumulate(out.begin(), out.end(), 0.0) - 1.0;
  for (int i = n - 1; i > 0 && excess > 0.0; --i) {
    int s = order[i];
    double cut = std::min(out[s], excess);
    out[s] -= cut;
    excess -= cut;
  }
}

}  // namespace

EviResult extended_value_iteration(const ConfidenceSet& set, double epsilon,
                                   int max_iterations) {
  if (epsilon <= 0.0) throw ContractViolation("epsilon must be positive");
  const auto& center = set.center;
  const int n = center.n_states();
  const int m = center.n_actions();

  std::vector<double> reward_upper(static_cast<size_t>(n) * m);
  for (int s = 0; s < n; ++s) {
    for (int a = 0; a < m; ++a) {
      reward_upper[static_cast<size_t>(s) * m + a] =
          std::min(1.0, center.reward(s, a).mean() + set.reward_radius(s, a));
    }
  }

  std::vector<double> v(n, 0.0), w(n, 0.0), opt_row(n);
  std::vector<int> order(n);
  EviResult result;
  result.policy.action.assign(n, 0);
  for (int it = 1; it <= max_iterations; ++it) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int x, int y) { return v[x] > v[y]; });
    for (int s = 0; s < n; ++s) {
      double best = -std::numeric_limits<double>::infinity();
      int best_a = 0;
      for (int a = 0; a < m; ++a) {
        optimistic_row(center.transition_row(s, a), set.transition_radius(s, a), order,
                       opt_row);
        double dot = 0.0;
        for (int t = 0; t < n; ++t) dot += opt_row[t] * v[t];
        double acc = reward_upper[static_cast<size_t>(s) * m + a] +
                     kAperiodicityMix * v[s] + (1.0 - kAperiodicityMix) * dot;
        if (acc > best) {
          best = acc;
          best_a = a;
        }
      }
      w[s] = best;
      result.policy.action[s] = best_a;
    }
    double lo = w[0] - v[0], hi = lo;
    for (int s = 0; s < n; ++s) {
      double d = w[s] - v[s];
      lo = std::min(lo, d);
      hi = std::max(hi, d);
    }
    result.optimistic_gain = 0.5 * (lo + hi);
    result.iterations = it;
    double ref = w[0];
    for (int s = 0; s < n; ++s) v[s] = w[s] - ref;
    if (hi - lo < epsilon) return result;
  }
  throw NumericalFailure(
      "extended value iteration did not converge; the aperiodicity transform "
      "is already applied, consider a larger epsilon");
}

}  // namespace regretlab
