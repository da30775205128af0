#include "regretlab/belief.hpp"

#include <algorithm>
#include <cmath>

#include "regretlab/envs.hpp"
#include "regretlab/errors.hpp"

namespace regretlab {

namespace {
constexpr double kPointMatchTol = 1e-9;
constexpr double kWeightSumTol = 1e-12;

double reward_likelihood(const RewardModel& model, double r) {
  if (model.kind == RewardModel::Kind::point) {
    return std::abs(r - model.value) <= kPointMatchTol ? 1.0 : 0.0;
  }
  if (std::abs(r - 1.0) <= kPointMatchTol) return model.value;
  if (std::abs(r) <= kPointMatchTol) return 1.0 - model.value;
  return 0.0;
}
}  // namespace

FiniteSupportBelief::FiniteSupportBelief(std::vector<TabularMdp> atoms,
                                         std::vector<double> weights)
    : atoms_(std::move(atoms)), weights_(std::move(weights)) {
  if (atoms_.empty() || atoms_.size() != weights_.size()) {
    throw ContractViolation("belief needs matching nonempty atom and weight lists");
  }
  double total = 0.0;
  for (double w : weights_) {
    if (w < 0.0) throw ContractViolation("belief weights must be nonnegative");
    total += w;
  }
  if (std::abs(total - 1.0) > kWeightSumTol) {
    throw ContractViolation("belief weights must sum to 1");
  }
  for (const auto& atom : atoms_) {
    if (atom.n_states() != atoms_.front().n_states() ||
        atom.n_actions() != atoms_.front().n_actions()) {
      throw ContractViolation("belief atoms must share state and action counts");
    }
  }
}

void FiniteSupportBelief::update(const Observation& obs) {
  double total = 0.0;
  for (size_t i = 0; i < atoms_.size(); ++i) {
    const auto& atom = atoms_[i];
    if (obs.state < 0 || obs.state >= atom.n_states() || obs.action < 0 ||
        obs.action >= atom.n_actions() || obs.next_state < 0 ||
        obs.next_state >= atom.n_states()) {
      throw ContractViolation("observation indices out of range");
    }
    double lik = atom.transition_row(obs.state, obs.action)[obs.next_state] *
                 reward_likelihood(atom.reward(obs.state, obs.action), obs.reward);
    weights_[i] *= lik;
    total += weights_[i];
  }
  if (total <= 0.0) {
    throw InconsistentObservation("observation has zero likelihood under every atom");
  }
  for (double& w : weights_) w /= total;
}

TabularMdp FiniteSupportBelief::sample(Rng& rng) const {
  return atoms_[rng.categorical(weights_)];
}

TabularMdp FiniteSupportBelief::mean() const {
  for (size_t i = 0; i < atoms_.size(); ++i) {
    if (weights_[i] >= 1.0 - kWeightSumTol) return atoms_[i];
  }
  const int n = atoms_.front().n_states();
  const int m = atoms_.front().n_actions();
  TabularMdp out(n, m);
  std::vector<double> row(n);
  for (int s = 0; s < n; ++s) {
    for (int a = 0; a < m; ++a) {
      std::fill(row.begin(), row.end(), 0.0);
      double mean_r = 0.0;
      for (size_t i = 0; i < atoms_.size(); ++i) {
        auto atom_row = atoms_[i].transition_row(s, a);
        for (int t = 0; t < n; ++t) row[t] += weights_[i] * atom_row[t];
        mean_r += weights_[i] * atoms_[i].reward(s, a).mean();
      }
      double total = 0.0;
      for (double v : row) total += v;
      for (double& v : row) v /= total;
      out.set_transition_row(s, a, row);
      out.set_reward(s, a, RewardModel::make_bernoulli(std::clamp(mean_r, 0.0, 1.0)));
    }
  }
  return out;
}

ConjugateBelief::ConjugateBelief(int n_states, int n_actions)
    : n_states_(n_states),
      n_actions_(n_actions),
      dirichlet_(static_cast<size_t>(n_states) * n_actions * n_states, 1.0),
      alpha_(n_states, n_actions, 1.0),
      beta_(n_states, n_actions, 1.0) {
  if (n_states < 1 || n_actions < 1) {
    throw ContractViolation("belief dimensions must be positive");
  }
}

void ConjugateBelief::update(const Observation& obs, Rng& rng) {
  if (obs.state < 0 || obs.state >= n_states_ || obs.action < 0 ||
      obs.action >= n_actions_ || obs.next_state < 0 || obs.next_state >= n_states_) {
    throw ContractViolation("observation indices out of range");
  }
  if (obs.reward < 0.0 || obs.reward > 1.0) {
    throw ContractViolation("reward outside [0,1]");
  }
  dirichlet_[(static_cast<size_t>(obs.state) * n_actions_ + obs.action) * n_states_ +
             obs.next_state] += 1.0;
  double r = obs.reward;
  if (r > kPointMatchTol && r < 1.0 - kPointMatchTol) {
    r = rng.bernoulli(r) ? 1.0 : 0.0;
  } else {
    r = (r > 0.5) ? 1.0 : 0.0;
  }
  alpha_(obs.state, obs.action) += r;
  beta_(obs.state, obs.action) += 1.0 - r;
}

TabularMdp ConjugateBelief::sample(Rng& rng) const {
  TabularMdp out(n_states_, n_actions_);
  std::vector<double> row(n_states_);
  for (int s = 0; s < n_states_; ++s) {
    for (int a = 0; a < n_actions_; ++a) {
      rng.dirichlet(dirichlet(s, a), row);
      out.set_transition_row(s, a, row);
      out.set_reward(s, a, RewardModel::make_bernoulli(rng.beta(alpha_(s, a), beta_(s, a))));
    }
  }
  return out;
}

TabularMdp ConjugateBelief::mean() const {
  TabularMdp out(n_states_, n_actions_);
  std::vector<double> row(n_states_);
  for (int s = 0; s < n_states_; ++s) {
    for (int a = 0; a < n_actions_; ++a) {
      auto counts = dirichlet(s, a);
      double total = 0.0;
      for (double c : counts) total += c;
      for (int t = 0; t < n_states_; ++t) row[t] = counts[t] / total;
      out.set_transition_row(s, a, row);
      out.set_reward(s, a, RewardModel::make_bernoulli(
                               alpha_(s, a) / (alpha_(s, a) + beta_(s, a))));
    }
  }
  return out;
}

std::span<const double> ConjugateBelief::dirichlet(int s, int a) const {
  return {dirichlet_.data() + (static_cast<size_t>(s) * n_actions_ + a) * n_states_,
          static_cast<size_t>(n_states_)};
}

void ConjugateBelief::set_dirichlet(int s, int a, std::span<const double> counts) {
  if (static_cast<int>(counts.size()) != n_states_) {
    throw ContractViolation("dirichlet count vector has wrong length");
  }
  for (double c : counts) {
    if (!(c > 0.0)) throw ContractViolation("dirichlet counts must be positive");
  }
  std::copy(counts.begin(), counts.end(),
            dirichlet_.begin() +
                static_cast<long>((static_cast<size_t>(s) * n_actions_ + a) * n_states_));
}

void ConjugateBelief::set_beta(int s, int a, double alpha, double beta) {
  if (!(alpha > 0.0) || !(beta > 0.0)) {
    throw ContractViolation("beta parameters must be positive");
  }
  alpha_(s, a) = alpha;
  beta_(s, a) = beta;
}

void Belief::update(const Observation& obs, Rng& rng) {
  if (auto* fs = std::get_if<FiniteSupportBelief>(&impl_)) {
    fs->update(obs);
  } else {
    std::get<ConjugateBelief>(impl_).update(obs, rng);
  }
}

TabularMdp Belief::sample(Rng& rng) const {
  if (auto* fs = std::get_if<FiniteSupportBelief>(&impl_)) return fs->sample(rng);
  return std::get<ConjugateBelief>(impl_).sample(rng);
}

TabularMdp Belief::mean() const {
  if (auto* fs = std::get_if<FiniteSupportBelief>(&impl_)) return fs->mean();
  return std::get<ConjugateBelief>(impl_).mean();
}

int Belief::n_states() const {
  if (auto* fs = std::get_if<FiniteSupportBelief>(&impl_)) return fs->n_states();
  return std::get<ConjugateBelief>(impl_).n_states();
}

int Belief::n_actions() const {
  if (auto* fs = std::get_if<FiniteSupportBelief>(&impl_)) return fs->n_actions();
  return std::get<ConjugateBelief>(impl_).n_actions();
}

Belief posterior_update(Belief belief, const Observation& obs, Rng& rng) {
  belief.update(obs, rng);
  return belief;
}

TabularMdp sample_mdp(const Belief& belief, Rng& rng) { return belief.sample(rng); }

TabularMdp posterior_mean(const Belief& belief) { return belief.mean(); }

FiniteSupportBelief two_point_bandit_prior(double p) {
  if (p < 0.0 || p > 1.0) throw ContractViolation("prior weight must be in [0,1]");
  std::vector<TabularMdp> atoms;
  atoms.push_back(build_named_env("two_point_bandit", {{"R", 0.0}}));
  atoms.push_back(build_named_env("two_point_bandit", {{"R", 1.0}}));
  return FiniteSupportBelief(std::move(atoms), {1.0 - p, p});
}

FiniteSupportBelief heaven_hell_prior(double p) {
  if (p < 0.0 || p > 1.0) throw ContractViolation("prior weight must be in [0,1]");
  std::vector<TabularMdp> atoms;
  atoms.push_back(build_named_env("heaven_hell", {{"heaven", 1.0}}));
  atoms.push_back(build_named_env("heaven_hell", {{"heaven", 2.0}}));
  return FiniteSupportBelief(std::move(atoms), {p, 1.0 - p});
}

}  // namespace regretlab
