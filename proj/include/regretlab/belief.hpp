#pragma once

#include <variant>
#include <vector>

#include "regretlab/mdp.hpp"
#include "regretlab/rng.hpp"
#include "regretlab/util.hpp"

namespace regretlab {

/// Explicit weighted list of MDPs sharing (S, A).
class FiniteSupportBelief {
 public:
  FiniteSupportBelief(std::vector<TabularMdp> atoms, std::vector<double> weights);

  /// Reweight by the likelihood of (reward, next_state) under each atom and
  /// renormalize. Throws InconsistentObservation when every atom assigns the
  /// observation zero likelihood. PointMass likelihoods match within 1e-9.
  void update(const Observation& obs);

  TabularMdp sample(Rng& rng) const;

  /// Weight-averaged MDP. A belief concentrated on one atom (weight within
  /// 1e-12 of 1) returns that atom unchanged; otherwise averaged reward means
  /// come back as Bernoulli.
  TabularMdp mean() const;

  const std::vector<TabularMdp>& atoms() const { return atoms_; }
  const std::vector<double>& weights() const { return weights_; }
  int n_states() const { return atoms_.front().n_states(); }
  int n_actions() const { return atoms_.front().n_actions(); }

 private:
  std::vector<TabularMdp> atoms_;
  std::vector<double> weights_;
};

/// Independent Dirichlet transition rows and Beta reward means per (s, a).
/// Default prior: Dirichlet all-ones, Beta(1, 1).
class ConjugateBelief {
 public:
  ConjugateBelief(int n_states, int n_actions);

  /// dirichlet[s'] += 1 for the observed successor; (alpha, beta) += (r, 1-r)
  /// for r in {0,1}. A non-binary reward is rounded to 1 with probability r
  /// before the update, which keeps the update unbiased and conjugate.
  void update(const Observation& obs, Rng& rng);

  TabularMdp sample(Rng& rng) const;
  TabularMdp mean() const;

  std::span<const double> dirichlet(int s, int a) const;
  double beta_alpha(int s, int a) const { return alpha_(s, a); }
  double beta_beta(int s, int a) const { return beta_(s, a); }
  int n_states() const { return n_states_; }
  int n_actions() const { return n_actions_; }
  void set_dirichlet(int s, int a, std::span<const double> counts);
  void set_beta(int s, int a, double alpha, double beta);

 private:
  int n_states_, n_actions_;
  std::vector<double> dirichlet_;
  Grid<double> alpha_, beta_;
};

/// Value-semantic union of the two belief families, so agents can hold either.
class Belief {
 public:
  explicit Belief(FiniteSupportBelief b) : impl_(std::move(b)) {}
  explicit Belief(ConjugateBelief b) : impl_(std::move(b)) {}

  void update(const Observation& obs, Rng& rng);
  TabularMdp sample(Rng& rng) const;
  TabularMdp mean() const;
  int n_states() const;
  int n_actions() const;

  const FiniteSupportBelief* as_finite_support() const {
    return std::get_if<FiniteSupportBelief>(&impl_);
  }
  const ConjugateBelief* as_conjugate() const {
    return std::get_if<ConjugateBelief>(&impl_);
  }

 private:
  std::variant<FiniteSupportBelief, ConjugateBelief> impl_;
};

Belief posterior_update(Belief belief, const Observation& obs, Rng& rng);
TabularMdp sample_mdp(const Belief& belief, Rng& rng);
TabularMdp posterior_mean(const Belief& belief);

/// Two-point priors for the bandit and heaven-hell counterexample setups.
/// p is the prior weight of the R=1 atom (bandit) or the heaven=1 atom.
FiniteSupportBelief two_point_bandit_prior(double p);
FiniteSupportBelief heaven_hell_prior(double p);

}  // namespace regretlab
