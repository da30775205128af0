#pragma once

#include <cstdint>
#include <functional>

#include "regretlab/belief.hpp"

namespace regretlab {

/// How replications condition on history before comparing the true MDP with
/// a posterior sample.
///
/// measurable: run fixed-length episodes of length H and condition at the
/// start of episode k0, stratifying replications by the full serialized
/// history up to that point. This is the history-measurable conditioning
/// under which the sampled and true MDPs are exchangeable.
///
/// selected: run the reward-threshold signal (threshold, H_max) for t_limit
/// steps and keep only replications where a second episode begins. That
/// event is decided by realized rewards, i.e. by the true MDP, while the
/// compared sample is the first episode's; the stratum is not measurable at
/// the sampling time, and the comparison quantifies the resulting bias.
struct Lemma1Scheme {
  enum class Mode { measurable, selected };
  Mode mode = Mode::measurable;
  int H = 1;
  int k0 = 1;
  double threshold = 1.0;
  int H_max = 1000;
  std::int64_t t_limit = 1000;

  static Lemma1Scheme measurable(int H, int k0);
  static Lemma1Scheme selected(double threshold, int H_max, std::int64_t t_limit);
};

struct Lemma1Result {
  double statistic = 0.0;
  double p_value = 1.0;
  /// mean g(sample) - mean g(true MDP) over included replications.
  double mean_difference = 0.0;
  std::int64_t n_used = 0;
  int dof = 0;
  std::int64_t n_strata_used = 0;
};

/// Replicates (draw true MDP from the prior, run posterior sampling on it,
/// compare g(true) with g(sampled)) n times and tests distributional equality
/// with a chi-square over the exact finite set of g values, pooled across
/// history strata. Strata with fewer than 30 replications are excluded; if
/// every stratum is excluded the data is insufficient. Requires n >= 1000 and
/// a finite-support prior (exact value bins need finitely many atoms).
Lemma1Result lemma1_check(const FiniteSupportBelief& prior, const Lemma1Scheme& scheme,
                          const std::function<double(const TabularMdp&)>& g,
                          std::int64_t n, std::uint64_t seed);

}  // namespace regretlab
