#pragma once

#include <cstdint>

namespace regretlab {

struct CounterexampleResult {
  /// Sum over t of the expected (optimal gain - episode sample gain); the
  /// dominant branch holds a too-optimistic sample for a long episode, so
  /// this is negative. absolute_sum is its magnitude.
  double signed_sum = 0.0;
  double absolute_sum = 0.0;
};

/// Exact expectation of the time-summed optimism gap for posterior resampling
/// driven by the reward-threshold signal (threshold 1, cap H_max) on the
/// one-state bandit whose reward is 1 with prior weight p and 0 otherwise.
/// Computed by enumerating (true reward, first-episode sample) and replaying
/// the signal; later episodes sample a collapsed posterior, so the tree is
/// finite. Closed form: p (1-p) (1 - min(H_max, T)).
CounterexampleResult exact_counterexample(int H_max, std::int64_t T, double p);

/// Exact Bayesian expected regret of posterior sampling on heaven-hell with
/// prior weight p on heaven being state 1: the first action commits the run,
/// so enumerating (true heaven, first sample) is exhaustive. Equals
/// 2 p (1-p) T; T/2 at p = 1/2.
double exact_heaven_hell(std::int64_t T, double p);

}  // namespace regretlab
