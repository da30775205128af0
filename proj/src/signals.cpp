#include "regretlab/signals.hpp"

#include "regretlab/errors.hpp"

namespace regretlab {

EpisodeSignal EpisodeSignal::fixed_length(int H) {
  if (H < 1) throw ContractViolation("fixed episode length must be positive");
  EpisodeSignal s;
  s.kind = Kind::fixed_length;
  s.H = H;
  return s;
}

EpisodeSignal EpisodeSignal::visit_count_doubling() {
  EpisodeSignal s;
  s.kind = Kind::visit_count_doubling;
  return s;
}

EpisodeSignal EpisodeSignal::reward_threshold(double threshold, int H_max) {
  if (H_max < 1) throw ContractViolation("H_max must be positive");
  EpisodeSignal s;
  s.kind = Kind::reward_threshold;
  s.threshold = threshold;
  s.H_max = H_max;
  return s;
}

EpisodeSignal EpisodeSignal::never() { return EpisodeSignal{}; }

bool signal_eval(const EpisodeSignal& signal, const EpisodeStats& stats) {
  switch (signal.kind) {
    case EpisodeSignal::Kind::fixed_length:
      return stats.elapsed >= signal.H;
    case EpisodeSignal::Kind::visit_count_doubling:
      for (int s = 0; s < stats.visits_within.rows(); ++s) {
        for (int a = 0; a < stats.visits_within.cols(); ++a) {
          double before = stats.visits_at_start(s, a);
          if (stats.visits_within(s, a) >= std::max(1.0, before)) return true;
        }
      }
      return false;
    case EpisodeSignal::Kind::reward_threshold:
      return stats.cumulative_reward >= signal.threshold - 1e-12 ||
             stats.elapsed >= signal.H_max;
    case EpisodeSignal::Kind::never:
      return false;
  }
  throw ContractViolation("unknown signal kind");
}

}  // namespace regretlab
