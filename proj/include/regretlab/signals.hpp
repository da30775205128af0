#pragma once

#include <cstdint>

#include "regretlab/util.hpp"

namespace regretlab {

/// Within-episode statistics an episode signal may read. Maintained by the
/// agent harness; evaluated after every step.
struct EpisodeStats {
  std::int64_t elapsed = 0;
  double cumulative_reward = 0.0;
  /// Per-(s,a) visit counts before this episode started.
  Grid<double> visits_at_start;
  /// Per-(s,a) visit counts inside this episode.
  Grid<double> visits_within;

  EpisodeStats(int n_states, int n_actions)
      : visits_at_start(n_states, n_actions, 0.0), visits_within(n_states, n_actions, 0.0) {}
};

struct EpisodeSignal {
  enum class Kind { fixed_length, visit_count_doubling, reward_threshold, never };
  Kind kind = Kind::never;
  int H = 0;
  double threshold = 0.0;
  int H_max = 0;

  static EpisodeSignal fixed_length(int H);
  static EpisodeSignal visit_count_doubling();
  static EpisodeSignal reward_threshold(double threshold, int H_max);
  static EpisodeSignal never();
};

/// True when the episode should end at the step the stats describe:
/// fixed_length fires at elapsed == H; visit_count_doubling when some (s,a)
/// reaches max(1, visits before the episode) within it; reward_threshold when
/// cumulative reward reaches the threshold or elapsed reaches H_max.
bool signal_eval(const EpisodeSignal& signal, const EpisodeStats& stats);

}  // namespace regretlab
