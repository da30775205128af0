#include "regretlab/lemma1.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <sstream>
#include <vector>

#include "regretlab/errors.hpp"

#include "regretlab/agents.hpp"
#include "regretlab/stats.hpp"
#include "regretlab/util.hpp"

namespace regretlab {

Lemma1Scheme Lemma1Scheme::measurable(int H, int k0) {
  if (H < 1 || k0 < 1) throw ContractViolation("H and k0 must be positive");
  Lemma1Scheme s;
  s.mode = Mode::measurable;
  s.H = H;
  s.k0 = k0;
  return s;
}

Lemma1Scheme Lemma1Scheme::selected(double threshold, int H_max, std::int64_t t_limit) {
  if (H_max < 1 || t_limit < 1) throw ContractViolation("H_max and t_limit must be positive");
  Lemma1Scheme s;
  s.mode = Mode::selected;
  s.threshold = threshold;
  s.H_max = H_max;
  s.t_limit = t_limit;
  return s;
}

namespace {

constexpr int kMinStratumSize = 30;
constexpr double kValueBinTol = 1e-12;

struct Pair {
  double g_true;
  double g_sampled;
};

std::string history_key(const Trajectory& traj, std::int64_t upto) {
  std::ostringstream os;
  for (std::int64_t i = 0; i < upto && i < traj.length(); ++i) {
    const auto& st = traj.steps[static_cast<size_t>(i)];
    os << st.state << ":" << st.action << ":" << format_g17(st.reward) << ":"
       << st.next_state << ";";
  }
  return os.str();
}

int value_bin(std::vector<double>& bins, double v) {
  for (size_t i = 0; i < bins.size(); ++i) {
    if (std::abs(bins[i] - v) <= kValueBinTol) return static_cast<int>(i);
  }
  bins.push_back(v);
  return static_cast<int>(bins.size()) - 1;
}

}  // namespace

Lemma1Result lemma1_check(const FiniteSupportBelief& prior, const Lemma1Scheme& scheme,
                          const std::function<double(const TabularMdp&)>& g,
                          std::int64_t n, std::uint64_t seed) {
  if (n < 1000) throw ContractViolation("lemma1_check needs n >= 1000 replications");
  if (!g) throw ContractViolation("g must be callable");

  std::map<std::string, std::vector<Pair>> strata;
  Rng master(seed);  // per-replicate streams derived so distinct seeds decorrelate fully
  for (std::int64_t rep = 0; rep < n; ++rep) {
    Rng rng(master.next_u64());
    TabularMdp true_mdp = prior.sample(rng);

    if (scheme.mode == Lemma1Scheme::Mode::measurable) {
      const std::int64_t horizon_steps =
          static_cast<std::int64_t>(scheme.k0 - 1) * scheme.H;
      auto agent = lazy_psrl(Belief(prior), EpisodeSignal::fixed_length(scheme.H));
      Trajectory traj = run_agent(*agent, true_mdp, 0, horizon_steps + 1, rng);
      const auto& episodes = agent->episodes();
      if (static_cast<int>(episodes.size()) < scheme.k0) {
        throw ContractViolation("fixed-length run ended before the target episode");
      }
      const auto& sampled = episodes[static_cast<size_t>(scheme.k0 - 1)].sampled_mdp;
      strata[history_key(traj, horizon_steps)].push_back(
          {g(true_mdp), g(sampled.value())});
    } else {
      auto agent = lazy_psrl(Belief(prior),
                             EpisodeSignal::reward_threshold(scheme.threshold, scheme.H_max));
      run_agent(*agent, true_mdp, 0, scheme.t_limit, rng);
      if (agent->episodes().size() >= 2) {
        const auto& sampled = agent->episodes().front().sampled_mdp;
        strata["selected"].push_back({g(true_mdp), g(sampled.value())});
      }
    }
  }

  Lemma1Result result;
  std::vector<double> bins;
  double sum_true = 0.0, sum_sampled = 0.0;
  for (const auto& [key, pairs] : strata) {
    if (static_cast<int>(pairs.size()) < kMinStratumSize) continue;
    ++result.n_strata_used;
    result.n_used += static_cast<std::int64_t>(pairs.size());

    bins.clear();
    std::vector<std::array<double, 2>> counts;
    for (const auto& pair : pairs) {
      sum_true += pair.g_true;
      sum_sampled += pair.g_sampled;
      for (int group = 0; group < 2; ++group) {
        const double v = group == 0 ? pair.g_true : pair.g_sampled;
        const int bin = value_bin(bins, v);
        if (bin >= static_cast<int>(counts.size())) counts.push_back({0.0, 0.0});
        counts[static_cast<size_t>(bin)][static_cast<size_t>(group)] += 1.0;
      }
    }
    // Two-sample homogeneity chi-square; the groups have equal size by
    // design, so each expected cell count is half the bin total.
    int live_bins = 0;
    double stat = 0.0;
    for (const auto& cell : counts) {
      const double bin_total = cell[0] + cell[1];
      if (bin_total <= 0.0) continue;
      ++live_bins;
      const double expected = bin_total / 2.0;
      for (int group = 0; group < 2; ++group) {
        stat += (cell[static_cast<size_t>(group)] - expected) *
                (cell[static_cast<size_t>(group)] - expected) / expected;
      }
    }
    result.statistic += stat;
    result.dof += std::max(0, live_bins - 1);
  }
  if (result.n_strata_used == 0) {
    throw InsufficientData("every history stratum had fewer than " +
                           std::to_string(kMinStratumSize) + " replications");
  }
  result.mean_difference =
      (sum_sampled - sum_true) / static_cast<double>(result.n_used);
  result.p_value = chi_square_tail(result.statistic, result.dof);
  return result;
}

}  // namespace regretlab
