#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stdexcept>

#include "regretlab/classify.hpp"
#include "regretlab/envs.hpp"
#include "regretlab/errors.hpp"
#include "test_support.hpp"

using namespace regretlab;
using namespace testsupport;

TEST_CASE("heaven-hell environment has the documented structure") {
  const TabularMdp mdp = build_named_env("heaven_hell");
  REQUIRE(mdp.n_states() == 3);
  REQUIRE(mdp.n_actions() == 2);
  // Action a at state 0 moves to state a+1 deterministically.
  CHECK(mdp.transition(0, 0, 1) == 1.0);
  CHECK(mdp.transition(0, 1, 2) == 1.0);
  // Both destinations are absorbing.
  for (int a = 0; a < 2; ++a) {
    CHECK(mdp.transition(1, a, 1) == 1.0);
    CHECK(mdp.transition(2, a, 2) == 1.0);
  }
  // Heaven (state 1 by default) pays 1, hell pays 0, and stepping toward
  // heaven already pays on arrival.
  CHECK(mdp.reward_mean(0, 0) == 1.0);
  CHECK(mdp.reward_mean(0, 1) == 0.0);
  CHECK(mdp.reward_mean(1, 0) == 1.0);
  CHECK(mdp.reward_mean(2, 0) == 0.0);

  const TabularMdp flipped = build_named_env("heaven_hell", {{"heaven", 2.0}});
  CHECK(flipped.reward_mean(0, 1) == 1.0);
  CHECK(flipped.reward_mean(0, 0) == 0.0);
  CHECK(flipped.reward_mean(2, 0) == 1.0);
}

TEST_CASE("chain environment follows the swim-upstream dynamics") {
  const TabularMdp mdp = build_named_env("chain", {{"n", 4.0}});
  REQUIRE(mdp.n_states() == 4);
  REQUIRE(mdp.n_actions() == 2);
  // Interior fight-the-current row: 0.3 forward, 0.6 stay, 0.1 back.
  CHECK(mdp.transition(1, 1, 2) == doctest::Approx(0.3));
  CHECK(mdp.transition(1, 1, 1) == doctest::Approx(0.6));
  CHECK(mdp.transition(1, 1, 0) == doctest::Approx(0.1));
  // Ends fold the out-of-range mass onto the boundary state.
  CHECK(mdp.transition(0, 1, 0) == doctest::Approx(0.7));
  CHECK(mdp.transition(3, 1, 3) == doctest::Approx(0.9));
  // Drifting down is deterministic.
  CHECK(mdp.transition(2, 0, 1) == 1.0);
  CHECK(mdp.transition(0, 0, 0) == 1.0);
  CHECK(mdp.reward_mean(0, 0) == doctest::Approx(0.1));
  CHECK(mdp.reward_mean(3, 1) == 1.0);
  CHECK(mdp.reward_mean(1, 1) == 0.0);
}

TEST_CASE("named environments validate their parameters") {
  CHECK_THROWS_AS(build_named_env("no_such_env"), std::invalid_argument);
  CHECK_THROWS_AS(build_named_env("chain", {{"n", 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(build_named_env("chain", {{"n", 2.5}}), std::invalid_argument);
  CHECK_THROWS_AS(build_named_env("chain", {{"bogus", 3.0}}), std::invalid_argument);
  CHECK_THROWS_AS(build_named_env("heaven_hell", {{"heaven", 3.0}}), std::invalid_argument);
  CHECK_THROWS_AS(build_named_env("two_point_bandit", {{"R", 0.5}}), std::invalid_argument);
}

TEST_CASE("random environment is reproducible per seed and row-stochastic") {
  const TabularMdp a =
      build_named_env("random", {{"n_states", 4.0}, {"n_actions", 3.0}, {"seed", 9.0}});
  const TabularMdp b =
      build_named_env("random", {{"n_states", 4.0}, {"n_actions", 3.0}, {"seed", 9.0}});
  const TabularMdp c =
      build_named_env("random", {{"n_states", 4.0}, {"n_actions", 3.0}, {"seed", 10.0}});
  CHECK(a == b);
  CHECK(!(a == c));
  for (int s = 0; s < 4; ++s) {
    for (int act = 0; act < 3; ++act) {
      double total = 0.0;
      for (int t = 0; t < 4; ++t) total += a.transition(s, act, t);
      CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("classifier ground truth on the built-in environments") {
  const ConnectednessReport hh = classify(build_named_env("heaven_hell"));
  CHECK(!hh.ergodic);
  CHECK(!hh.unichain);
  CHECK(!hh.communicating);
  CHECK(!hh.weakly_communicating);
  CHECK(hh.method == "exhaustive");
  CHECK(!hh.witness.empty());

  const ConnectednessReport chain3 = classify(build_named_env("chain", {{"n", 3.0}}));
  CHECK(chain3.communicating);
  CHECK(chain3.weakly_communicating);
  CHECK(chain3.unichain);
  // Always-drift-down pins the chain at state 0, so it is not ergodic.
  CHECK(!chain3.ergodic);

  const ConnectednessReport bandit = classify(build_named_env("two_point_bandit"));
  CHECK(bandit.ergodic);
  CHECK(bandit.unichain);
  CHECK(bandit.communicating);
  CHECK(bandit.weakly_communicating);
  CHECK(bandit.witness.empty());
}

TEST_CASE("two-state deterministic swap is ergodic") {
  TabularMdp mdp(2, 2);
  const std::vector<double> to1 = {0.0, 1.0};
  const std::vector<double> to0 = {1.0, 0.0};
  for (int a = 0; a < 2; ++a) {
    mdp.set_transition_row(0, a, to1);
    mdp.set_transition_row(1, a, to0);
    mdp.set_reward(0, a, RewardModel::make_point(0.0));
    mdp.set_reward(1, a, RewardModel::make_point(1.0));
  }
  const ConnectednessReport report = classify(mdp);
  CHECK(report.ergodic);
  CHECK(report.unichain);
  CHECK(report.communicating);
}

TEST_CASE("weakly communicating but not communicating example") {
  // State 0 can only leave (transient); states 1 and 2 form one recurrent
  // communicating set under both actions.
  TabularMdp mdp(3, 2);
  std::vector<double> row(3, 0.0);
  for (int a = 0; a < 2; ++a) {
    row = {0.0, 0.5, 0.5};
    mdp.set_transition_row(0, a, row);
    row = {0.0, 0.0, 1.0};
    mdp.set_transition_row(1, a, row);
    row = {0.0, 1.0, 0.0};
    mdp.set_transition_row(2, a, row);
    for (int s = 0; s < 3; ++s) mdp.set_reward(s, a, RewardModel::make_point(0.0));
  }
  const ConnectednessReport report = classify(mdp);
  CHECK(!report.communicating);
  CHECK(report.weakly_communicating);
  CHECK(report.unichain);
  CHECK(!report.ergodic);  // state 0 is transient, so no policy is irreducible
}

TEST_CASE("connectedness hierarchy holds on random models") {
  Rng rng(404);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 1 + static_cast<int>(rng.next_u64() % 4);
    const int m = 1 + static_cast<int>(rng.next_u64() % 3);
    TabularMdp mdp(n, m);
    std::vector<double> row(static_cast<std::size_t>(n), 0.0);
    for (int s = 0; s < n; ++s) {
      for (int a = 0; a < m; ++a) {
        // Sparse supports make reducible chains common.
        std::fill(row.begin(), row.end(), 0.0);
        const int support = 1 + static_cast<int>(rng.next_u64() % 2);
        double remaining = 1.0;
        for (int i = 0; i < support; ++i) {
          const int t = static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(n));
          const double w = (i + 1 == support) ? remaining : remaining * rng.uniform01();
          row[static_cast<std::size_t>(t)] += w;
          remaining -= w;
        }
        mdp.set_transition_row(s, a, row);
        mdp.set_reward(s, a, RewardModel::make_bernoulli(rng.uniform01()));
      }
    }
    const ConnectednessReport report = classify(mdp);
    if (report.ergodic) CHECK(report.unichain);
    if (report.communicating) CHECK(report.weakly_communicating);
    if (report.ergodic) CHECK(report.communicating);
    if (!report.unichain || !report.communicating) CHECK(!report.witness.empty());
  }
}

TEST_CASE("capped classification agrees with exhaustive on small models") {
  Rng rng(505);
  for (int trial = 0; trial < 30; ++trial) {
    const TabularMdp mdp = random_mdp(3, 2, rng, true);
    const ConnectednessReport full = classify(mdp);
    // Cap below 2^3 = 8 forces sampling.
    const ConnectednessReport capped = classify(mdp, 5);
    CHECK(capped.method == "capped");
    CHECK(full.method == "exhaustive");
    // Graph-exact flags never depend on the cap.
    CHECK(full.communicating == capped.communicating);
    CHECK(full.weakly_communicating == capped.weakly_communicating);
    // Sampling can only miss violations, never invent them.
    if (!capped.ergodic) CHECK(!full.ergodic);
    if (!capped.unichain) CHECK(!full.unichain);
  }
}

TEST_CASE("classify rejects a non-positive policy cap") {
  CHECK_THROWS_AS(classify(build_named_env("two_point_bandit"), 0), ContractViolation);
}
