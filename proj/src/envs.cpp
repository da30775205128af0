#include "regretlab/envs.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "regretlab/rng.hpp"

namespace regretlab {

namespace {

double get_param(const std::map<std::string, double>& params, const std::string& key,
                 double fallback) {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

int get_int_param(const std::map<std::string, double>& params, const std::string& key,
                  int fallback) {
  double v = get_param(params, key, fallback);
  double rounded = std::round(v);
  if (std::abs(v - rounded) > 1e-9) {
    throw std::invalid_argument("parameter '" + key + "' must be an integer");
  }
  return static_cast<int>(rounded);
}

void reject_unknown(const std::map<std::string, double>& params,
                    std::initializer_list<const char*> known) {
  for (const auto& [key, value] : params) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) throw std::invalid_argument("unknown environment parameter '" + key + "'");
  }
}

TabularMdp build_heaven_hell(const std::map<std::string, double>& params) {
  reject_unknown(params, {"heaven"});
  int heaven = get_int_param(params, "heaven", 1);
  if (heaven != 1 && heaven != 2) {
    throw std::invalid_argument("heaven must be state 1 or 2");
  }
  int hell = (heaven == 1) ? 2 : 1;
  TabularMdp mdp(3, 2);
  std::vector<double> row(3, 0.0);
  for (int a = 0; a < 2; ++a) {
    row.assign(3, 0.0);
    row[a + 1] = 1.0;
    mdp.set_transition_row(0, a, row);
    // states 1 and 2 keep their default self-loops
    mdp.set_reward(0, a, RewardModel::make_point(a + 1 == heaven ? 1.0 : 0.0));
  }
  for (int a = 0; a < 2; ++a) {
    mdp.set_reward(heaven, a, RewardModel::make_point(1.0));
    mdp.set_reward(hell, a, RewardModel::make_point(0.0));
  }
  return mdp;
}

TabularMdp build_two_point_bandit(const std::map<std::string, double>& params) {
  reject_unknown(params, {"R"});
  int r = get_int_param(params, "R", 1);
  if (r != 0 && r != 1) throw std::invalid_argument("R must be 0 or 1");
  TabularMdp mdp(1, 1);
  mdp.set_reward(0, 0, RewardModel::make_point(static_cast<double>(r)));
  return mdp;
}

TabularMdp build_chain(const std::map<std::string, double>& params) {
  reject_unknown(params, {"n"});
  int n = get_int_param(params, "n", 3);
  if (n < 2) throw std::invalid_argument("chain needs n >= 2");
  TabularMdp mdp(n, 2);
  std::vector<double> row(n);
  for (int s = 0; s < n; ++s) {
    // action 0: drift down
    row.assign(n, 0.0);
    row[std::max(0, s - 1)] = 1.0;
    mdp.set_transition_row(s, 0, row);
    // action 1: swim up
    row.assign(n, 0.0);
    row[std::min(n - 1, s + 1)] += 0.3;
    row[s] += 0.6;
    row[std::max(0, s - 1)] += 0.1;
    mdp.set_transition_row(s, 1, row);
    mdp.set_reward(s, 0, RewardModel::make_point(0.0));
    mdp.set_reward(s, 1, RewardModel::make_point(0.0));
  }
  mdp.set_reward(0, 0, RewardModel::make_point(0.1));
  mdp.set_reward(n - 1, 1, RewardModel::make_point(1.0));
  return mdp;
}

TabularMdp build_random(const std::map<std::string, double>& params) {
  reject_unknown(params, {"n_states", "n_actions", "seed"});
  int n = get_int_param(params, "n_states", 3);
  int m = get_int_param(params, "n_actions", 2);
  int seed = get_int_param(params, "seed", 0);
  if (n < 1 || m < 1) throw std::invalid_argument("n_states and n_actions must be positive");
  TabularMdp mdp(n, m);
  Rng rng(static_cast<std::uint64_t>(seed));
  std::vector<double> alpha(n, 1.0);
  std::vector<double> row(n);
  for (int s = 0; s < n; ++s) {
    for (int a = 0; a < m; ++a) {
      rng.dirichlet(alpha, row);
      mdp.set_transition_row(s, a, row);
      mdp.set_reward(s, a, RewardModel::make_bernoulli(rng.uniform01()));
    }
  }
  return mdp;
}

}  // namespace

TabularMdp build_named_env(const std::string& name,
                           const std::map<std::string, double>& params) {
  if (name == "heaven_hell") return build_heaven_hell(params);
  if (name == "two_point_bandit") return build_two_point_bandit(params);
  if (name == "chain") return build_chain(params);
  if (name == "random") return build_random(params);
  throw std::invalid_argument("unknown environment '" + name + "'");
}

}  // namespace regretlab
