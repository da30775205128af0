#include "regretlab/json_io.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>

#include "regretlab/errors.hpp"
#include "regretlab/util.hpp"

namespace regretlab {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& origin, const std::string& where,
                       const std::string& what) {
  throw ConfigError(where.empty() ? origin : origin + ": " + where, what);
}

std::string child(const std::string& where, const std::string& key) {
  return where.empty() ? key : where + "." + key;
}

std::string index(const std::string& where, std::size_t i) {
  return where + "[" + std::to_string(i) + "]";
}

const json& member(const json& obj, const std::string& origin, const std::string& where,
                   const std::string& key) {
  if (!obj.is_object()) fail(origin, where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(origin, child(where, key), "missing required field");
  return *it;
}

const json* optional_member(const json& obj, const std::string& origin, const std::string& where,
                            const std::string& key) {
  if (!obj.is_object()) fail(origin, where, "expected an object");
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

void reject_unknown_keys(const json& obj, const std::string& origin, const std::string& where,
                         const std::set<std::string>& allowed) {
  if (!obj.is_object()) fail(origin, where, "expected an object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.contains(it.key())) {
      fail(origin, child(where, it.key()), "unknown field");
    }
  }
}

std::int64_t as_int(const json& value, const std::string& origin, const std::string& where) {
  if (!value.is_number_integer() && !value.is_number_unsigned()) {
    fail(origin, where, "expected an integer");
  }
  return value.get<std::int64_t>();
}

double as_double(const json& value, const std::string& origin, const std::string& where) {
  if (!value.is_number()) fail(origin, where, "expected a number");
  return value.get<double>();
}

std::string as_string(const json& value, const std::string& origin, const std::string& where) {
  if (!value.is_string()) fail(origin, where, "expected a string");
  return value.get<std::string>();
}

bool as_bool(const json& value, const std::string& origin, const std::string& where) {
  if (!value.is_boolean()) fail(origin, where, "expected a boolean");
  return value.get<bool>();
}

std::vector<double> as_double_vector(const json& value, const std::string& origin,
                                     const std::string& where) {
  if (!value.is_array()) fail(origin, where, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(value.size());
  for (std::size_t i = 0; i < value.size(); ++i) {
    out.push_back(as_double(value[i], origin, index(where, i)));
  }
  return out;
}

json parse_document(const std::string& text, const std::string& origin) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) fail(origin, "", "invalid JSON");
  return doc;
}

RewardModel parse_reward(const json& value, const std::string& origin, const std::string& where) {
  reject_unknown_keys(value, origin, where, {"kind", "value"});
  const std::string kind = as_string(member(value, origin, where, "kind"), origin,
                                     child(where, "kind"));
  const double v = as_double(member(value, origin, where, "value"), origin,
                             child(where, "value"));
  try {
    if (kind == "bernoulli") return RewardModel::make_bernoulli(v);
    if (kind == "point") return RewardModel::make_point(v);
  } catch (const std::invalid_argument& err) {
    fail(origin, child(where, "value"), err.what());
  }
  fail(origin, child(where, "kind"), "expected \"bernoulli\" or \"point\"");
}

void check_distribution(const std::vector<double>& dist, const std::string& origin,
                        const std::string& where) {
  double total = 0.0;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    if (!(dist[i] >= 0.0) || !std::isfinite(dist[i])) {
      fail(origin, index(where, i), "probabilities must be finite and non-negative");
    }
    total += dist[i];
  }
  if (std::abs(total - 1.0) > kRowSumTol) {
    fail(origin, where, "probabilities must sum to 1");
  }
}

EpisodeSignal parse_signal(const json& value, const std::string& origin,
                           const std::string& where) {
  reject_unknown_keys(value, origin, where, {"kind", "H", "threshold", "H_max"});
  const std::string kind = as_string(member(value, origin, where, "kind"), origin,
                                     child(where, "kind"));
  try {
    if (kind == "fixed_length") {
      return EpisodeSignal::fixed_length(static_cast<int>(
          as_int(member(value, origin, where, "H"), origin, child(where, "H"))));
    }
    if (kind == "visit_count_doubling") {
      return EpisodeSignal::visit_count_doubling();
    }
    if (kind == "reward_threshold") {
      const double threshold = as_double(member(value, origin, where, "threshold"), origin,
                                         child(where, "threshold"));
      const int h_max = static_cast<int>(
          as_int(member(value, origin, where, "H_max"), origin, child(where, "H_max")));
      return EpisodeSignal::reward_threshold(threshold, h_max);
    }
    if (kind == "never") {
      return EpisodeSignal::never();
    }
  } catch (const ContractViolation& err) {
    fail(origin, where, err.what());
  }
  fail(origin, child(where, "kind"),
       "expected \"fixed_length\", \"visit_count_doubling\", \"reward_threshold\", or \"never\"");
}

EnvironmentSpec parse_environment(const json& value, const std::string& origin,
                                  const std::string& where) {
  EnvironmentSpec spec;
  const std::string kind = as_string(member(value, origin, where, "kind"), origin,
                                     child(where, "kind"));
  if (kind == "named") {
    reject_unknown_keys(value, origin, where, {"kind", "name", "params"});
    spec.kind = EnvironmentSpec::Kind::named;
    spec.name = as_string(member(value, origin, where, "name"), origin, child(where, "name"));
    if (const json* params = optional_member(value, origin, where, "params")) {
      if (!params->is_object()) fail(origin, child(where, "params"), "expected an object");
      for (auto it = params->begin(); it != params->end(); ++it) {
        spec.params[it.key()] =
            as_double(it.value(), origin, child(child(where, "params"), it.key()));
      }
    }
  } else if (kind == "file") {
    reject_unknown_keys(value, origin, where, {"kind", "path"});
    spec.kind = EnvironmentSpec::Kind::file;
    spec.path = as_string(member(value, origin, where, "path"), origin, child(where, "path"));
  } else if (kind == "prior") {
    reject_unknown_keys(value, origin, where, {"kind", "name", "p"});
    spec.kind = EnvironmentSpec::Kind::prior;
    spec.name = as_string(member(value, origin, where, "name"), origin, child(where, "name"));
    if (spec.name != "two_point_bandit" && spec.name != "heaven_hell") {
      fail(origin, child(where, "name"), "expected \"two_point_bandit\" or \"heaven_hell\"");
    }
    if (const json* p = optional_member(value, origin, where, "p")) {
      spec.p = as_double(*p, origin, child(where, "p"));
      if (!(spec.p >= 0.0 && spec.p <= 1.0)) {
        fail(origin, child(where, "p"), "expected a probability in [0, 1]");
      }
    }
  } else if (kind == "conjugate_prior") {
    reject_unknown_keys(value, origin, where, {"kind", "n_states", "n_actions"});
    spec.kind = EnvironmentSpec::Kind::conjugate_prior;
    spec.n_states = static_cast<int>(
        as_int(member(value, origin, where, "n_states"), origin, child(where, "n_states")));
    spec.n_actions = static_cast<int>(
        as_int(member(value, origin, where, "n_actions"), origin, child(where, "n_actions")));
    if (spec.n_states < 1) fail(origin, child(where, "n_states"), "expected a positive integer");
    if (spec.n_actions < 1) fail(origin, child(where, "n_actions"), "expected a positive integer");
  } else {
    fail(origin, child(where, "kind"),
         "expected \"named\", \"file\", \"prior\", or \"conjugate_prior\"");
  }
  return spec;
}

AgentSpec parse_agent(const json& value, const std::string& origin, const std::string& where) {
  AgentSpec spec;
  reject_unknown_keys(value, origin, where,
                      {"agent", "H", "signal", "gamma", "delta", "evi_epsilon"});
  const std::string name = as_string(member(value, origin, where, "agent"), origin,
                                     child(where, "agent"));
  if (name == "psrl") {
    spec.kind = AgentSpec::Kind::psrl;
  } else if (name == "lazy_psrl") {
    spec.kind = AgentSpec::Kind::lazy_psrl;
  } else if (name == "ofu") {
    spec.kind = AgentSpec::Kind::ofu;
  } else if (name == "smoothed_psrl") {
    spec.kind = AgentSpec::Kind::smoothed_psrl;
  } else {
    fail(origin, child(where, "agent"),
         "expected \"psrl\", \"lazy_psrl\", \"ofu\", or \"smoothed_psrl\"");
  }
  if (const json* h = optional_member(value, origin, where, "H")) {
    const std::int64_t v = as_int(*h, origin, child(where, "H"));
    if (v < 1) fail(origin, child(where, "H"), "expected a positive integer");
    spec.H = static_cast<int>(v);
  }
  if (const json* signal = optional_member(value, origin, where, "signal")) {
    spec.signal = parse_signal(*signal, origin, child(where, "signal"));
  }
  if (const json* gamma = optional_member(value, origin, where, "gamma")) {
    spec.gamma = as_double(*gamma, origin, child(where, "gamma"));
    if (!(spec.gamma > 0.0 && spec.gamma < 1.0)) {
      fail(origin, child(where, "gamma"), "expected a value in (0, 1)");
    }
  }
  if (const json* delta = optional_member(value, origin, where, "delta")) {
    spec.delta = as_double(*delta, origin, child(where, "delta"));
    if (!(spec.delta > 0.0 && spec.delta < 1.0)) {
      fail(origin, child(where, "delta"), "expected a value in (0, 1)");
    }
  }
  if (const json* eps = optional_member(value, origin, where, "evi_epsilon")) {
    spec.evi_epsilon = as_double(*eps, origin, child(where, "evi_epsilon"));
    if (!(spec.evi_epsilon > 0.0)) {
      fail(origin, child(where, "evi_epsilon"), "expected a positive number");
    }
  }
  if (spec.kind == AgentSpec::Kind::psrl && !spec.H.has_value()) {
    fail(origin, child(where, "H"), "psrl requires a planning horizon H");
  }
  return spec;
}

}  // namespace

LoadedMdp parse_mdp_json(const std::string& text, const std::string& origin) {
  const json doc = parse_document(text, origin);
  reject_unknown_keys(doc, origin, "",
                      {"n_states", "n_actions", "transitions", "rewards", "horizon",
                       "initial_dist"});
  const int n_states = static_cast<int>(
      as_int(member(doc, origin, "", "n_states"), origin, "n_states"));
  const int n_actions = static_cast<int>(
      as_int(member(doc, origin, "", "n_actions"), origin, "n_actions"));
  if (n_states < 1) fail(origin, "n_states", "expected a positive integer");
  if (n_actions < 1) fail(origin, "n_actions", "expected a positive integer");

  LoadedMdp out{TabularMdp(n_states, n_actions), std::nullopt, std::nullopt};

  const json& transitions = member(doc, origin, "", "transitions");
  if (!transitions.is_array() || transitions.size() != static_cast<std::size_t>(n_states)) {
    fail(origin, "transitions", "expected an array with one entry per state");
  }
  for (int s = 0; s < n_states; ++s) {
    const std::string s_where = index("transitions", static_cast<std::size_t>(s));
    const json& per_action = transitions[static_cast<std::size_t>(s)];
    if (!per_action.is_array() || per_action.size() != static_cast<std::size_t>(n_actions)) {
      fail(origin, s_where, "expected an array with one entry per action");
    }
    for (int a = 0; a < n_actions; ++a) {
      const std::string row_where = index(s_where, static_cast<std::size_t>(a));
      const std::vector<double> row =
          as_double_vector(per_action[static_cast<std::size_t>(a)], origin, row_where);
      if (row.size() != static_cast<std::size_t>(n_states)) {
        fail(origin, row_where, "expected one probability per state");
      }
      try {
        out.mdp.set_transition_row(s, a, row);
      } catch (const std::invalid_argument& err) {
        fail(origin, row_where, err.what());
      }
    }
  }

  const json& rewards = member(doc, origin, "", "rewards");
  if (!rewards.is_array() || rewards.size() != static_cast<std::size_t>(n_states)) {
    fail(origin, "rewards", "expected an array with one entry per state");
  }
  for (int s = 0; s < n_states; ++s) {
    const std::string s_where = index("rewards", static_cast<std::size_t>(s));
    const json& per_action = rewards[static_cast<std::size_t>(s)];
    if (!per_action.is_array() || per_action.size() != static_cast<std::size_t>(n_actions)) {
      fail(origin, s_where, "expected an array with one entry per action");
    }
    for (int a = 0; a < n_actions; ++a) {
      out.mdp.set_reward(
          s, a,
          parse_reward(per_action[static_cast<std::size_t>(a)], origin,
                       index(s_where, static_cast<std::size_t>(a))));
    }
  }

  if (const json* horizon = optional_member(doc, origin, "", "horizon")) {
    const std::int64_t h = as_int(*horizon, origin, "horizon");
    if (h < 1) fail(origin, "horizon", "expected a positive integer");
    out.horizon = static_cast<int>(h);
  }
  if (const json* dist = optional_member(doc, origin, "", "initial_dist")) {
    std::vector<double> rho = as_double_vector(*dist, origin, "initial_dist");
    if (rho.size() != static_cast<std::size_t>(n_states)) {
      fail(origin, "initial_dist", "expected one probability per state");
    }
    check_distribution(rho, origin, "initial_dist");
    out.initial_dist = std::move(rho);
  }
  return out;
}

LoadedMdp load_mdp_file(const std::string& path) {
  return parse_mdp_json(read_text_file(path), path);
}

std::string mdp_to_json(const TabularMdp& mdp, std::optional<int> horizon,
                        const std::optional<std::vector<double>>& initial_dist) {
  json doc;
  doc["n_states"] = mdp.n_states();
  doc["n_actions"] = mdp.n_actions();
  json transitions = json::array();
  json rewards = json::array();
  for (int s = 0; s < mdp.n_states(); ++s) {
    json t_row = json::array();
    json r_row = json::array();
    for (int a = 0; a < mdp.n_actions(); ++a) {
      const auto row = mdp.transition_row(s, a);
      t_row.push_back(json(std::vector<double>(row.begin(), row.end())));
      const RewardModel& r = mdp.reward(s, a);
      r_row.push_back(json{
          {"kind", r.kind == RewardModel::Kind::bernoulli ? "bernoulli" : "point"},
          {"value", r.value}});
    }
    transitions.push_back(std::move(t_row));
    rewards.push_back(std::move(r_row));
  }
  doc["transitions"] = std::move(transitions);
  doc["rewards"] = std::move(rewards);
  if (horizon.has_value()) doc["horizon"] = *horizon;
  if (initial_dist.has_value()) doc["initial_dist"] = *initial_dist;
  return doc.dump(2) + "\n";
}

ExperimentConfig parse_experiment_config(const std::string& text, const std::string& origin) {
  const json doc = parse_document(text, origin);
  reject_unknown_keys(doc, origin, "",
                      {"environment", "agent", "T", "start_state", "horizon", "initial_dist",
                       "seeds", "n_seeds", "seed_base", "lambda_star", "decompose"});
  ExperimentConfig cfg;
  cfg.environment = parse_environment(member(doc, origin, "", "environment"), origin,
                                      "environment");
  cfg.agent = parse_agent(member(doc, origin, "", "agent"), origin, "agent");
  cfg.T = as_int(member(doc, origin, "", "T"), origin, "T");
  if (const json* v = optional_member(doc, origin, "", "start_state")) {
    cfg.start_state = static_cast<int>(as_int(*v, origin, "start_state"));
  }
  if (const json* v = optional_member(doc, origin, "", "horizon")) {
    cfg.horizon = static_cast<int>(as_int(*v, origin, "horizon"));
  }
  if (const json* v = optional_member(doc, origin, "", "initial_dist")) {
    cfg.initial_dist = as_double_vector(*v, origin, "initial_dist");
    check_distribution(*cfg.initial_dist, origin, "initial_dist");
  }
  if (const json* v = optional_member(doc, origin, "", "lambda_star")) {
    cfg.lambda_star = as_double(*v, origin, "lambda_star");
  }
  if (const json* v = optional_member(doc, origin, "", "decompose")) {
    cfg.decompose = as_bool(*v, origin, "decompose");
  }

  const json* seeds = optional_member(doc, origin, "", "seeds");
  const json* n_seeds = optional_member(doc, origin, "", "n_seeds");
  const json* seed_base = optional_member(doc, origin, "", "seed_base");
  if (seeds != nullptr) {
    if (n_seeds != nullptr || seed_base != nullptr) {
      fail(origin, "seeds", "give either an explicit seed list or n_seeds/seed_base, not both");
    }
    if (!seeds->is_array() || seeds->empty()) {
      fail(origin, "seeds", "expected a non-empty array of integers");
    }
    for (std::size_t i = 0; i < seeds->size(); ++i) {
      const std::int64_t v = as_int((*seeds)[i], origin, index("seeds", i));
      if (v < 0) fail(origin, index("seeds", i), "expected a non-negative integer");
      cfg.seeds.push_back(static_cast<std::uint64_t>(v));
    }
  } else if (n_seeds != nullptr) {
    const std::int64_t n = as_int(*n_seeds, origin, "n_seeds");
    if (n < 1) fail(origin, "n_seeds", "expected a positive integer");
    std::int64_t base = 1;
    if (seed_base != nullptr) {
      base = as_int(*seed_base, origin, "seed_base");
      if (base < 0) fail(origin, "seed_base", "expected a non-negative integer");
    }
    cfg.seeds.reserve(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) {
      cfg.seeds.push_back(static_cast<std::uint64_t>(base + i));
    }
  } else {
    fail(origin, "seeds", "missing required field (or n_seeds)");
  }

  try {
    cfg.validate();
  } catch (const ContractViolation& err) {
    fail(origin, "", err.what());
  }
  return cfg;
}

ExperimentConfig load_experiment_config(const std::string& path) {
  return parse_experiment_config(read_text_file(path), path);
}

LemmaCheckConfig parse_lemma_check_config(const std::string& text, const std::string& origin) {
  const json doc = parse_document(text, origin);
  reject_unknown_keys(doc, origin, "", {"prior", "scheme", "seed", "g"});

  const json& prior = member(doc, origin, "", "prior");
  reject_unknown_keys(prior, origin, "prior", {"name", "p"});
  const std::string name = as_string(member(prior, origin, "prior", "name"), origin,
                                     "prior.name");
  double p = 0.5;
  if (const json* pv = optional_member(prior, origin, "prior", "p")) {
    p = as_double(*pv, origin, "prior.p");
    if (!(p >= 0.0 && p <= 1.0)) fail(origin, "prior.p", "expected a probability in [0, 1]");
  }
  std::optional<FiniteSupportBelief> belief;
  if (name == "two_point_bandit") {
    belief = two_point_bandit_prior(p);
  } else if (name == "heaven_hell") {
    belief = heaven_hell_prior(p);
  } else {
    fail(origin, "prior.name", "expected \"two_point_bandit\" or \"heaven_hell\"");
  }

  const json& scheme_doc = member(doc, origin, "", "scheme");
  const std::string mode = as_string(member(scheme_doc, origin, "scheme", "mode"), origin,
                                     "scheme.mode");
  Lemma1Scheme scheme;
  try {
    if (mode == "measurable") {
      reject_unknown_keys(scheme_doc, origin, "scheme", {"mode", "H", "k0"});
      const int H = static_cast<int>(
          as_int(member(scheme_doc, origin, "scheme", "H"), origin, "scheme.H"));
      const int k0 = static_cast<int>(
          as_int(member(scheme_doc, origin, "scheme", "k0"), origin, "scheme.k0"));
      scheme = Lemma1Scheme::measurable(H, k0);
    } else if (mode == "selected") {
      reject_unknown_keys(scheme_doc, origin, "scheme", {"mode", "threshold", "H_max", "t_limit"});
      const double threshold = as_double(member(scheme_doc, origin, "scheme", "threshold"),
                                         origin, "scheme.threshold");
      const int h_max = static_cast<int>(
          as_int(member(scheme_doc, origin, "scheme", "H_max"), origin, "scheme.H_max"));
      const std::int64_t t_limit =
          as_int(member(scheme_doc, origin, "scheme", "t_limit"), origin, "scheme.t_limit");
      scheme = Lemma1Scheme::selected(threshold, h_max, t_limit);
    } else {
      fail(origin, "scheme.mode", "expected \"measurable\" or \"selected\"");
    }
  } catch (const ContractViolation& err) {
    fail(origin, "scheme", err.what());
  }

  std::uint64_t seed = 1;
  if (const json* sv = optional_member(doc, origin, "", "seed")) {
    const std::int64_t v = as_int(*sv, origin, "seed");
    if (v < 0) fail(origin, "seed", "expected a non-negative integer");
    seed = static_cast<std::uint64_t>(v);
  }
  std::string g_name = "gain";
  if (const json* gv = optional_member(doc, origin, "", "g")) {
    g_name = as_string(*gv, origin, "g");
  }
  if (g_name != "gain") fail(origin, "g", "the only supported functional is \"gain\"");

  return LemmaCheckConfig{std::move(*belief), scheme, seed, std::move(g_name)};
}

LemmaCheckConfig load_lemma_check_config(const std::string& path) {
  return parse_lemma_check_config(read_text_file(path), path);
}

namespace {

json signal_to_json(const EpisodeSignal& signal) {
  switch (signal.kind) {
    case EpisodeSignal::Kind::fixed_length:
      return json{{"kind", "fixed_length"}, {"H", signal.H}};
    case EpisodeSignal::Kind::visit_count_doubling:
      return json{{"kind", "visit_count_doubling"}};
    case EpisodeSignal::Kind::reward_threshold:
      return json{{"kind", "reward_threshold"},
                  {"threshold", signal.threshold},
                  {"H_max", signal.H_max}};
    case EpisodeSignal::Kind::never:
      return json{{"kind", "never"}};
  }
  return json{{"kind", "never"}};
}

}  // namespace

std::string config_hash(const ExperimentConfig& cfg) {
  json env;
  switch (cfg.environment.kind) {
    case EnvironmentSpec::Kind::named:
      env["kind"] = "named";
      env["name"] = cfg.environment.name;
      env["params"] = cfg.environment.params;
      break;
    case EnvironmentSpec::Kind::file:
      env["kind"] = "file";
      env["path"] = cfg.environment.path;
      break;
    case EnvironmentSpec::Kind::prior:
      env["kind"] = "prior";
      env["name"] = cfg.environment.name;
      env["p"] = cfg.environment.p;
      break;
    case EnvironmentSpec::Kind::conjugate_prior:
      env["kind"] = "conjugate_prior";
      env["n_states"] = cfg.environment.n_states;
      env["n_actions"] = cfg.environment.n_actions;
      break;
  }

  json agent;
  switch (cfg.agent.kind) {
    case AgentSpec::Kind::psrl:
      agent["agent"] = "psrl";
      break;
    case AgentSpec::Kind::lazy_psrl:
      agent["agent"] = "lazy_psrl";
      break;
    case AgentSpec::Kind::ofu:
      agent["agent"] = "ofu";
      break;
    case AgentSpec::Kind::smoothed_psrl:
      agent["agent"] = "smoothed_psrl";
      break;
  }
  if (cfg.agent.H.has_value()) agent["H"] = *cfg.agent.H;
  if (cfg.agent.signal.has_value()) agent["signal"] = signal_to_json(*cfg.agent.signal);
  agent["gamma"] = cfg.agent.gamma;
  agent["delta"] = cfg.agent.delta;
  agent["evi_epsilon"] = cfg.agent.evi_epsilon;

  json doc;
  doc["environment"] = std::move(env);
  doc["agent"] = std::move(agent);
  doc["T"] = cfg.T;
  doc["start_state"] = cfg.start_state;
  if (cfg.horizon.has_value()) doc["horizon"] = *cfg.horizon;
  if (cfg.initial_dist.has_value()) doc["initial_dist"] = *cfg.initial_dist;
  doc["seeds"] = cfg.seeds;
  if (cfg.lambda_star.has_value()) doc["lambda_star"] = *cfg.lambda_star;
  doc["decompose"] = cfg.decompose;
  return to_hex(fnv1a64(doc.dump()));
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path, "cannot open file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw ConfigError(path, "read failed");
  return buffer.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError(path, "cannot open file for writing");
  out << content;
  out.flush();
  if (!out) throw ConfigError(path, "write failed");
}

}  // namespace regretlab
