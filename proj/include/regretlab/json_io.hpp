#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "regretlab/belief.hpp"
#include "regretlab/experiment.hpp"
#include "regretlab/lemma1.hpp"
#include "regretlab/mdp.hpp"

namespace regretlab {

/// An MDP read from JSON, with the optional finite-horizon annotations.
struct LoadedMdp {
  TabularMdp mdp;
  std::optional<int> horizon;
  std::optional<std::vector<double>> initial_dist;
};

/// Parses the MDP document schema:
///   {"n_states": S, "n_actions": A,
///    "transitions": [S][A][S] floats,
///    "rewards": [S][A] of {"kind": "bernoulli"|"point", "value": v},
///    "horizon"?: H, "initial_dist"?: [S] floats}
/// Violations raise ConfigError naming `origin` and the JSON path.
LoadedMdp parse_mdp_json(const std::string& text, const std::string& origin);
LoadedMdp load_mdp_file(const std::string& path);

std::string mdp_to_json(const TabularMdp& mdp, std::optional<int> horizon = std::nullopt,
                        const std::optional<std::vector<double>>& initial_dist = std::nullopt);

/// Parses the experiment configuration schema (see README). Violations raise
/// ConfigError naming `origin` and the offending key.
ExperimentConfig parse_experiment_config(const std::string& text, const std::string& origin);
ExperimentConfig load_experiment_config(const std::string& path);

struct LemmaCheckConfig {
  FiniteSupportBelief prior;
  Lemma1Scheme scheme;
  std::uint64_t seed = 1;
  std::string g_name;  // "gain": optimal gain at state 0
};

LemmaCheckConfig parse_lemma_check_config(const std::string& text, const std::string& origin);
LemmaCheckConfig load_lemma_check_config(const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace regretlab
