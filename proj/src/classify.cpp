#include "regretlab/classify.hpp"

#include <cmath>
#include <sstream>

#include "regretlab/errors.hpp"
#include "regretlab/graph.hpp"
#include "regretlab/rng.hpp"

namespace regretlab {

namespace {

constexpr std::uint64_t kClassifySampleSeed = 987654321;

std::string describe_policy(const StationaryPolicy& policy) {
  std::ostringstream os;
  os << "policy (";
  for (size_t s = 0; s < policy.action.size(); ++s) {
    if (s > 0) os << ",";
    os << policy.action[s];
  }
  os << ")";
  return os.str();
}

struct UniversalFlags {
  bool ergodic = true;
  bool unichain = true;
  std::string witness;
};

void check_policy(const TabularMdp& mdp, const StationaryPolicy& policy, UniversalFlags& f) {
  auto g = policy_support_graph(mdp, policy);
  int n_comp = 0;
  auto comp = strongly_connected_components(g, &n_comp);
  if (n_comp > 1 && f.ergodic) {
    f.ergodic = false;
    if (f.witness.empty()) {
      f.witness = describe_policy(policy) + " induces a reducible chain";
    }
  }
  if (n_comp > 1 && f.unichain) {
    auto sink = sink_components(g, comp, n_comp);
    int n_sinks = 0;
    for (bool b : sink) n_sinks += b ? 1 : 0;
    if (n_sinks > 1) {
      f.unichain = false;
      f.witness = describe_policy(policy) + " induces " + std::to_string(n_sinks) +
                  " recurrent classes";
    }
  }
}

}  // namespace

ConnectednessReport classify(const TabularMdp& mdp, std::int64_t policy_cap) {
  if (policy_cap < 1) throw ContractViolation("policy_cap must be positive");
  const int n = mdp.n_states();
  const int m = mdp.n_actions();
  ConnectednessReport report;

  auto union_g = union_support_graph(mdp);
  int n_comp = 0;
  auto comp = strongly_connected_components(union_g, &n_comp);
  report.communicating = (n_comp == 1);

  auto recurrent_somewhere = end_component_states(mdp);
  int rc = -1;
  report.weakly_communicating = true;
  int first_r = -1, second_r = -1;
  for (int s = 0; s < n; ++s) {
    if (!recurrent_somewhere[s]) continue;
    if (rc < 0) {
      rc = comp[s];
      first_r = s;
    } else if (comp[s] != rc) {
      report.weakly_communicating = false;
      second_r = s;
      break;
    }
  }
  if (rc < 0) throw ContractViolation("no end component found");
  if (!report.weakly_communicating && report.witness.empty()) {
    report.witness = "states " + std::to_string(first_r) + " and " +
                     std::to_string(second_r) +
                     " are both recurrent under some policy yet mutually unreachable";
  }

  // Policy-universal flags over deterministic stationary policies. A
  // randomized policy keeps a set closed only if every supported action does,
  // so any deterministic selector of its support witnesses the same
  // reducibility; deterministic enumeration is therefore exact.
  double n_policies_f = std::pow(static_cast<double>(m), static_cast<double>(n));
  UniversalFlags flags;
  StationaryPolicy policy;
  policy.action.assign(n, 0);
  if (n_policies_f <= static_cast<double>(policy_cap)) {
    report.method = "exhaustive";
    while (true) {
      check_policy(mdp, policy, flags);
      if (!flags.ergodic && !flags.unichain) break;
      int s = 0;
      while (s < n && policy.action[s] == m - 1) policy.action[s++] = 0;
      if (s == n) break;
      ++policy.action[s];
    }
  } else {
    report.method = "capped";
    Rng rng(kClassifySampleSeed);
    for (std::int64_t i = 0; i < policy_cap; ++i) {
      for (int s = 0; s < n; ++s) {
        policy.action[s] = static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(m));
      }
      check_policy(mdp, policy, flags);
      if (!flags.ergodic && !flags.unichain) break;
    }
  }
  report.ergodic = flags.ergodic;
  report.unichain = flags.unichain;
  if (report.witness.empty()) report.witness = flags.witness;

  // Class hierarchy must hold by construction; a failure here is a bug.
  if (report.ergodic && !(report.unichain && report.communicating)) {
    throw ContractViolation("classification hierarchy violated");
  }
  if (report.communicating && !report.weakly_communicating) {
    throw ContractViolation("classification hierarchy violated");
  }
  return report;
}

}  // namespace regretlab
