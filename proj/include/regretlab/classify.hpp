#pragma once

#include <cstdint>
#include <string>

#include "regretlab/mdp.hpp"

namespace regretlab {

struct ConnectednessReport {
  bool ergodic = false;
  bool unichain = false;
  bool communicating = false;
  bool weakly_communicating = false;
  /// Human-readable description of a violating policy or state pair, empty
  /// when nothing was violated.
  std::string witness;
  /// "exhaustive" when all deterministic stationary policies were checked,
  /// "capped" when only a fixed-seed sample of policy_cap policies was.
  std::string method;
};

inline constexpr std::int64_t kDefaultPolicyCap = 1'000'000;

/// Connectedness classification.
///
/// communicating: union support digraph strongly connected (exact).
/// weakly_communicating: every state that is recurrent under some policy lies
/// in one strongly connected component of the union digraph (exact).
/// ergodic: every deterministic stationary policy induces an irreducible
/// chain; unichain: every such chain has a single recurrent class. Both are
/// decided by enumerating all A^S deterministic policies when that count is
/// at most policy_cap; otherwise a fixed-seed uniform sample of policy_cap
/// policies is checked and method is set to "capped".
ConnectednessReport classify(const TabularMdp& mdp,
                             std::int64_t policy_cap = kDefaultPolicyCap);

}  // namespace regretlab
