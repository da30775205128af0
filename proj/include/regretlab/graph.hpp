#pragma once

#include <vector>

#include "regretlab/mdp.hpp"

namespace regretlab {

/// Adjacency-list digraph over states.
using Digraph = std::vector<std::vector<int>>;

/// Support digraph of the chain induced by a stationary policy: edge s -> s'
/// iff P(s' | s, policy(s)) > 0.
Digraph policy_support_graph(const TabularMdp& mdp, const StationaryPolicy& policy);

/// Union support digraph: edge s -> s' iff some action reaches s' from s.
Digraph union_support_graph(const TabularMdp& mdp);

/// Tarjan SCCs. Returns a component id per vertex; ids are assigned so that
/// the numbering is deterministic for a given adjacency list.
std::vector<int> strongly_connected_components(const Digraph& g, int* n_components = nullptr);

bool is_strongly_connected(const Digraph& g);

/// Component ids (from strongly_connected_components) that have no edge to a
/// different component, i.e. the closed classes of a chain's support graph.
std::vector<bool> sink_components(const Digraph& g, const std::vector<int>& comp,
                                  int n_components);

/// States that belong to some end component: a set of states plus an action
/// subset per state whose supports stay inside the set and whose union graph
/// is strongly connected on it. These are exactly the states that are
/// recurrent under at least one stationary policy.
std::vector<bool> end_component_states(const TabularMdp& mdp);

}  // namespace regretlab
