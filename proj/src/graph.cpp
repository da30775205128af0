#include "regretlab/graph.hpp"

#include <algorithm>
#include <stack>

#include "regretlab/errors.hpp"

namespace regretlab {

Digraph policy_support_graph(const TabularMdp& mdp, const StationaryPolicy& policy) {
  if (static_cast<int>(policy.action.size()) != mdp.n_states()) {
    throw ContractViolation("policy size does not match state count");
  }
  Digraph g(mdp.n_states());
  for (int s = 0; s < mdp.n_states(); ++s) {
    auto row = mdp.transition_row(s, policy.at(s));
    for (int t = 0; t < mdp.n_states(); ++t) {
      if (row[t] > 0.0) g[s].push_back(t);
    }
  }
  return g;
}

Digraph union_support_graph(const TabularMdp& mdp) {
  Digraph g(mdp.n_states());
  for (int s = 0; s < mdp.n_states(); ++s) {
    std::vector<bool> seen(mdp.n_states(), false);
    for (int a = 0; a < mdp.n_actions(); ++a) {
      auto row = mdp.transition_row(s, a);
      for (int t = 0; t < mdp.n_states(); ++t) {
        if (row[t] > 0.0) seen[t] = true;
      }
    }
    for (int t = 0; t < mdp.n_states(); ++t) {
      if (seen[t]) g[s].push_back(t);
    }
  }
  return g;
}

namespace {

// Iterative Tarjan; vertices are visited in index order so component ids are
// reproducible for a fixed adjacency list.
struct TarjanState {
  const Digraph& g;
  std::vector<int> index, lowlink, comp;
  std::vector<bool> on_stack;
  std::stack<int> stack;
  int next_index = 0;
  int next_comp = 0;

  explicit TarjanState(const Digraph& g_)
      : g(g_),
        index(g_.size(), -1),
        lowlink(g_.size(), 0),
        comp(g_.size(), -1),
        on_stack(g_.size(), false) {}

  void run(int root) {
    // Explicit frame stack: (vertex, next child position).
    std::vector<std::pair<int, size_t>> frames;
    frames.emplace_back(root, 0);
    index[root] = lowlink[root] = next_index++;
    stack.push(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      auto& [v, child] = frames.back();
      if (child < g[v].size()) {
        int w = g[v][child++];
        if (index[w] < 0) {
          index[w] = lowlink[w] = next_index++;
          stack.push(w);
          on_stack[w] = true;
          frames.emplace_back(w, 0);
        } else if (on_stack[w]) {
          lowlink[v] = std::min(lowlink[v], index[w]);
        }
      } else {
        if (lowlink[v] == index[v]) {
          while (true) {
            int w = stack.top();
            stack.pop();
            on_stack[w] = false;
            comp[w] = next_comp;
            if (w == v) break;
          }
          ++next_comp;
        }
        frames.pop_back();
        if (!frames.empty()) {
          int parent = frames.back().first;
          lowlink[parent] = std::min(lowlink[parent], lowlink[v]);
        }
      }
    }
  }
};

}  // namespace

std::vector<int> strongly_connected_components(const Digraph& g, int* n_components) {
  TarjanState st(g);
  for (int v = 0; v < static_cast<int>(g.size()); ++v) {
    if (st.index[v] < 0) st.run(v);
  }
  if (n_components != nullptr) *n_components = st.next_comp;
  return st.comp;
}

bool is_strongly_connected(const Digraph& g) {
  if (g.empty()) return true;
  int n_comp = 0;
  strongly_connected_components(g, &n_comp);
  return n_comp == 1;
}

std::vector<bool> sink_components(const Digraph& g, const std::vector<int>& comp,
                                  int n_components) {
  std::vector<bool> sink(n_components, true);
  for (int v = 0; v < static_cast<int>(g.size()); ++v) {
    for (int w : g[v]) {
      if (comp[w] != comp[v]) sink[comp[v]] = false;
    }
  }
  return sink;
}

std::vector<bool> end_component_states(const TabularMdp& mdp) {
  const int n = mdp.n_states();
  const int m = mdp.n_actions();
  // Standard fixed point: start from all state-action pairs, repeatedly drop
  // actions whose support leaves the candidate set, and keep only SCCs of the
  // remaining union graph that retain at least one action per state.
  std::vector<bool> live_state(n, true);
  std::vector<std::vector<bool>> live_action(n, std::vector<bool>(m, true));
  while (true) {
    bool changed = false;
    for (int s = 0; s < n; ++s) {
      if (!live_state[s]) continue;
      bool any = false;
      for (int a = 0; a < m; ++a) {
        if (!live_action[s][a]) continue;
        auto row = mdp.transition_row(s, a);
        for (int t = 0; t < n; ++t) {
          if (row[t] > 0.0 && !live_state[t]) {
            live_action[s][a] = false;
            changed = true;
            break;
          }
        }
        any = any || live_action[s][a];
      }
      if (!any) {
        live_state[s] = false;
        changed = true;
      }
    }
    if (changed) continue;

    // Split candidate set into SCCs of the surviving union graph; actions
    // crossing components are dropped in the next sweep.
    Digraph g(n);
    for (int s = 0; s < n; ++s) {
      if (!live_state[s]) continue;
      std::vector<bool> seen(n, false);
      for (int a = 0; a < m; ++a) {
        if (!live_action[s][a]) continue;
        auto row = mdp.transition_row(s, a);
        for (int t = 0; t < n; ++t) {
          if (row[t] > 0.0) seen[t] = true;
        }
      }
      for (int t = 0; t < n; ++t) {
        if (seen[t]) g[s].push_back(t);
      }
    }
    auto comp = strongly_connected_components(g);
    bool dropped = false;
    for (int s = 0; s < n; ++s) {
      if (!live_state[s]) continue;
      for (int a = 0; a < m; ++a) {
        if (!live_action[s][a]) continue;
        auto row = mdp.transition_row(s, a);
        bool crosses = false;
        for (int t = 0; t < n; ++t) {
          if (row[t] > 0.0 && comp[t] != comp[s]) crosses = true;
        }
        // A singleton component with no self-loop action is not an end
        // component; crossing actions get removed either way.
        if (crosses) {
          live_action[s][a] = false;
          dropped = true;
        }
      }
    }
    if (!dropped) break;
  }
  // Final pass: states left with an action whose support is a subset of the
  // same component form end components.
  std::vector<bool> result(n, false);
  for (int s = 0; s < n; ++s) {
    if (!live_state[s]) continue;
    for (int a = 0; a < m; ++a) {
      if (live_action[s][a]) {
        result[s] = true;
        break;
      }
    }
  }
  return result;
}

}  // namespace regretlab
