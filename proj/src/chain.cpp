#include "regretlab/chain.hpp"

#include <algorithm>
#include <cmath>

#include "regretlab/errors.hpp"
#include "regretlab/graph.hpp"

namespace regretlab {

namespace {
constexpr double kResidualTol = 1e-10;
}

std::vector<double> solve_linear(Grid<double> a, std::vector<double> b) {
  const int n = static_cast<int>(b.size());
  if (a.rows() != static_cast<size_t>(n) || a.cols() != static_cast<size_t>(n)) {
    throw ContractViolation("solve_linear: shape mismatch");
  }
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r) {
      if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
    }
    if (std::abs(a(pivot, col)) < 1e-14) {
      throw NumericalFailure("solve_linear: singular matrix");
    }
    if (pivot != col) {
      for (int c = 0; c < n; ++c) std::swap(a(col, c), a(pivot, c));
      std::swap(b[col], b[pivot]);
    }
    for (int r = col + 1; r < n; ++r) {
      double f = a(r, col) / a(col, col);
      if (f == 0.0) continue;
      for (int c = col; c < n; ++c) a(r, c) -= f * a(col, c);
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(n, 0.0);
  for (int r = n - 1; r >= 0; --r) {
    double acc = b[r];
    for (int c = r + 1; c < n; ++c) acc -= a(r, c) * x[c];
    x[r] = acc / a(r, r);
  }
  return x;
}

namespace {

// Stationary distribution on one recurrent class: solve pi (P - I) = 0 with
// the normalization sum(pi) = 1 replacing one redundant equation.
std::vector<double> class_stationary(const TabularMdp& mdp, const StationaryPolicy& policy,
                                     const std::vector<int>& members) {
  const int k = static_cast<int>(members.size());
  Grid<double> a(k, k, 0.0);
  std::vector<double> b(k, 0.0);
  for (int j = 0; j < k; ++j) {
    for (int i = 0; i < k; ++i) {
      auto row = mdp.transition_row(members[i], policy.at(members[i]));
      a(j, i) = row[members[j]] - (i == j ? 1.0 : 0.0);
    }
  }
  // Overwrite the last balance equation with the normalization.
  for (int i = 0; i < k; ++i) a(k - 1, i) = 1.0;
  b[k - 1] = 1.0;
  auto pi = solve_linear(a, b);
  double residual = 0.0;
  for (int j = 0; j + 1 < k; ++j) {
    double acc = 0.0;
    for (int i = 0; i < k; ++i) {
      auto row = mdp.transition_row(members[i], policy.at(members[i]));
      acc += pi[i] * row[members[j]];
    }
    residual = std::max(residual, std::abs(acc - pi[j]));
  }
  if (residual > kResidualTol) {
    throw NumericalFailure("stationary distribution residual too large");
  }
  for (double& p : pi) p = std::max(p, 0.0);
  double total = 0.0;
  for (double p : pi) total += p;
  for (double& p : pi) p /= total;
  return pi;
}

}  // namespace

ChainAnalysis analyze_chain(const TabularMdp& mdp, const StationaryPolicy& policy) {
  const int n = mdp.n_states();
  auto g = policy_support_graph(mdp, policy);
  int n_comp = 0;
  auto comp = strongly_connected_components(g, &n_comp);
  auto is_sink = sink_components(g, comp, n_comp);

  ChainAnalysis out{{}, {}, Grid<double>(n, 0), std::vector<double>(n, 0.0)};
  std::vector<int> class_of_comp(n_comp, -1);
  for (int c = 0; c < n_comp; ++c) {
    if (!is_sink[c]) continue;
    std::vector<int> members;
    for (int s = 0; s < n; ++s) {
      if (comp[s] == c) members.push_back(s);
    }
    class_of_comp[c] = static_cast<int>(out.recurrent_classes.size());
    out.stationary.push_back(class_stationary(mdp, policy, members));
    out.recurrent_classes.push_back(std::move(members));
  }
  const int n_classes = static_cast<int>(out.recurrent_classes.size());

  // Absorption probabilities: for each class solve h = P h on transient
  // states with h fixed at 1 on that class and 0 on the others.
  out.absorption = Grid<double>(n, n_classes, 0.0);
  std::vector<int> transient;
  std::vector<int> transient_index(n, -1);
  for (int s = 0; s < n; ++s) {
    if (class_of_comp[comp[s]] >= 0) {
      out.absorption(s, class_of_comp[comp[s]]) = 1.0;
    } else {
      transient_index[s] = static_cast<int>(transient.size());
      transient.push_back(s);
    }
  }
  const int nt = static_cast<int>(transient.size());
  if (nt > 0) {
    Grid<double> a(nt, nt, 0.0);
    for (int i = 0; i < nt; ++i) {
      auto row = mdp.transition_row(transient[i], policy.at(transient[i]));
      for (int j = 0; j < nt; ++j) {
        a(i, j) = (i == j ? 1.0 : 0.0) - row[transient[j]];
      }
    }
    for (int c = 0; c < n_classes; ++c) {
      std::vector<double> b(nt, 0.0);
      for (int i = 0; i < nt; ++i) {
        auto row = mdp.transition_row(transient[i], policy.at(transient[i]));
        for (int s : out.recurrent_classes[c]) b[i] += row[s];
      }
      auto h = solve_linear(a, b);
      for (int i = 0; i < nt; ++i) {
        out.absorption(transient[i], c) = std::min(std::max(h[i], 0.0), 1.0);
      }
    }
    for (int i = 0; i < nt; ++i) {
      double total = 0.0;
      for (int c = 0; c < n_classes; ++c) total += out.absorption(transient[i], c);
      if (std::abs(total - 1.0) > kResidualTol * n) {
        throw NumericalFailure("absorption probabilities do not sum to 1");
      }
      for (int c = 0; c < n_classes; ++c) out.absorption(transient[i], c) /= total;
    }
  }

  std::vector<double> class_gain(n_classes, 0.0);
  for (int c = 0; c < n_classes; ++c) {
    double gacc = 0.0;
    for (size_t i = 0; i < out.recurrent_classes[c].size(); ++i) {
      int s = out.recurrent_classes[c][i];
      gacc += out.stationary[c][i] * mdp.reward(s, policy.at(s)).mean();
    }
    class_gain[c] = gacc;
  }
  for (int s = 0; s < n; ++s) {
    double gacc = 0.0;
    for (int c = 0; c < n_classes; ++c) gacc += out.absorption(s, c) * class_gain[c];
    out.gain_per_state[s] = gacc;
  }
  return out;
}

double policy_gain(const TabularMdp& mdp, const StationaryPolicy& policy,
                   std::span<const double> initial_dist) {
  if (static_cast<int>(initial_dist.size()) != mdp.n_states()) {
    throw ContractViolation("initial distribution size does not match state count");
  }
  auto analysis = analyze_chain(mdp, policy);
  double g = 0.0;
  for (int s = 0; s < mdp.n_states(); ++s) g += initial_dist[s] * analysis.gain_per_state[s];
  return g;
}

double policy_gain(const TabularMdp& mdp, const StationaryPolicy& policy, int start_state) {
  if (start_state < 0 || start_state >= mdp.n_states()) {
    throw ContractViolation("start state out of range");
  }
  return analyze_chain(mdp, policy).gain_per_state[start_state];
}

}  // namespace regretlab
