#pragma once

// Brute-force reference implementations the real code is checked against.
// Everything here takes the slow, obviously-correct route and shares no code
// with the library's algorithms.

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "scriptdag/script_graph.hpp"

namespace oracle {

// Floyd-Warshall reachability (the library uses per-node DFS instead).
inline std::vector<std::vector<bool>> closure_matrix(int n, const scriptdag::EdgeSet& edges) {
  std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
  for (const auto& [u, v] : edges) r[u][v] = true;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (r[i][k] && r[k][j]) r[i][j] = true;
  return r;
}

inline bool same_reachability(int n, const scriptdag::EdgeSet& a, const scriptdag::EdgeSet& b) {
  return closure_matrix(n, a) == closure_matrix(n, b);
}

inline bool acyclic_by_closure(int n, const scriptdag::EdgeSet& edges) {
  auto r = closure_matrix(n, edges);
  for (int i = 0; i < n; ++i)
    if (r[i][i]) return false;
  return true;
}

// Every permutation of 0..n-1 consistent with the constraints.
inline std::vector<std::vector<int>> extensions_by_permutation(int n,
                                                               const scriptdag::EdgeSet& edges) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    std::vector<int> pos(n);
    for (int i = 0; i < n; ++i) pos[perm[i]] = i;
    bool ok = true;
    for (const auto& [u, v] : edges) {
      if (pos[u] >= pos[v]) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

// ---------------------------------------------------------------------------
// Graph edit distance by exhaustive enumeration of node mappings.
// ---------------------------------------------------------------------------

struct TinyGraph {
  std::vector<std::string> labels;
  scriptdag::EdgeSet edges;
};

struct GedOracleCosts {
  double v_del = 1, v_ins = 1, v_rep = 1;
  double e_del = 1, e_ins = 1, e_rep = 1;
  bool endpoint_rep = false;
};

// Cost of one complete mapping (m[i] = g2 node or -1), straight from the
// definition.
inline double mapping_cost(const TinyGraph& g1, const TinyGraph& g2, const std::vector<int>& m,
                           const GedOracleCosts& c) {
  const int n1 = static_cast<int>(g1.labels.size());
  const int n2 = static_cast<int>(g2.labels.size());

  double cost = 0;
  std::vector<bool> used(n2, false);
  std::vector<bool> sub(n1, false);
  for (int i = 0; i < n1; ++i) {
    if (m[i] < 0) {
      cost += c.v_del;
    } else {
      used[m[i]] = true;
      if (g1.labels[i] != g2.labels[m[i]]) {
        cost += c.v_rep;
        sub[i] = true;
      }
    }
  }
  for (int j = 0; j < n2; ++j)
    if (!used[j]) cost += c.v_ins;

  std::set<scriptdag::Edge> e2(g2.edges.begin(), g2.edges.end());
  std::set<scriptdag::Edge> covered;
  for (const auto& [u, v] : g1.edges) {
    if (m[u] >= 0 && m[v] >= 0 && e2.count({m[u], m[v]})) {
      covered.insert({m[u], m[v]});
      if (c.endpoint_rep && (sub[u] || sub[v])) cost += c.e_rep;
    } else {
      cost += c.e_del;
    }
  }
  for (const auto& e : g2.edges)
    if (!covered.count(e)) cost += c.e_ins;

  return cost;
}

inline void enumerate_mappings(const TinyGraph& g1, const TinyGraph& g2, std::vector<int>& m,
                               std::vector<bool>& used, int i, const GedOracleCosts& c,
                               double& best) {
  const int n1 = static_cast<int>(g1.labels.size());
  const int n2 = static_cast<int>(g2.labels.size());
  if (i == n1) {
    best = std::min(best, mapping_cost(g1, g2, m, c));
    return;
  }
  m[i] = -1;
  enumerate_mappings(g1, g2, m, used, i + 1, c, best);
  for (int j = 0; j < n2; ++j) {
    if (used[j]) continue;
    used[j] = true;
    m[i] = j;
    enumerate_mappings(g1, g2, m, used, i + 1, c, best);
    used[j] = false;
  }
  m[i] = -1;
}

inline double ged_brute_force(const TinyGraph& g1, const TinyGraph& g2,
                              const GedOracleCosts& c = {}) {
  std::vector<int> m(g1.labels.size(), -1);
  std::vector<bool> used(g2.labels.size(), false);
  double best = std::numeric_limits<double>::infinity();
  enumerate_mappings(g1, g2, m, used, 0, c, best);
  return best;
}

inline TinyGraph tiny_from(const scriptdag::ScriptGraph& g, bool normalized = true) {
  TinyGraph t;
  for (const auto& ev : g.events()) {
    t.labels.push_back(normalized ? scriptdag::normalize_label(ev.text) : ev.text);
  }
  t.edges = g.edges();
  return t;
}

}  // namespace oracle
