#include <algorithm>
#include <cstdint>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "scriptdag/errors.hpp"
#include "scriptdag/metrics.hpp"

namespace scriptdag {

namespace {

// Virtual endpoints get labels no event text can normalize to.
const std::string kRootLabel = "\x01root";
const std::string kLeafLabel = "\x01leaf";

// One side of the comparison, flattened into dense local ids with interned
// labels. include_virtual prepends the root (local 0) and appends the leaf.
struct View {
  std::vector<int> label;            // interned comparison key
  std::vector<std::string> raw;      // text for edit ops
  EdgeSet edges;
  std::vector<std::vector<bool>> adj;
  int n = 0;
};

int intern(std::map<std::string, int>& table, const std::string& key) {
  auto [it, inserted] = table.emplace(key, static_cast<int>(table.size()));
  return it->second;
}

View make_view(const ScriptGraph& g, const GedConfig& cfg, std::map<std::string, int>& table) {
  View v;
  const int events = static_cast<int>(g.event_count());
  const int offset = cfg.include_virtual ? 1 : 0;
  v.n = events + (cfg.include_virtual ? 2 : 0);
  v.raw.resize(static_cast<std::size_t>(v.n));
  v.label.resize(static_cast<std::size_t>(v.n));

  auto key_of = [&](const std::string& text) {
    return cfg.node_match == GedConfig::NodeMatch::Normalized ? normalize_label(text) : text;
  };

  if (cfg.include_virtual) {
    v.raw[0] = kRootLabel;
    v.label[0] = intern(table, kRootLabel);
    v.raw[static_cast<std::size_t>(v.n - 1)] = kLeafLabel;
    v.label[static_cast<std::size_t>(v.n - 1)] = intern(table, kLeafLabel);
  }
  for (const auto& ev : g.events()) {
    v.raw[static_cast<std::size_t>(ev.id + offset)] = ev.text;
    v.label[static_cast<std::size_t>(ev.id + offset)] = intern(table, key_of(ev.text));
  }

  if (cfg.include_virtual) {
    for (const auto& [a, b] : g.augmented_edges()) {
      int u = (a == kRootId) ? 0 : a + offset;
      int w = (b == kLeafId) ? v.n - 1 : b + offset;
      v.edges.emplace_back(u, w);
    }
  } else {
    v.edges = g.edges();
  }

  v.adj.assign(static_cast<std::size_t>(v.n), std::vector<bool>(static_cast<std::size_t>(v.n), false));
  for (const auto& [u, w] : v.edges) v.adj[static_cast<std::size_t>(u)][static_cast<std::size_t>(w)] = true;
  return v;
}

struct SearchState {
  double g = 0.0;
  double f = 0.0;
  int next = 0;    // g1 node assigned next
  int cnt2 = 0;    // g2 edges with both endpoints used (already charged)
  std::uint64_t used = 0;
  std::vector<std::int8_t> map;  // map[i] = g2 node or -1
};

class GedSearch {
public:
  GedSearch(const View& a, const View& b, const GedConfig& cfg)
      : a_(a), b_(b), cfg_(cfg), c_(cfg.costs) {
    // edges fully charged once both endpoints sit below i
    acc1_.assign(static_cast<std::size_t>(a_.n) + 1, 0);
    for (int i = 1; i <= a_.n; ++i) {
      int count = 0;
      for (const auto& [u, v] : a_.edges) {
        if (std::max(u, v) < i) ++count;
      }
      acc1_[static_cast<std::size_t>(i)] = count;
    }
  }

  double heuristic(const SearchState& s) const {
    // label-multiset mismatch over the unassigned tails
    std::map<int, int> need;
    for (int i = s.next; i < a_.n; ++i) ++need[a_.label[static_cast<std::size_t>(i)]];
    int r1 = a_.n - s.next;
    int r2 = 0;
    int matched = 0;
    for (int j = 0; j < b_.n; ++j) {
      if (s.used & (std::uint64_t{1} << j)) continue;
      ++r2;
      auto it = need.find(b_.label[static_cast<std::size_t>(j)]);
      if (it != need.end() && it->second > 0) {
        --it->second;
        ++matched;
      }
    }
    double node_min = std::min({c_.v_del, c_.v_ins, c_.v_rep});
    double node_lb = (std::max(r1, r2) - matched) * node_min;

    int un1 = static_cast<int>(a_.edges.size()) - acc1_[static_cast<std::size_t>(s.next)];
    int un2 = static_cast<int>(b_.edges.size()) - s.cnt2;
    double edge_lb = std::abs(un1 - un2) * std::min(c_.e_del, c_.e_ins);
    return node_lb + edge_lb;
  }

  // Cost of assigning g1 node s.next to j (j < 0 deletes) plus bookkeeping.
  SearchState extend(const SearchState& s, int j) const {
    SearchState t = s;
    const int i = s.next;
    t.map.push_back(static_cast<std::int8_t>(j));
    t.next = i + 1;

    auto sub = [&](int u) {
      int m = t.map[static_cast<std::size_t>(u)];
      return m >= 0 && a_.label[static_cast<std::size_t>(u)] != b_.label[static_cast<std::size_t>(m)];
    };

    if (j < 0) {
      t.g += c_.v_del;
    } else {
      t.used |= std::uint64_t{1} << j;
      if (a_.label[static_cast<std::size_t>(i)] != b_.label[static_cast<std::size_t>(j)]) t.g += c_.v_rep;
    }

    // g1 edges whose later endpoint is i
    for (int u = 0; u < i; ++u) {
      int mu = t.map[static_cast<std::size_t>(u)];
      if (a_.adj[static_cast<std::size_t>(u)][static_cast<std::size_t>(i)]) {
        if (mu < 0 || j < 0 || !b_.adj[static_cast<std::size_t>(mu)][static_cast<std::size_t>(j)]) {
          t.g += c_.e_del;
        } else if (cfg_.edge_rep_mode == GedConfig::EdgeRepMode::EndpointRep && (sub(u) || sub(i))) {
          t.g += c_.e_rep;
        }
      }
      if (a_.adj[static_cast<std::size_t>(i)][static_cast<std::size_t>(u)]) {
        if (mu < 0 || j < 0 || !b_.adj[static_cast<std::size_t>(j)][static_cast<std::size_t>(mu)]) {
          t.g += c_.e_del;
        } else if (cfg_.edge_rep_mode == GedConfig::EdgeRepMode::EndpointRep && (sub(u) || sub(i))) {
          t.g += c_.e_rep;
        }
      }
    }

    // g2 edges that just got both endpoints used; the covered ones were paid
    // for on the g1 side above
    if (j >= 0) {
      std::vector<int> inv(static_cast<std::size_t>(b_.n), -1);
      for (int u = 0; u <= i; ++u) {
        if (t.map[static_cast<std::size_t>(u)] >= 0) inv[static_cast<std::size_t>(t.map[static_cast<std::size_t>(u)])] = u;
      }
      for (int w = 0; w < b_.n; ++w) {
        if (w == j || !(t.used & (std::uint64_t{1} << w))) continue;
        if (b_.adj[static_cast<std::size_t>(w)][static_cast<std::size_t>(j)]) {
          ++t.cnt2;
          int u = inv[static_cast<std::size_t>(w)];
          if (!(u >= 0 && a_.adj[static_cast<std::size_t>(u)][static_cast<std::size_t>(i)])) t.g += c_.e_ins;
        }
        if (b_.adj[static_cast<std::size_t>(j)][static_cast<std::size_t>(w)]) {
          ++t.cnt2;
          int u = inv[static_cast<std::size_t>(w)];
          if (!(u >= 0 && a_.adj[static_cast<std::size_t>(i)][static_cast<std::size_t>(u)])) t.g += c_.e_ins;
        }
      }
    }
    return t;
  }

  // Inserts for unused g2 nodes and edges never charged during the walk.
  double completion_cost(const SearchState& s) const {
    double extra = 0.0;
    for (int j = 0; j < b_.n; ++j) {
      if (!(s.used & (std::uint64_t{1} << j))) extra += c_.v_ins;
    }
    for (const auto& [x, y] : b_.edges) {
      bool both = (s.used & (std::uint64_t{1} << x)) && (s.used & (std::uint64_t{1} << y));
      if (!both) extra += c_.e_ins;
    }
    return extra;
  }

  std::vector<int> astar(double& best_cost) const {
    auto cmp = [](const SearchState& x, const SearchState& y) {
      if (x.f != y.f) return x.f > y.f;
      if (x.next != y.next) return x.next < y.next;  // deeper first
      return x.map > y.map;
    };
    std::priority_queue<SearchState, std::vector<SearchState>, decltype(cmp)> open(cmp);

    SearchState root;
    root.f = heuristic(root);
    open.push(root);

    while (!open.empty()) {
      SearchState s = open.top();
      open.pop();
      if (s.next == a_.n) {
        best_cost = s.g + completion_cost(s);
        return std::vector<int>(s.map.begin(), s.map.end());
      }
      for (int j = -1; j < b_.n; ++j) {
        if (j >= 0 && (s.used & (std::uint64_t{1} << j))) continue;
        SearchState t = extend(s, j);
        t.f = t.g + heuristic(t);
        open.push(std::move(t));
      }
    }
    throw std::logic_error("ged: search exhausted without a goal");
  }

  std::vector<int> beam_search(std::size_t beam, double& best_cost) const {
    std::vector<SearchState> level{SearchState{}};
    level[0].f = heuristic(level[0]);

    for (int depth = 0; depth < a_.n; ++depth) {
      std::vector<SearchState> next;
      next.reserve(level.size() * static_cast<std::size_t>(b_.n + 1));
      for (const auto& s : level) {
        for (int j = -1; j < b_.n; ++j) {
          if (j >= 0 && (s.used & (std::uint64_t{1} << j))) continue;
          SearchState t = extend(s, j);
          t.f = t.g + heuristic(t);
          next.push_back(std::move(t));
        }
      }
      std::sort(next.begin(), next.end(), [](const SearchState& x, const SearchState& y) {
        if (x.f != y.f) return x.f < y.f;
        return x.map < y.map;
      });
      if (next.size() > beam) next.resize(beam);
      level = std::move(next);
    }

    const SearchState* best = nullptr;
    double best_total = 0.0;
    for (const auto& s : level) {
      double total = s.g + completion_cost(s);
      if (!best || total < best_total) {
        best = &s;
        best_total = total;
      }
    }
    best_cost = best_total;
    return std::vector<int>(best->map.begin(), best->map.end());
  }

private:
  const View& a_;
  const View& b_;
  const GedConfig& cfg_;
  GedCosts c_;
  std::vector<int> acc1_;
};

// Rebuilds the ordered edit script from a complete node mapping. Handle space:
// g1 locals keep their ids, inserted g2 node j becomes n1 + j.
EditScript script_from_mapping(const View& a, const View& b, const std::vector<int>& mapping,
                               const GedConfig& cfg) {
  const GedCosts& c = cfg.costs;
  EditScript es;
  es.mapping = mapping;

  std::vector<int> inv(static_cast<std::size_t>(b.n), -1);
  std::vector<bool> sub(static_cast<std::size_t>(a.n), false);
  for (int i = 0; i < a.n; ++i) {
    if (mapping[static_cast<std::size_t>(i)] >= 0) {
      inv[static_cast<std::size_t>(mapping[static_cast<std::size_t>(i)])] = i;
      sub[static_cast<std::size_t>(i)] =
          a.label[static_cast<std::size_t>(i)] != b.label[static_cast<std::size_t>(mapping[static_cast<std::size_t>(i)])];
    }
  }
  auto handle = [&](int j) { return inv[static_cast<std::size_t>(j)] >= 0 ? inv[static_cast<std::size_t>(j)] : a.n + j; };

  auto kept = [&](int u, int v) {
    int mu = mapping[static_cast<std::size_t>(u)];
    int mv = mapping[static_cast<std::size_t>(v)];
    return mu >= 0 && mv >= 0 && b.adj[static_cast<std::size_t>(mu)][static_cast<std::size_t>(mv)];
  };

  // structure-shrinking ops first, then relabels, then growth
  for (const auto& [u, v] : a.edges) {
    if (!kept(u, v)) {
      es.ops.push_back({EditOpKind::EdgeDelete, -1, {u, v}, "", "", c.e_del});
    }
  }
  for (int i = 0; i < a.n; ++i) {
    if (mapping[static_cast<std::size_t>(i)] < 0) {
      es.ops.push_back({EditOpKind::VertexDelete, i, {-1, -1}, a.raw[static_cast<std::size_t>(i)], "", c.v_del});
    }
  }
  for (int i = 0; i < a.n; ++i) {
    if (mapping[static_cast<std::size_t>(i)] >= 0 && sub[static_cast<std::size_t>(i)]) {
      es.ops.push_back({EditOpKind::VertexReplace, i, {-1, -1}, a.raw[static_cast<std::size_t>(i)],
                        b.raw[static_cast<std::size_t>(mapping[static_cast<std::size_t>(i)])], c.v_rep});
    }
  }
  if (cfg.edge_rep_mode == GedConfig::EdgeRepMode::EndpointRep) {
    for (const auto& [u, v] : a.edges) {
      if (kept(u, v) && (sub[static_cast<std::size_t>(u)] || sub[static_cast<std::size_t>(v)])) {
        es.ops.push_back({EditOpKind::EdgeReplace, -1, {u, v}, "", "", c.e_rep});
      }
    }
  }
  for (int j = 0; j < b.n; ++j) {
    if (inv[static_cast<std::size_t>(j)] < 0) {
      es.ops.push_back({EditOpKind::VertexInsert, a.n + j, {-1, -1}, "", b.raw[static_cast<std::size_t>(j)], c.v_ins});
    }
  }
  std::set<Edge> covered;
  for (const auto& [u, v] : a.edges) {
    if (kept(u, v)) {
      covered.insert({mapping[static_cast<std::size_t>(u)], mapping[static_cast<std::size_t>(v)]});
    }
  }
  for (const auto& [x, y] : b.edges) {
    if (!covered.count({x, y})) {
      es.ops.push_back({EditOpKind::EdgeInsert, -1, {handle(x), handle(y)}, "", "", c.e_ins});
    }
  }

  for (const auto& op : es.ops) es.total_cost += op.cost;
  return es;
}

GedResult run_ged(const ScriptGraph& g1, const ScriptGraph& g2, const GedConfig& cfg,
                  std::size_t beam, bool exact) {
  if (cfg.max_exact_nodes < 1) throw std::invalid_argument("ged: max_exact_nodes must be >= 1");

  std::map<std::string, int> table;
  View a = make_view(g1, cfg, table);
  View b = make_view(g2, cfg, table);

  if (exact && a.n + b.n > cfg.max_exact_nodes) {
    throw SizeLimitError("ged: combined node count " + std::to_string(a.n + b.n) +
                         " exceeds max_exact_nodes " + std::to_string(cfg.max_exact_nodes) +
                         "; use ged_approx");
  }
  if (b.n > 63) throw std::invalid_argument("ged: more than 63 nodes on the right side");

  GedSearch search(a, b, cfg);
  double cost = 0.0;
  std::vector<int> mapping = exact ? search.astar(cost) : search.beam_search(beam, cost);

  GedResult result;
  result.script = script_from_mapping(a, b, mapping, cfg);
  result.cost = cost;
  if (std::abs(result.script.total_cost - cost) > 1e-9) {
    throw std::logic_error("ged: edit script cost does not match the search cost");
  }
  if (!edit_script_transforms(g1, g2, result.script, cfg)) {
    throw std::logic_error("ged: edit script failed replay");
  }
  return result;
}

}  // namespace

std::string_view to_string(EditOpKind k) {
  switch (k) {
    case EditOpKind::VertexDelete: return "V-Del";
    case EditOpKind::VertexInsert: return "V-Ins";
    case EditOpKind::VertexReplace: return "V-Rep";
    case EditOpKind::EdgeDelete: return "E-Del";
    case EditOpKind::EdgeInsert: return "E-Ins";
    case EditOpKind::EdgeReplace: return "E-Rep";
  }
  return "V-Rep";
}

GedResult ged(const ScriptGraph& g1, const ScriptGraph& g2, const GedConfig& cfg) {
  return run_ged(g1, g2, cfg, 0, /*exact=*/true);
}

GedResult ged_approx(const ScriptGraph& g1, const ScriptGraph& g2, const GedConfig& cfg,
                     std::size_t beam) {
  if (beam == 0) throw std::invalid_argument("ged_approx: beam must be positive");
  return run_ged(g1, g2, cfg, beam, /*exact=*/false);
}

GedOpCounts ged_breakdown(const EditScript& es) {
  GedOpCounts counts;
  for (const auto& op : es.ops) {
    switch (op.kind) {
      case EditOpKind::VertexDelete: counts.v_del += 1; break;
      case EditOpKind::VertexInsert: counts.v_ins += 1; break;
      case EditOpKind::VertexReplace: counts.v_rep += 1; break;
      case EditOpKind::EdgeDelete: counts.e_del += 1; break;
      case EditOpKind::EdgeInsert: counts.e_ins += 1; break;
      case EditOpKind::EdgeReplace: counts.e_rep += 1; break;
    }
  }
  return counts;
}

bool edit_script_transforms(const ScriptGraph& g1, const ScriptGraph& g2, const EditScript& es,
                            const GedConfig& cfg) {
  std::map<std::string, int> table;
  View a = make_view(g1, cfg, table);
  View b = make_view(g2, cfg, table);

  if (es.mapping.size() != static_cast<std::size_t>(a.n)) return false;

  // replay state in handle space
  std::map<int, std::string> nodes;  // handle -> raw label
  std::set<Edge> edges;
  for (int i = 0; i < a.n; ++i) nodes[i] = a.raw[static_cast<std::size_t>(i)];
  for (const auto& e : a.edges) edges.insert(e);

  for (const auto& op : es.ops) {
    switch (op.kind) {
      case EditOpKind::EdgeDelete:
        if (!edges.erase(op.edge)) return false;
        break;
      case EditOpKind::VertexDelete: {
        auto it = nodes.find(op.node);
        if (it == nodes.end()) return false;
        for (const auto& e : edges) {
          if (e.first == op.node || e.second == op.node) return false;  // dangling
        }
        nodes.erase(it);
        break;
      }
      case EditOpKind::VertexReplace: {
        auto it = nodes.find(op.node);
        if (it == nodes.end() || it->second != op.old_label) return false;
        it->second = op.new_label;
        break;
      }
      case EditOpKind::EdgeReplace:
        if (!edges.count(op.edge)) return false;  // bookkeeping only
        break;
      case EditOpKind::VertexInsert:
        if (nodes.count(op.node)) return false;
        nodes[op.node] = op.new_label;
        break;
      case EditOpKind::EdgeInsert:
        if (!nodes.count(op.edge.first) || !nodes.count(op.edge.second)) return false;
        if (!edges.insert(op.edge).second) return false;
        break;
    }
  }

  // expected final graph: g2 relocated into handle space via the mapping
  std::vector<int> inv(static_cast<std::size_t>(b.n), -1);
  for (int i = 0; i < a.n; ++i) {
    int m = es.mapping[static_cast<std::size_t>(i)];
    if (m >= 0) {
      if (m >= b.n || inv[static_cast<std::size_t>(m)] >= 0) return false;
      inv[static_cast<std::size_t>(m)] = i;
    }
  }
  auto handle = [&](int j) { return inv[static_cast<std::size_t>(j)] >= 0 ? inv[static_cast<std::size_t>(j)] : a.n + j; };

  if (nodes.size() != static_cast<std::size_t>(b.n)) return false;
  auto key_of = [&](const std::string& text) {
    return cfg.node_match == GedConfig::NodeMatch::Normalized ? normalize_label(text) : text;
  };
  for (int j = 0; j < b.n; ++j) {
    auto it = nodes.find(handle(j));
    if (it == nodes.end()) return false;
    if (key_of(it->second) != key_of(b.raw[static_cast<std::size_t>(j)])) return false;
  }

  std::set<Edge> expected;
  for (const auto& [x, y] : b.edges) expected.insert({handle(x), handle(y)});
  return edges == expected;
}

}  // namespace scriptdag
