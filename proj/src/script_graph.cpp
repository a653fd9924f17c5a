#include "scriptdag/script_graph.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

#include "scriptdag/errors.hpp"

namespace scriptdag {

namespace {

constexpr double kSecondsLo = 1.0;
constexpr double kMinutesLo = 60.0;
constexpr double kHoursLo = 3600.0;
constexpr double kDaysLo = 86400.0;
constexpr double kWeeksLo = 604800.0;
constexpr double kMonthsLo = 2.63e6;
constexpr double kYearsLo = 3.15e7;

std::string edge_str(const Edge& e) {
  std::ostringstream os;
  os << "(" << e.first << "," << e.second << ")";
  return os.str();
}

// Reachability matrix as adjacency lists -> DFS from each node.
std::vector<std::vector<bool>> reach_matrix(int n, const EdgeSet& edges) {
  std::vector<std::vector<int>> succ(n);
  for (const auto& [u, v] : edges) succ[u].push_back(v);

  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  std::vector<int> stack;
  for (int s = 0; s < n; ++s) {
    stack.assign(succ[s].begin(), succ[s].end());
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      if (reach[s][u]) continue;
      reach[s][u] = true;
      for (int v : succ[u]) {
        if (!reach[s][v]) stack.push_back(v);
      }
    }
  }
  return reach;
}

}  // namespace

std::string_view to_string(DurationBucket b) {
  switch (b) {
    case DurationBucket::Seconds: return "seconds";
    case DurationBucket::Minutes: return "minutes";
    case DurationBucket::Hours: return "hours";
    case DurationBucket::Days: return "days";
    case DurationBucket::Weeks: return "weeks";
    case DurationBucket::Months: return "months";
    case DurationBucket::Years: return "years";
  }
  return "minutes";
}

std::optional<DurationBucket> duration_bucket_from_string(std::string_view s) {
  if (s == "seconds") return DurationBucket::Seconds;
  if (s == "minutes") return DurationBucket::Minutes;
  if (s == "hours") return DurationBucket::Hours;
  if (s == "days") return DurationBucket::Days;
  if (s == "weeks") return DurationBucket::Weeks;
  if (s == "months") return DurationBucket::Months;
  if (s == "years") return DurationBucket::Years;
  return std::nullopt;
}

std::pair<double, double> duration_bucket_range(DurationBucket b) {
  switch (b) {
    case DurationBucket::Seconds: return {kSecondsLo, kMinutesLo};
    case DurationBucket::Minutes: return {kMinutesLo, kHoursLo};
    case DurationBucket::Hours: return {kHoursLo, kDaysLo};
    case DurationBucket::Days: return {kDaysLo, kWeeksLo};
    case DurationBucket::Weeks: return {kWeeksLo, kMonthsLo};
    case DurationBucket::Months: return {kMonthsLo, kYearsLo};
    case DurationBucket::Years: return {kYearsLo, std::numeric_limits<double>::infinity()};
  }
  return {kMinutesLo, kHoursLo};
}

DurationBucket duration_bucket_for(double seconds) {
  if (seconds < kMinutesLo) return DurationBucket::Seconds;
  if (seconds < kHoursLo) return DurationBucket::Minutes;
  if (seconds < kDaysLo) return DurationBucket::Hours;
  if (seconds < kWeeksLo) return DurationBucket::Days;
  if (seconds < kMonthsLo) return DurationBucket::Weeks;
  if (seconds < kYearsLo) return DurationBucket::Months;
  return DurationBucket::Years;
}

bool Duration::in_range() const {
  if (!seconds_estimate) return true;
  auto [lo, hi] = duration_bucket_range(bucket);
  return *seconds_estimate >= lo && *seconds_estimate < hi;
}

std::string normalize_label(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char c : text) {
    unsigned char uc = static_cast<unsigned char>(c);
    if (std::isspace(uc)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    out.push_back(static_cast<char>(std::tolower(uc)));
  }
  return out;
}

ScriptGraph::ScriptGraph(std::string scenario) {
  if (normalize_label(scenario).empty()) {
    throw std::invalid_argument("scenario must be non-empty");
  }
  scenario_ = std::move(scenario);
}

ScriptGraph ScriptGraph::from_parts(std::string scenario, std::vector<EventNode> events,
                                    EdgeSet edges) {
  ScriptGraph g;
  g.scenario_ = std::move(scenario);
  g.events_ = std::move(events);
  std::sort(edges.begin(), edges.end());
  g.edges_ = std::move(edges);
  return g;
}

int ScriptGraph::add_event(std::string text, std::optional<Duration> duration) {
  if (normalize_label(text).empty()) {
    throw std::invalid_argument("event text must be non-empty");
  }
  int id = static_cast<int>(events_.size());
  events_.push_back(EventNode{id, std::move(text), std::move(duration)});
  return id;
}

ScriptGraph::EdgeOutcome ScriptGraph::add_edge(int src, int dst) {
  const int n = static_cast<int>(events_.size());
  if (src < 0 || src >= n || dst < 0 || dst >= n) {
    throw std::invalid_argument("add_edge: unknown event id " + edge_str({src, dst}));
  }
  if (src == dst) {
    throw std::invalid_argument("add_edge: self loop " + edge_str({src, dst}));
  }

  auto reach = reach_matrix(n, edges_);
  if (reach[dst][src]) {
    throw CycleError("add_edge: " + edge_str({src, dst}) + " would close a cycle");
  }
  if (reach[src][dst]) {
    return EdgeOutcome::Redundant;  // already implied, recorded no-op
  }

  edges_.emplace_back(src, dst);
  // The insertion may have turned older edges into shortcuts.
  edges_ = transitive_reduction(n, edges_);
  return EdgeOutcome::Added;
}

void ScriptGraph::set_duration(int id, std::optional<Duration> duration) {
  if (id < 0 || id >= static_cast<int>(events_.size())) {
    throw std::invalid_argument("set_duration: unknown event id " + std::to_string(id));
  }
  if (duration && !duration->in_range()) {
    throw std::invalid_argument("set_duration: estimate outside the '" +
                                std::string(to_string(duration->bucket)) + "' bucket");
  }
  events_[static_cast<std::size_t>(id)].duration = std::move(duration);
}

ValidationReport ScriptGraph::validate() const {
  ValidationReport report;
  auto add = [&report](std::string code, std::string message, std::string element) {
    report.violations.push_back({std::move(code), std::move(message), std::move(element)});
  };

  const int n = static_cast<int>(events_.size());
  for (int i = 0; i < n; ++i) {
    const EventNode& ev = events_[i];
    if (ev.id != i) {
      add("BAD_EVENT_ID",
          "event ids must be the ordinals 0..n-1 in order (found " +
              std::to_string(ev.id) + " at position " + std::to_string(i) + ")",
          "event " + std::to_string(ev.id));
    }
    if (normalize_label(ev.text).empty()) {
      add("EMPTY_TEXT", "event text is empty after normalization",
          "event " + std::to_string(ev.id));
    }
    if (ev.duration && !ev.duration->in_range()) {
      add("DURATION_RANGE",
          "seconds estimate lies outside the '" + std::string(to_string(ev.duration->bucket)) +
              "' bucket",
          "event " + std::to_string(ev.id));
    }
  }

  EdgeSet usable;
  std::set<Edge> seen;
  for (const Edge& e : edges_) {
    if (e.first < 0 || e.first >= n || e.second < 0 || e.second >= n) {
      add("UNKNOWN_ID", "edge endpoint is not an event id", "edge " + edge_str(e));
      continue;
    }
    if (e.first == e.second) {
      add("SELF_LOOP", "self loops are not allowed", "edge " + edge_str(e));
      continue;
    }
    if (!seen.insert(e).second) {
      add("DUP_EDGE", "duplicate edge", "edge " + edge_str(e));
      continue;
    }
    usable.push_back(e);
  }

  if (!is_acyclic(n, usable)) {
    add("CYCLE", "edge relation contains a directed cycle", "edges");
  } else {
    EdgeSet reduced = transitive_reduction(n, usable);
    if (reduced.size() != usable.size()) {
      std::set<Edge> kept(reduced.begin(), reduced.end());
      for (const Edge& e : usable) {
        if (!kept.count(e)) {
          add("NOT_REDUCED", "edge is implied by a longer directed path", "edge " + edge_str(e));
        }
      }
    }
  }

  report.ok = report.violations.empty();
  return report;
}

EdgeSet ScriptGraph::augmented_edges() const {
  const int n = static_cast<int>(events_.size());
  if (n == 0) return {{kRootId, kLeafId}};

  std::vector<int> indeg(n, 0), outdeg(n, 0);
  for (const auto& [u, v] : edges_) {
    ++outdeg[u];
    ++indeg[v];
  }

  EdgeSet out;
  for (int i = 0; i < n; ++i) {
    if (indeg[i] == 0) out.emplace_back(kRootId, i);
  }
  out.insert(out.end(), edges_.begin(), edges_.end());
  for (int i = 0; i < n; ++i) {
    if (outdeg[i] == 0) out.emplace_back(i, kLeafId);
  }
  return out;
}

EdgeSet ScriptGraph::closure() const {
  return transitive_closure(static_cast<int>(events_.size()), edges_);
}

int ScriptGraph::max_degree(DegreeKind kind, bool include_virtual) const {
  const int n = static_cast<int>(events_.size());
  if (n == 0) return 0;

  std::vector<int> indeg(n, 0), outdeg(n, 0);
  for (const auto& [u, v] : include_virtual ? augmented_edges() : edges_) {
    if (u >= 0) ++outdeg[u];
    if (v >= 0) ++indeg[v];
  }

  int best = 0;
  for (int i = 0; i < n; ++i) {
    int d = 0;
    switch (kind) {
      case DegreeKind::MaxInOut: d = std::max(indeg[i], outdeg[i]); break;
      case DegreeKind::In: d = indeg[i]; break;
      case DegreeKind::Out: d = outdeg[i]; break;
      case DegreeKind::Total: d = indeg[i] + outdeg[i]; break;
    }
    best = std::max(best, d);
  }
  return best;
}

std::vector<std::vector<int>> ScriptGraph::linear_extensions(std::size_t limit) const {
  const int n = static_cast<int>(events_.size());
  std::vector<std::vector<int>> result;
  if (limit == 0) return result;
  if (n == 0) {
    result.push_back({});
    return result;
  }

  std::vector<std::vector<int>> succ(n);
  std::vector<int> indeg(n, 0);
  for (const auto& [u, v] : edges_) {
    succ[u].push_back(v);
    ++indeg[v];
  }

  std::vector<int> prefix;
  std::vector<bool> used(n, false);
  prefix.reserve(n);

  // Smallest available id first, so extensions come out lexicographically.
  auto enumerate = [&](auto&& self) -> bool {
    if (static_cast<int>(prefix.size()) == n) {
      result.push_back(prefix);
      return result.size() < limit;
    }
    for (int i = 0; i < n; ++i) {
      if (used[i] || indeg[i] != 0) continue;
      used[i] = true;
      prefix.push_back(i);
      for (int v : succ[i]) --indeg[v];
      bool keep_going = self(self);
      for (int v : succ[i]) ++indeg[v];
      prefix.pop_back();
      used[i] = false;
      if (!keep_going) return false;
    }
    return true;
  };
  enumerate(enumerate);
  return result;
}

bool is_acyclic(int n, const EdgeSet& edges) {
  return topological_order(n, edges).has_value();
}

std::optional<std::vector<int>> topological_order(int n, const EdgeSet& edges) {
  std::vector<std::vector<int>> succ(n);
  std::vector<int> indeg(n, 0);
  for (const auto& [u, v] : edges) {
    succ[u].push_back(v);
    ++indeg[v];
  }

  std::set<int> ready;
  for (int i = 0; i < n; ++i) {
    if (indeg[i] == 0) ready.insert(i);
  }

  std::vector<int> order;
  order.reserve(n);
  while (!ready.empty()) {
    int u = *ready.begin();
    ready.erase(ready.begin());
    order.push_back(u);
    for (int v : succ[u]) {
      if (--indeg[v] == 0) ready.insert(v);
    }
  }
  if (static_cast<int>(order.size()) != n) return std::nullopt;
  return order;
}

EdgeSet transitive_closure(int n, const EdgeSet& edges) {
  auto reach = reach_matrix(n, edges);
  EdgeSet out;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (reach[i][j]) out.emplace_back(i, j);
    }
  }
  return out;
}

EdgeSet transitive_reduction(int n, const EdgeSet& edges) {
  if (!is_acyclic(n, edges)) {
    throw CycleError("transitive_reduction: input relation is cyclic");
  }
  auto reach = reach_matrix(n, edges);

  std::vector<std::vector<int>> succ(n);
  for (const auto& [u, v] : edges) succ[u].push_back(v);

  // (u, v) is a shortcut iff some other child of u already reaches v.
  EdgeSet kept;
  for (const auto& [u, v] : edges) {
    bool shortcut = false;
    for (int w : succ[u]) {
      if (w != v && reach[w][v]) {
        shortcut = true;
        break;
      }
    }
    if (!shortcut) kept.emplace_back(u, v);
  }
  std::sort(kept.begin(), kept.end());
  kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
  return kept;
}

}  // namespace scriptdag
