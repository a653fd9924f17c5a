#include "scriptdag/aggregation.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "scriptdag/errors.hpp"

namespace scriptdag {

namespace {

// DFS from the lowest unvisited id, neighbors in ascending id order. Returns
// the first cycle found as its edge sequence, or nothing when acyclic.
std::optional<std::vector<Edge>> find_cycle(int n, const std::vector<std::vector<bool>>& present) {
  std::vector<int> color(n, 0);  // 0 fresh, 1 on path, 2 done
  std::vector<int> path;
  std::vector<Edge> cycle;

  auto dfs = [&](auto&& self, int u) -> bool {
    color[u] = 1;
    path.push_back(u);
    for (int v = 0; v < n; ++v) {
      if (!present[u][v]) continue;
      if (color[v] == 1) {
        auto it = std::find(path.begin(), path.end(), v);
        for (auto p = it; p + 1 != path.end(); ++p) cycle.emplace_back(*p, *(p + 1));
        cycle.emplace_back(u, v);
        return true;
      }
      if (color[v] == 0 && self(self, v)) return true;
    }
    color[u] = 2;
    path.pop_back();
    return false;
  };

  for (int s = 0; s < n; ++s) {
    if (color[s] == 0 && dfs(dfs, s)) return cycle;
  }
  return std::nullopt;
}

int position_line(std::string_view text, std::size_t byte, int& column) {
  int line = 1;
  column = 1;
  for (std::size_t i = 0; i < text.size() && i + 1 < byte; ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return line;
}

}  // namespace

PairwiseScores PairwiseScores::zeros(int n) {
  PairwiseScores s;
  s.n = n;
  s.p.assign(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n), 0.0));
  return s;
}

void PairwiseScores::check(bool strict_complement, double eps) const {
  if (n < 0) throw std::invalid_argument("scores: negative size");
  if (p.size() != static_cast<std::size_t>(n)) {
    throw std::invalid_argument("scores: matrix has " + std::to_string(p.size()) +
                                " rows for " + std::to_string(n) + " events");
  }
  for (int i = 0; i < n; ++i) {
    if (p[i].size() != static_cast<std::size_t>(n)) {
      throw std::invalid_argument("scores: row " + std::to_string(i) + " has " +
                                  std::to_string(p[i].size()) + " entries");
    }
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;  // diagonal is meaningless and ignored
      double v = p[i][j];
      if (!(v >= 0.0 && v <= 1.0)) {
        throw std::invalid_argument("scores: p[" + std::to_string(i) + "][" + std::to_string(j) +
                                    "] is outside [0, 1]");
      }
    }
  }
  if (strict_complement) {
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (std::abs(p[i][j] + p[j][i] - 1.0) > eps) {
          throw std::invalid_argument("scores: p[" + std::to_string(i) + "][" + std::to_string(j) +
                                      "] and its reverse do not sum to 1");
        }
      }
    }
  }
}

WeightedDigraph build_adjacency(const PairwiseScores& scores, const AggregationConfig& cfg) {
  scores.check(cfg.strict_complement);
  WeightedDigraph wd{scores.n, {}};

  if (cfg.policy == EdgePolicy::Threshold) {
    if (!(cfg.tau > 0.0 && cfg.tau < 1.0)) {
      throw std::invalid_argument("threshold policy needs tau in (0, 1)");
    }
    for (int i = 0; i < scores.n; ++i) {
      for (int j = 0; j < scores.n; ++j) {
        if (i != j && scores.p[i][j] >= cfg.tau) {
          wd.edges.push_back({i, j, scores.p[i][j]});
        }
      }
    }
    return wd;
  }

  for (int i = 0; i < scores.n; ++i) {
    for (int j = i + 1; j < scores.n; ++j) {
      double fwd = scores.p[i][j];
      double rev = scores.p[j][i];
      if (fwd == 0.0 && rev == 0.0) continue;  // no signal either way
      if (fwd >= rev) {
        wd.edges.push_back({i, j, fwd});
      } else {
        wd.edges.push_back({j, i, rev});
      }
    }
  }
  return wd;
}

CycleBreakResult break_cycles(const WeightedDigraph& wd) {
  const int n = wd.n;
  std::vector<std::vector<bool>> present(n, std::vector<bool>(n, false));
  std::vector<std::vector<double>> weight(n, std::vector<double>(n, 0.0));
  for (const auto& e : wd.edges) {
    if (e.src < 0 || e.src >= n || e.dst < 0 || e.dst >= n) {
      throw std::invalid_argument("break_cycles: edge endpoint out of range");
    }
    if (present[e.src][e.dst]) {
      throw std::invalid_argument("break_cycles: duplicate edge (" + std::to_string(e.src) +
                                  "," + std::to_string(e.dst) + ")");
    }
    present[e.src][e.dst] = true;
    weight[e.src][e.dst] = e.weight;
  }

  CycleBreakResult result;
  result.graph.n = n;

  while (auto cycle = find_cycle(n, present)) {
    Edge victim = (*cycle)[0];
    for (const Edge& e : *cycle) {
      double w = weight[e.first][e.second];
      double best = weight[victim.first][victim.second];
      if (w < best || (w == best && e < victim)) victim = e;
    }
    present[victim.first][victim.second] = false;
    result.removed.push_back({victim.first, victim.second, weight[victim.first][victim.second]});
  }

  for (const auto& e : wd.edges) {
    if (present[e.src][e.dst]) result.graph.edges.push_back(e);
  }
  return result;
}

ScriptGraph to_script(const WeightedDigraph& wd, std::vector<EventNode> events,
                      std::string scenario) {
  if (static_cast<int>(events.size()) != wd.n) {
    throw std::invalid_argument("to_script: " + std::to_string(events.size()) +
                                " events for " + std::to_string(wd.n) + " nodes");
  }
  if (normalize_label(scenario).empty()) {
    throw std::invalid_argument("to_script: scenario must be non-empty");
  }

  EdgeSet edges;
  edges.reserve(wd.edges.size());
  for (const auto& e : wd.edges) edges.emplace_back(e.src, e.dst);
  edges = transitive_reduction(wd.n, edges);  // throws CycleError on cycles

  auto g = ScriptGraph::from_parts(std::move(scenario), std::move(events), std::move(edges));
  auto report = g.validate();
  if (!report.ok) {
    throw std::invalid_argument("to_script: " + report.violations.front().message);
  }
  return g;
}

ScriptGraph predict_edges(std::vector<EventNode> events, const PairwiseScores& scores,
                          const AggregationConfig& cfg, std::string scenario) {
  if (static_cast<int>(events.size()) != scores.n) {
    throw std::invalid_argument("predict_edges: " + std::to_string(events.size()) +
                                " events for an n=" + std::to_string(scores.n) + " matrix");
  }
  auto broken = break_cycles(build_adjacency(scores, cfg));
  return to_script(broken.graph, std::move(events), std::move(scenario));
}

ScoresFile parse_scores_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    int column = 1;
    int line = position_line(text, e.byte, column);
    throw ParseError(std::string("scores json: ") + e.what(), line, column);
  }

  try {
    if (!j.is_object()) throw std::invalid_argument("scores json: top level must be an object");
    if (!j.contains("events") || !j["events"].is_array()) {
      throw std::invalid_argument("scores json: missing \"events\" array");
    }
    if (!j.contains("p") || !j["p"].is_array()) {
      throw std::invalid_argument("scores json: missing \"p\" matrix");
    }

    ScoresFile file;
    int id = 0;
    for (const auto& item : j["events"]) {
      if (!item.is_string()) throw std::invalid_argument("scores json: events must be strings");
      std::string text_value = item.get<std::string>();
      if (normalize_label(text_value).empty()) {
        throw std::invalid_argument("scores json: event " + std::to_string(id) + " is empty");
      }
      file.events.push_back({id++, std::move(text_value), std::nullopt});
    }

    file.scores.n = static_cast<int>(file.events.size());
    for (const auto& row : j["p"]) {
      if (!row.is_array()) throw std::invalid_argument("scores json: \"p\" must be a matrix");
      std::vector<double> values;
      for (const auto& cell : row) {
        if (!cell.is_number()) throw std::invalid_argument("scores json: matrix entries must be numbers");
        values.push_back(cell.get<double>());
      }
      file.scores.p.push_back(std::move(values));
    }
    file.scores.check();

    if (j.contains("scenario")) {
      if (!j["scenario"].is_string()) {
        throw std::invalid_argument("scores json: scenario must be a string");
      }
      file.scenario = j["scenario"].get<std::string>();
    }
    return file;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("scores json: ") + e.what());
  }
}

ScoresFile load_scores_json(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_scores_json(buffer.str());
}

}  // namespace scriptdag
