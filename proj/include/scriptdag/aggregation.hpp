#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "scriptdag/script_graph.hpp"

namespace scriptdag {

/// n x n matrix of precedence probabilities: p[i][j] is the classifier's
/// belief that event i comes before event j. The diagonal is ignored.
struct PairwiseScores {
  int n = 0;
  std::vector<std::vector<double>> p;

  static PairwiseScores zeros(int n);

  /// Throws std::invalid_argument on shape errors or entries outside [0, 1].
  /// With strict_complement, also requires |p[i][j] + p[j][i] - 1| <= eps.
  void check(bool strict_complement = false, double eps = 1e-6) const;
};

struct WeightedEdge {
  int src = 0;
  int dst = 0;
  double weight = 0.0;
};

/// No self loops, at most one edge per ordered pair.
struct WeightedDigraph {
  int n = 0;
  std::vector<WeightedEdge> edges;
};

enum class EdgePolicy { ArgmaxPair, Threshold };

struct AggregationConfig {
  EdgePolicy policy = EdgePolicy::ArgmaxPair;
  double tau = 0.5;  // Threshold policy only; must be in (0, 1)
  bool strict_complement = false;
};

/// ArgmaxPair: for each unordered pair keep the direction with the larger
/// probability (ties go min id -> max id). A pair whose probabilities are
/// both zero carries no precedence signal and produces no edge. Threshold:
/// every (i, j) with p[i][j] >= tau.
WeightedDigraph build_adjacency(const PairwiseScores& scores,
                                const AggregationConfig& cfg = {});

struct CycleBreakResult {
  WeightedDigraph graph;
  std::vector<WeightedEdge> removed;
};

/// While a directed cycle exists, locate one by DFS from the lowest node id
/// and delete its minimum-weight edge (ties: lexicographically smallest
/// (src, dst)). Identity on acyclic input.
CycleBreakResult break_cycles(const WeightedDigraph& wd);

/// Transitively reduces an acyclic weighted digraph and attaches the events.
/// Throws CycleError on cyclic input.
ScriptGraph to_script(const WeightedDigraph& wd, std::vector<EventNode> events,
                      std::string scenario);

/// build_adjacency |> break_cycles |> to_script.
ScriptGraph predict_edges(std::vector<EventNode> events, const PairwiseScores& scores,
                          const AggregationConfig& cfg, std::string scenario);

/// Contents of a scores.json file: {"events": [...], "p": [[...]]} with an
/// optional "scenario".
struct ScoresFile {
  std::vector<EventNode> events;
  PairwiseScores scores;
  std::string scenario;
};

ScoresFile parse_scores_json(std::string_view text);
ScoresFile load_scores_json(const std::filesystem::path& path);

}  // namespace scriptdag
