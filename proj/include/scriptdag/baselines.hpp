#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "scriptdag/dataset.hpp"
#include "scriptdag/metrics.hpp"
#include "scriptdag/script_graph.hpp"

namespace scriptdag {

struct RandomPolicy {
  enum class Kind { Chain, Dag };

  Kind kind = Kind::Chain;
  double p_branch = 0.3;  // Dag only: chance of a second parent per node
  std::uint64_t seed = 0;
};

/// Random script over the given events. Chain links a uniformly random
/// permutation; Dag draws a random topological order, gives every non-first
/// node one uniform parent among its predecessors plus a second one with
/// probability p_branch, then reduces. Deterministic for a fixed seed.
ScriptGraph random_script(const std::vector<EventNode>& events, const std::string& scenario,
                          const RandomPolicy& policy);

struct BaselineEvalConfig {
  bool edges = true;
  bool ged = false;
  GedConfig ged_cfg;
  std::size_t approx_beam = 64;
  int jobs = 1;
};

/// Scores a random script against each record's primary annotation. Record i
/// draws from seed ^ i, so corpus-level results are reproducible and
/// parallelizable.
EvalReport random_baseline_eval(const Corpus& corpus, const RandomPolicy& policy,
                                const BaselineEvalConfig& cfg = {});

}  // namespace scriptdag
