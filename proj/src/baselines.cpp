#include <cstdint>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "scriptdag/baselines.hpp"

namespace scriptdag {

namespace {

// mt19937_64 output is pinned by the standard; the distribution adapters are
// not, so results stay reproducible across toolchains only with hand-rolled
// mapping.
std::uint64_t rng_below(std::mt19937_64& rng, std::uint64_t bound) {
  return rng() % bound;
}

double rng_real(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::vector<int> random_permutation(std::mt19937_64& rng, int n) {
  std::vector<int> order(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  for (int i = n - 1; i > 0; --i) {
    auto j = static_cast<std::size_t>(rng_below(rng, static_cast<std::uint64_t>(i) + 1));
    std::swap(order[static_cast<std::size_t>(i)], order[j]);
  }
  return order;
}

}  // namespace

ScriptGraph random_script(const std::vector<EventNode>& events, const std::string& scenario,
                          const RandomPolicy& policy) {
  if (events.empty()) throw std::invalid_argument("random_script: no events");
  if (!(policy.p_branch >= 0.0 && policy.p_branch <= 1.0)) {
    throw std::invalid_argument("random_script: p_branch must lie in [0, 1]");
  }

  ScriptGraph g(scenario);
  for (std::size_t i = 0; i < events.size(); ++i) {
    if (events[i].id != static_cast<int>(i)) {
      throw std::invalid_argument("random_script: events must use ordinal ids");
    }
    g.add_event(events[i].text, events[i].duration);
  }

  std::mt19937_64 rng(policy.seed);
  const int n = static_cast<int>(events.size());
  std::vector<int> order = random_permutation(rng, n);

  if (policy.kind == RandomPolicy::Kind::Chain) {
    for (int k = 0; k + 1 < n; ++k) {
      g.add_edge(order[static_cast<std::size_t>(k)], order[static_cast<std::size_t>(k + 1)]);
    }
    return g;
  }

  // Dag: one uniform parent among the earlier positions, then possibly a
  // second distinct one. add_edge keeps the result reduced.
  for (int k = 1; k < n; ++k) {
    int child = order[static_cast<std::size_t>(k)];
    auto p = static_cast<int>(rng_below(rng, static_cast<std::uint64_t>(k)));
    g.add_edge(order[static_cast<std::size_t>(p)], child);
    if (k >= 2 && rng_real(rng) < policy.p_branch) {
      auto q = static_cast<int>(rng_below(rng, static_cast<std::uint64_t>(k - 1)));
      if (q >= p) ++q;
      g.add_edge(order[static_cast<std::size_t>(q)], child);
    }
  }
  return g;
}

EvalReport random_baseline_eval(const Corpus& corpus, const RandomPolicy& policy,
                                const BaselineEvalConfig& cfg) {
  std::vector<ScoredPair> pairs;
  pairs.reserve(corpus.records.size());
  for (std::size_t i = 0; i < corpus.records.size(); ++i) {
    const CorpusRecord& rec = corpus.records[i];
    RandomPolicy per_record = policy;
    per_record.seed = policy.seed ^ static_cast<std::uint64_t>(i);
    pairs.emplace_back(rec.id, random_script(rec.events, rec.scenario, per_record),
                       std::vector<ScriptGraph>{record_graph(rec)});
  }

  ReportConfig report_cfg;
  report_cfg.edges = cfg.edges;
  report_cfg.ged = cfg.ged;
  report_cfg.ged_cfg = cfg.ged_cfg;
  report_cfg.approx_beam = cfg.approx_beam;
  report_cfg.jobs = cfg.jobs;
  report_cfg.prf.match_by = MatchBy::Id;  // the baseline reuses the gold event list
  return corpus_report(pairs, report_cfg);
}

}  // namespace scriptdag
