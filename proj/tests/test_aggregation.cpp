#include "scriptdag/aggregation.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "scriptdag/errors.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace scriptdag;

namespace {

PairwiseScores closure_oracle_scores(const ScriptGraph& g) {
  auto s = PairwiseScores::zeros(static_cast<int>(g.event_count()));
  for (const auto& [i, j] : g.closure()) s.p[i][j] = 1.0;
  return s;
}

WeightedDigraph random_weighted(std::mt19937_64& rng, int n, double q) {
  WeightedDigraph wd{n, {}};
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j && gen::rng_real(rng) < q) {
        wd.edges.push_back({i, j, gen::rng_real(rng)});
      }
    }
  }
  return wd;
}

WeightedDigraph random_tournament(std::mt19937_64& rng, int n) {
  WeightedDigraph wd{n, {}};
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      bool forward = gen::rng_below(rng, 2) == 0;
      wd.edges.push_back({forward ? i : j, forward ? j : i, gen::rng_real(rng)});
    }
  }
  return wd;
}

EdgeSet plain_edges(const WeightedDigraph& wd) {
  EdgeSet out;
  for (const auto& e : wd.edges) out.emplace_back(e.src, e.dst);
  return out;
}

bool same_weighted(const WeightedDigraph& a, const WeightedDigraph& b) {
  if (a.n != b.n || a.edges.size() != b.edges.size()) return false;
  auto key = [](const WeightedEdge& e) { return std::tuple(e.src, e.dst, e.weight); };
  std::vector<std::tuple<int, int, double>> ka, kb;
  for (const auto& e : a.edges) ka.push_back(key(e));
  for (const auto& e : b.edges) kb.push_back(key(e));
  std::sort(ka.begin(), ka.end());
  std::sort(kb.begin(), kb.end());
  return ka == kb;
}

}  // namespace

TEST_CASE("pairwise score validation") {
  auto s = PairwiseScores::zeros(3);
  CHECK_NOTHROW(s.check());

  SUBCASE("shape mismatch") {
    s.p.pop_back();
    CHECK_THROWS_AS(s.check(), std::invalid_argument);
  }
  SUBCASE("row length mismatch") {
    s.p[1].push_back(0.5);
    CHECK_THROWS_AS(s.check(), std::invalid_argument);
  }
  SUBCASE("out of range") {
    s.p[0][1] = 1.5;
    CHECK_THROWS_AS(s.check(), std::invalid_argument);
    s.p[0][1] = -0.1;
    CHECK_THROWS_AS(s.check(), std::invalid_argument);
  }
  SUBCASE("diagonal is ignored") {
    s.p[1][1] = 7.0;
    CHECK_NOTHROW(s.check());
  }
  SUBCASE("strict complement") {
    s.p[0][1] = 0.7;
    s.p[1][0] = 0.3;
    s.p[0][2] = 0.6;
    s.p[2][0] = 0.4;
    s.p[1][2] = 0.5;
    s.p[2][1] = 0.5;
    CHECK_NOTHROW(s.check(true));
    s.p[2][1] = 0.6;
    CHECK_THROWS_AS(s.check(true), std::invalid_argument);
    CHECK_NOTHROW(s.check(false));
  }
}

TEST_CASE("build_adjacency argmax-pair") {
  auto s = PairwiseScores::zeros(2);
  s.p[0][1] = 0.9;
  s.p[1][0] = 0.2;
  auto wd = build_adjacency(s);
  REQUIRE(wd.edges.size() == 1);
  CHECK(wd.edges[0].src == 0);
  CHECK(wd.edges[0].dst == 1);
  CHECK(wd.edges[0].weight == 0.9);

  SUBCASE("tie goes min id to max id") {
    s.p[0][1] = 0.5;
    s.p[1][0] = 0.5;
    wd = build_adjacency(s);
    REQUIRE(wd.edges.size() == 1);
    CHECK(wd.edges[0].src == 0);
    CHECK(wd.edges[0].dst == 1);
    CHECK(wd.edges[0].weight == 0.5);
  }

  SUBCASE("a pair with no signal produces no edge") {
    s.p[0][1] = 0.0;
    s.p[1][0] = 0.0;
    CHECK(build_adjacency(s).edges.empty());
  }
}

TEST_CASE("build_adjacency threshold") {
  auto s = PairwiseScores::zeros(3);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (i != j) s.p[i][j] = 0.6;
    }
  }
  AggregationConfig cfg{.policy = EdgePolicy::Threshold, .tau = 0.5};
  auto wd = build_adjacency(s, cfg);
  CHECK(wd.edges.size() == 6);  // deliberately cyclic

  cfg.tau = 0.7;
  CHECK(build_adjacency(s, cfg).edges.empty());

  cfg.tau = 0.0;
  CHECK_THROWS_AS(build_adjacency(s, cfg), std::invalid_argument);
  cfg.tau = 1.0;
  CHECK_THROWS_AS(build_adjacency(s, cfg), std::invalid_argument);
}

TEST_CASE("break_cycles frozen cases") {
  SUBCASE("acyclic input is unchanged") {
    WeightedDigraph wd{3, {{0, 1, 0.4}, {1, 2, 0.2}}};
    auto res = break_cycles(wd);
    CHECK(same_weighted(res.graph, wd));
    CHECK(res.removed.empty());
  }

  SUBCASE("2-cycle keeps the heavier edge") {
    WeightedDigraph wd{2, {{0, 1, 0.9}, {1, 0, 0.2}}};
    auto res = break_cycles(wd);
    REQUIRE(res.graph.edges.size() == 1);
    CHECK(res.graph.edges[0].src == 0);
    CHECK(res.graph.edges[0].dst == 1);
    REQUIRE(res.removed.size() == 1);
    CHECK(res.removed[0].src == 1);
    CHECK(res.removed[0].dst == 0);
  }

  SUBCASE("3-cycle with chord drops the lightest edge first") {
    // cycle 0 -> 1 -> 2 -> 0 with weights 0.9, 0.8, 0.1 and a chord 0 -> 2
    WeightedDigraph wd{3, {{0, 1, 0.9}, {1, 2, 0.8}, {2, 0, 0.1}, {0, 2, 0.7}}};
    auto res = break_cycles(wd);
    REQUIRE(res.removed.size() == 1);
    CHECK(res.removed[0].src == 2);
    CHECK(res.removed[0].dst == 0);
    CHECK(oracle::acyclic_by_closure(res.graph.n, plain_edges(res.graph)));
    CHECK(res.graph.edges.size() == 3);
  }

  SUBCASE("equal minimum weights remove the lexicographically smallest edge") {
    WeightedDigraph wd{2, {{0, 1, 0.5}, {1, 0, 0.5}}};
    auto res = break_cycles(wd);
    REQUIRE(res.removed.size() == 1);
    CHECK(res.removed[0].src == 0);
    CHECK(res.removed[0].dst == 1);
  }
}

TEST_CASE("break_cycles always yields a DAG and reports exactly what it removed") {
  std::mt19937_64 rng(777);
  for (int trial = 0; trial < 300; ++trial) {
    int n = 2 + static_cast<int>(gen::rng_below(rng, 7));
    auto wd = (trial % 3 == 0) ? random_tournament(rng, n)
                               : random_weighted(rng, n, 0.5);
    auto res = break_cycles(wd);
    CHECK(oracle::acyclic_by_closure(res.graph.n, plain_edges(res.graph)));

    // kept + removed == input
    WeightedDigraph reunion = res.graph;
    for (const auto& e : res.removed) reunion.edges.push_back(e);
    CHECK(same_weighted(reunion, wd));

    // deterministic
    auto res2 = break_cycles(wd);
    CHECK(same_weighted(res2.graph, res.graph));
    REQUIRE(res2.removed.size() == res.removed.size());

    // raising the weight of a kept edge never gets it removed
    if (!res.graph.edges.empty()) {
      auto raised = wd;
      const auto& kept = res.graph.edges[gen::rng_below(rng, res.graph.edges.size())];
      for (auto& e : raised.edges) {
        if (e.src == kept.src && e.dst == kept.dst) {
          e.weight = std::min(1.0, e.weight + 0.3);
        }
      }
      auto res3 = break_cycles(raised);
      bool still_there = false;
      for (const auto& e : res3.graph.edges) {
        still_there |= (e.src == kept.src && e.dst == kept.dst);
      }
      CHECK(still_there);
    }
  }
}

TEST_CASE("to_script") {
  auto events = gen::numbered_events(3);

  SUBCASE("reduces shortcuts") {
    WeightedDigraph wd{3, {{0, 1, 0.9}, {1, 2, 0.9}, {0, 2, 0.8}}};
    auto g = to_script(wd, events, "a scenario");
    CHECK(g.edges() == EdgeSet{{0, 1}, {1, 2}});
    CHECK(g.scenario() == "a scenario");
    CHECK(g.validate().ok);
  }

  SUBCASE("no edges leaves all events incomparable") {
    auto g = to_script(WeightedDigraph{3, {}}, events, "a scenario");
    CHECK(g.edge_count() == 0);
    CHECK(g.linear_extensions(10).size() == 6);
    CHECK(g.validate().ok);
  }

  SUBCASE("diamond is preserved") {
    WeightedDigraph wd{4, {{0, 1, 0.9}, {0, 2, 0.9}, {1, 3, 0.9}, {2, 3, 0.9}}};
    auto g = to_script(wd, gen::numbered_events(4), "a scenario");
    CHECK(g.edges() == EdgeSet{{0, 1}, {0, 2}, {1, 3}, {2, 3}});
  }

  SUBCASE("cyclic input throws") {
    WeightedDigraph wd{3, {{0, 1, 0.9}, {1, 0, 0.9}}};
    CHECK_THROWS_AS(to_script(wd, events, "a scenario"), CycleError);
  }

  SUBCASE("event list must match node count") {
    CHECK_THROWS_AS(to_script(WeightedDigraph{4, {}}, events, "a scenario"),
                    std::invalid_argument);
  }
}

TEST_CASE("predict_edges") {
  SUBCASE("single event") {
    auto g = predict_edges(gen::numbered_events(1), PairwiseScores::zeros(1), {}, "s");
    CHECK(g.event_count() == 1);
    CHECK(g.edge_count() == 0);
  }

  SUBCASE("uniform 0.5 scores give the deterministic id chain") {
    int n = 5;
    auto s = PairwiseScores::zeros(n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i != j) s.p[i][j] = 0.5;
      }
    }
    auto g = predict_edges(gen::numbered_events(n), s, {}, "s");
    CHECK(g.edges() == EdgeSet{{0, 1}, {1, 2}, {2, 3}, {3, 4}});
    CHECK(g.validate().ok);
  }

  SUBCASE("event count mismatch throws") {
    CHECK_THROWS_AS(predict_edges(gen::numbered_events(2), PairwiseScores::zeros(3), {}, "s"),
                    std::invalid_argument);
  }
}

TEST_CASE("oracle scores reconstruct the gold script exactly") {
  std::mt19937_64 rng(1234);
  for (int trial = 0; trial < 100; ++trial) {
    int n = 1 + static_cast<int>(gen::rng_below(rng, 9));
    auto gold = gen::random_script_graph(rng, n, 0.35, "oracle scenario");
    auto scores = closure_oracle_scores(gold);
    auto predicted = predict_edges(gold.events(), scores, {}, gold.scenario());
    CHECK(predicted == gold);
  }
}

TEST_CASE("scores json codec") {
  const char* text = R"({
    "events": ["gather ingredients", "mix batter", "bake"],
    "p": [[0.0, 0.9, 0.8], [0.1, 0.0, 0.7], [0.0, 0.2, 0.0]],
    "scenario": "bake a cake"
  })";
  auto file = parse_scores_json(text);
  CHECK(file.scenario == "bake a cake");
  REQUIRE(file.events.size() == 3);
  CHECK(file.events[0].text == "gather ingredients");
  CHECK(file.events[2].id == 2);
  CHECK(file.scores.n == 3);
  CHECK(file.scores.p[0][1] == 0.9);

  auto g = predict_edges(file.events, file.scores, {}, file.scenario);
  CHECK(g.edges() == EdgeSet{{0, 1}, {1, 2}});

  SUBCASE("scenario is optional") {
    auto f2 = parse_scores_json(R"({"events": ["a"], "p": [[0.0]]})");
    CHECK(f2.scenario.empty());
    CHECK(f2.scores.n == 1);
  }
  SUBCASE("malformed json") {
    CHECK_THROWS_AS(parse_scores_json("{ not json"), ParseError);
  }
  SUBCASE("schema violations") {
    CHECK_THROWS_AS(parse_scores_json(R"({"p": [[0.0]]})"), std::invalid_argument);
    CHECK_THROWS_AS(parse_scores_json(R"({"events": ["a"]})"), std::invalid_argument);
    CHECK_THROWS_AS(parse_scores_json(R"({"events": ["a", "b"], "p": [[0.0]]})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_scores_json(R"({"events": ["a"], "p": [[0.0, 0.1]]})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_scores_json(R"({"events": [""], "p": [[0.0]]})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_scores_json(R"({"events": ["a", "b"], "p": [[0, 2.0], [0, 0]]})"),
                    std::invalid_argument);
  }
}
