#include "scriptdag/dot_codec.hpp"

#include <random>
#include <string>

#include "doctest.h"
#include "scriptdag/errors.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace scriptdag;

namespace {

bool has_warning(const ParseDiagnostics& d, const std::string& code) {
  for (const auto& w : d.warnings)
    if (w.code == code) return true;
  return false;
}

int count_warnings(const ParseDiagnostics& d, const std::string& code) {
  int n = 0;
  for (const auto& w : d.warnings) n += (w.code == code);
  return n;
}

}  // namespace

TEST_CASE("emit_dot canonical frozen forms") {
  ScriptGraph g("a scenario");
  g.add_event("a");
  g.add_event("b");
  g.add_edge(0, 1);
  CHECK(emit_dot(g) ==
        "digraph {\n"
        "step0 [label=\"a\"];\n"
        "step1 [label=\"b\"];\n"
        "step0 -> step1;\n"
        "}");

  CHECK(emit_dot(ScriptGraph("s")) == "digraph {\n}");
}

TEST_CASE("emit_dot escapes quotes and backslashes") {
  ScriptGraph g("a scenario");
  g.add_event("say \"hi\" \\ wave");
  CHECK(emit_dot(g) ==
        "digraph {\n"
        "step0 [label=\"say \\\"hi\\\" \\\\ wave\"];\n"
        "}");
  auto back = parse_dot(emit_dot(g), g.scenario());
  CHECK(back == g);
}

TEST_CASE("emit_dot orders edges lexicographically") {
  ScriptGraph g("a scenario");
  for (int i = 0; i < 4; ++i) g.add_event("step " + std::to_string(i));
  g.add_edge(2, 3);
  g.add_edge(0, 2);
  g.add_edge(1, 3);
  g.add_edge(0, 1);
  CHECK(emit_dot(g) ==
        "digraph {\n"
        "step0 [label=\"step 0\"];\n"
        "step1 [label=\"step 1\"];\n"
        "step2 [label=\"step 2\"];\n"
        "step3 [label=\"step 3\"];\n"
        "step0 -> step1;\n"
        "step0 -> step2;\n"
        "step1 -> step3;\n"
        "step2 -> step3;\n"
        "}");
}

TEST_CASE("emit_dot rejects graphs that do not validate") {
  auto g = ScriptGraph::from_parts("s", gen::numbered_events(2), {{0, 1}, {0, 1}});
  CHECK_THROWS_AS(emit_dot(g), std::invalid_argument);
}

TEST_CASE("scenario and duration directives round-trip") {
  ScriptGraph g("bake a cake");
  g.add_event("preheat the oven");
  g.add_event("bake the batter");
  g.add_edge(0, 1);
  g.set_duration(0, Duration{DurationBucket::Minutes, 600.0});
  g.set_duration(1, Duration{DurationBucket::Hours, std::nullopt});

  DotEmitOptions opts{.scenario_comment = true, .duration_comments = true};
  auto text = emit_dot(g, opts);
  CHECK(text ==
        "digraph {\n"
        "// scenario bake a cake\n"
        "step0 [label=\"preheat the oven\"];\n"
        "// duration step0 minutes 600\n"
        "step1 [label=\"bake the batter\"];\n"
        "// duration step1 hours\n"
        "step0 -> step1;\n"
        "}");

  auto back = parse_dot(text);
  CHECK(back == g);
  CHECK(back.scenario() == "bake a cake");
  REQUIRE(back.events()[0].duration.has_value());
  CHECK(back.events()[0].duration->bucket == DurationBucket::Minutes);
  CHECK(back.events()[0].duration->seconds_estimate == 600.0);
  REQUIRE(back.events()[1].duration.has_value());
  CHECK_FALSE(back.events()[1].duration->seconds_estimate.has_value());
}

TEST_CASE("parse_dot scenario fallback order") {
  const std::string with_directive = "digraph {\n// scenario tie a tie\n}";
  CHECK(parse_dot(with_directive).scenario() == "tie a tie");
  CHECK(parse_dot(with_directive, "param wins").scenario() == "param wins");
  CHECK(parse_dot("digraph {\n}").scenario() == kUnspecifiedScenario);
}

TEST_CASE("parse_dot strict errors") {
  SUBCASE("edge with undeclared ids") {
    CHECK_THROWS_AS(parse_dot("digraph { step0 -> step1; }"), ParseError);
  }
  SUBCASE("cycle") {
    CHECK_THROWS_AS(parse_dot("digraph {\n"
                              "step0 [label=\"a\"];\n"
                              "step1 [label=\"b\"];\n"
                              "step0 -> step1;\n"
                              "step1 -> step0;\n"
                              "}"),
                    CycleError);
  }
  SUBCASE("missing header") {
    try {
      parse_dot("graph { }");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 1);
      CHECK(e.column() == 1);
    }
  }
  SUBCASE("missing semicolon") {
    CHECK_THROWS_AS(parse_dot("digraph {\nstep0 [label=\"a\"]\n}"), ParseError);
  }
  SUBCASE("unquoted label") {
    CHECK_THROWS_AS(parse_dot("digraph { step0 [label=wash]; }"), ParseError);
  }
  SUBCASE("non-ordinal ids") {
    CHECK_THROWS_AS(parse_dot("digraph {\nstep1 [label=\"a\"];\n}"), ParseError);
    CHECK_THROWS_AS(parse_dot("digraph {\n"
                              "step0 [label=\"a\"];\n"
                              "step2 [label=\"b\"];\n"
                              "}"),
                    ParseError);
    CHECK_THROWS_AS(parse_dot("digraph {\nwash [label=\"a\"];\n}"), ParseError);
  }
  SUBCASE("duplicate declaration and duplicate edge") {
    CHECK_THROWS_AS(parse_dot("digraph {\n"
                              "step0 [label=\"a\"];\n"
                              "step0 [label=\"b\"];\n"
                              "}"),
                    ParseError);
    CHECK_THROWS_AS(parse_dot("digraph {\n"
                              "step0 [label=\"a\"];\n"
                              "step1 [label=\"b\"];\n"
                              "step0 -> step1;\n"
                              "step0 -> step1;\n"
                              "}"),
                    ParseError);
  }
  SUBCASE("self loop") {
    CHECK_THROWS_AS(parse_dot("digraph {\n"
                              "step0 [label=\"a\"];\n"
                              "step0 -> step0;\n"
                              "}"),
                    ParseError);
  }
  SUBCASE("graph name, extra attribute, trailing text") {
    CHECK_THROWS_AS(parse_dot("digraph g {\n}"), ParseError);
    CHECK_THROWS_AS(parse_dot("digraph {\nstep0 [label=\"a\", color=\"red\"];\n}"),
                    ParseError);
    CHECK_THROWS_AS(parse_dot("digraph {\n} trailing"), ParseError);
  }
  SUBCASE("bad duration directive") {
    CHECK_THROWS_AS(parse_dot("digraph {\n"
                              "step0 [label=\"a\"];\n"
                              "// duration step0 fortnights\n"
                              "}"),
                    ParseError);
    CHECK_THROWS_AS(parse_dot("digraph {\n// duration step0 hours\n}"), ParseError);
    // estimate outside the bucket's range fails validation
    CHECK_THROWS_AS(parse_dot("digraph {\n"
                              "step0 [label=\"a\"];\n"
                              "// duration step0 minutes 10\n"
                              "}"),
                    ParseError);
  }
  SUBCASE("error position points at the offending token") {
    try {
      parse_dot("digraph {\nstep0 [label=\"a\"];\nstep0 -> stepX;\n}");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 3);
      CHECK(e.column() == 10);
    }
  }
}

TEST_CASE("parse_dot reduces shortcut edges") {
  auto g = parse_dot(
      "digraph {\n"
      "step0 [label=\"a\"];\n"
      "step1 [label=\"b\"];\n"
      "step2 [label=\"c\"];\n"
      "step0 -> step1;\n"
      "step0 -> step2;\n"
      "step1 -> step2;\n"
      "}");
  CHECK(g.edges() == EdgeSet{{0, 1}, {1, 2}});
}

TEST_CASE("round trip over random graphs") {
  std::mt19937_64 rng(424242);
  for (int trial = 0; trial < 200; ++trial) {
    int n = static_cast<int>(gen::rng_below(rng, 9));
    auto g = gen::random_script_graph(rng, n, 0.35);
    for (int i = 0; i < n; ++i) {
      if (gen::rng_below(rng, 3) != 0) continue;
      auto bucket = static_cast<DurationBucket>(gen::rng_below(rng, 7));
      std::optional<double> estimate;
      if (gen::rng_below(rng, 2) == 0) {
        auto [lo, hi] = duration_bucket_range(bucket);
        hi = std::min(hi, lo * 1000.0);
        estimate = lo + gen::rng_real(rng) * (hi - lo) * 0.99;
      }
      g.set_duration(i, Duration{bucket, estimate});
    }
    auto text = emit_dot(g);
    CHECK(text == emit_dot(g));  // deterministic bytes

    // the bare form drops durations; the directive form keeps everything
    auto stripped = g;
    for (int i = 0; i < n; ++i) stripped.set_duration(i, std::nullopt);
    CHECK(parse_dot(text, g.scenario()) == stripped);

    DotEmitOptions opts{.scenario_comment = true, .duration_comments = true};
    CHECK(parse_dot(emit_dot(g, opts)) == g);

    auto [lg, diag] = parse_lenient(emit_dot(g, opts));
    CHECK(lg == g);
    CHECK_FALSE(diag.recovered);
    CHECK(diag.warnings.empty());
  }
}

TEST_CASE("parse_lenient recovers model-output damage") {
  SUBCASE("duplicate edge") {
    auto [g, diag] = parse_lenient(
        "digraph {\n"
        "step0 [label=\"a\"];\n"
        "step1 [label=\"b\"];\n"
        "step0 -> step1;\n"
        "step0 -> step1;\n"
        "}");
    CHECK(g.edges() == EdgeSet{{0, 1}});
    CHECK(count_warnings(diag, "DUP_EDGE") == 1);
    CHECK(diag.recovered);
  }

  SUBCASE("two-cycle drops the later edge") {
    auto [g, diag] = parse_lenient(
        "digraph {\n"
        "step0 [label=\"a\"];\n"
        "step1 [label=\"b\"];\n"
        "step1 -> step0;\n"
        "step0 -> step1;\n"
        "}");
    CHECK(g.edges() == EdgeSet{{1, 0}});
    CHECK(count_warnings(diag, "CYCLE_DROPPED") == 1);
    CHECK(oracle::acyclic_by_closure(g.event_count(), g.edges()));
    CHECK(g.validate().ok);
  }

  SUBCASE("longer cycle stays a DAG too") {
    auto [g, diag] = parse_lenient(
        "digraph {\n"
        "step0 [label=\"a\"];\n"
        "step1 [label=\"b\"];\n"
        "step2 [label=\"c\"];\n"
        "step0 -> step1;\n"
        "step1 -> step2;\n"
        "step2 -> step0;\n"
        "}");
    CHECK(g.edges() == EdgeSet{{0, 1}, {1, 2}});
    CHECK(has_warning(diag, "CYCLE_DROPPED"));
    CHECK(oracle::acyclic_by_closure(g.event_count(), g.edges()));
  }

  SUBCASE("missing semicolons") {
    auto [g, diag] = parse_lenient(
        "digraph {\n"
        "step0 [label=\"a\"]\n"
        "step1 [label=\"b\"]\n"
        "step0 -> step1\n"
        "}");
    CHECK(g == parse_dot("digraph {\n"
                         "step0 [label=\"a\"];\n"
                         "step1 [label=\"b\"];\n"
                         "step0 -> step1;\n"
                         "}"));
    CHECK(count_warnings(diag, "MISSING_SEMI") == 3);
  }

  SUBCASE("unquoted label") {
    auto [g, diag] = parse_lenient("digraph { step0 [label=wash]; }");
    CHECK(g.events()[0].text == "wash");
    CHECK(has_warning(diag, "UNQUOTED_LABEL"));
  }

  SUBCASE("duplicate declaration, last wins") {
    auto [g, diag] = parse_lenient(
        "digraph {\n"
        "step0 [label=\"first\"];\n"
        "step0 [label=\"second\"];\n"
        "}");
    CHECK(g.event_count() == 1);
    CHECK(g.events()[0].text == "second");
    CHECK(count_warnings(diag, "DUP_NODE") == 1);
  }

  SUBCASE("shortcut edge is reduced with a warning") {
    auto [g, diag] = parse_lenient(
        "digraph {\n"
        "step0 [label=\"a\"];\n"
        "step1 [label=\"b\"];\n"
        "step2 [label=\"c\"];\n"
        "step0 -> step1;\n"
        "step0 -> step2;\n"
        "step1 -> step2;\n"
        "}");
    CHECK(g.edges() == EdgeSet{{0, 1}, {1, 2}});
    CHECK(count_warnings(diag, "SHORTCUT_EDGE") == 1);
  }

  SUBCASE("free-form identifiers become events") {
    auto [g, diag] = parse_lenient("digraph { wash -> dry; }", "do laundry");
    CHECK(g.event_count() == 2);
    CHECK(g.events()[0].text == "wash");
    CHECK(g.events()[1].text == "dry");
    CHECK(g.edges() == EdgeSet{{0, 1}});
    CHECK(has_warning(diag, "UNDECLARED_ID"));
    CHECK(g.validate().ok);
  }

  SUBCASE("edge chains expand") {
    auto [g, diag] = parse_lenient(
        "digraph {\n"
        "step0 [label=\"a\"];\n"
        "step1 [label=\"b\"];\n"
        "step2 [label=\"c\"];\n"
        "step0 -> step1 -> step2;\n"
        "}");
    CHECK(g.edges() == EdgeSet{{0, 1}, {1, 2}});
    CHECK(has_warning(diag, "EDGE_CHAIN"));
  }

  SUBCASE("graph name, junk statement, self loop, trailing text") {
    auto [g, diag] = parse_lenient(
        "digraph output {\n"
        "rankdir = LR;\n"
        "step0 [label=\"a\"];\n"
        "step0 -> step0;\n"
        "}\n"
        "done.");
    CHECK(g.event_count() == 1);
    CHECK(g.edge_count() == 0);
    CHECK(has_warning(diag, "HEADER_NAME"));
    CHECK(has_warning(diag, "SKIPPED_STMT"));
    CHECK(has_warning(diag, "SELF_LOOP"));
    CHECK(has_warning(diag, "TRAILING_TEXT"));
    CHECK(g.validate().ok);
  }

  SUBCASE("extra attributes are ignored") {
    auto [g, diag] = parse_lenient(
        "digraph { step0 [label=\"a\", color=\"red\"]; }");
    CHECK(g.events()[0].text == "a");
    CHECK(has_warning(diag, "EXTRA_ATTR"));
  }

  SUBCASE("headerless garbage still fails") {
    CHECK_THROWS_AS(parse_lenient("not a graph at all"), ParseError);
    CHECK_THROWS_AS(parse_lenient(""), ParseError);
  }

  SUBCASE("crlf input recovers") {
    auto [g, diag] = parse_lenient("digraph {\r\nstep0 [label=\"a\"];\r\n}");
    CHECK(g.event_count() == 1);
    CHECK(has_warning(diag, "CRLF"));
    CHECK_THROWS_AS(parse_dot("digraph {\r\n}"), ParseError);
  }

  SUBCASE("lenient output always validates") {
    const char* nasty[] = {
        "digraph { a -> b -> a -> c; }",
        "digraph { x [label=\"\"]; x -> y }",
        "digraph {\nstep0 [label=\"a\"];\nstep0 -> step0;\nstep0 -> step1\n}",
        "digraph g { 1 2 3; wash; dry [shape=box]; wash -> dry; dry -> wash; }",
    };
    for (const char* text : nasty) {
      auto [g, diag] = parse_lenient(text);
      CHECK(g.validate().ok);
      CHECK(diag.recovered);
      CHECK(oracle::acyclic_by_closure(g.event_count(), g.edges()));
    }
  }
}
