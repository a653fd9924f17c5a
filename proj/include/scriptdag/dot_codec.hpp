#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "scriptdag/script_graph.hpp"

namespace scriptdag {

// Scripts travel as a small DOT subset. Canonical form:
//
//   digraph {
//   step0 [label="gather the ingredients"];
//   step1 [label="preheat the oven"];
//   step0 -> step1;
//   }
//
// One node line per event in id order, then one edge line per edge sorted by
// (src, dst); LF endings; '"' and '\' backslash-escaped inside labels; no
// other attributes, subgraphs or ports. Emission is byte-deterministic.
//
// Plain DOT has no slot for the scenario or for durations, so the codec
// reserves two comment directives:
//
//   // scenario <text>
//   // duration step<i> <bucket> [<seconds estimate>]

struct DotEmitOptions {
  bool scenario_comment = false;
  bool duration_comments = false;
};

/// Scenario applied when neither the parse call nor the text supplies one.
inline constexpr const char* kUnspecifiedScenario = "unspecified scenario";

/// Canonical serialization. Throws std::invalid_argument when the graph does
/// not validate.
std::string emit_dot(const ScriptGraph& g, const DotEmitOptions& opts = {});

struct ParseWarning {
  int line = 0;
  int column = 0;
  std::string code;
  std::string message;
};

struct ParseDiagnostics {
  std::vector<ParseWarning> warnings;
  bool recovered = false;  // true iff at least one warning
};

/// Strict parse of the canonical grammar. The scenario is out-of-band: the
/// parameter wins, else a `// scenario` directive, else the
/// unspecified-scenario placeholder. The result is
/// transitively reduced and validated. Throws ParseError on any deviation
/// from the grammar and CycleError on cyclic edges.
ScriptGraph parse_dot(std::string_view text, std::string scenario = "");

/// Forgiving parse for model output: missing semicolons, unquoted labels,
/// duplicate declarations (last wins), duplicate edges, shortcut edges and
/// cycle-creating edges (dropped in textual order) all recover with a
/// warning. Only input without a `digraph` header throws ParseError. The
/// returned graph always validates.
std::pair<ScriptGraph, ParseDiagnostics> parse_lenient(std::string_view text,
                                                       std::string scenario = "");

}  // namespace scriptdag
