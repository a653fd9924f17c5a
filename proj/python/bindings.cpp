#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "scriptdag/aggregation.hpp"
#include "scriptdag/baselines.hpp"
#include "scriptdag/dataset.hpp"
#include "scriptdag/dot_codec.hpp"
#include "scriptdag/errors.hpp"
#include "scriptdag/metrics.hpp"
#include "scriptdag/script_graph.hpp"

namespace py = pybind11;

namespace scriptdag {
namespace {

// Durations cross the boundary as None, "bucket", or ("bucket", seconds).
std::optional<Duration> duration_from_py(const py::object& obj) {
  if (obj.is_none()) return std::nullopt;
  Duration d;
  std::string bucket;
  if (py::isinstance<py::str>(obj)) {
    bucket = obj.cast<std::string>();
  } else {
    auto pair = obj.cast<std::pair<std::string, double>>();
    bucket = pair.first;
    d.seconds_estimate = pair.second;
  }
  auto parsed = duration_bucket_from_string(bucket);
  if (!parsed) throw std::invalid_argument("unknown duration bucket \"" + bucket + "\"");
  d.bucket = *parsed;
  return d;
}

py::object duration_to_py(const std::optional<Duration>& d) {
  if (!d) return py::none();
  py::str bucket(std::string(to_string(d->bucket)));
  if (!d->seconds_estimate) return bucket;
  return py::make_tuple(bucket, *d->seconds_estimate);
}

// Event lists arrive as strings (ids become positions) or EventNode objects.
std::vector<EventNode> events_from_py(const py::sequence& seq) {
  std::vector<EventNode> events;
  events.reserve(py::len(seq));
  for (py::handle item : seq) {
    if (py::isinstance<py::str>(item)) {
      events.push_back({static_cast<int>(events.size()), item.cast<std::string>(), std::nullopt});
    } else {
      events.push_back(item.cast<EventNode>());
    }
  }
  return events;
}

template <typename Enum>
Enum parse_choice(const std::string& value,
                  std::initializer_list<std::pair<const char*, Enum>> table,
                  const char* what) {
  for (const auto& [name, member] : table)
    if (value == name) return member;
  throw std::invalid_argument(std::string("unknown ") + what + " \"" + value + "\"");
}

EdgePrfConfig make_prf_config(const std::string& convention, const std::string& match_by,
                              bool strict_labels) {
  EdgePrfConfig cfg;
  cfg.convention = parse_choice<Convention>(
      convention, {{"standard", Convention::Standard}, {"paper-literal", Convention::PaperLiteral}},
      "convention");
  cfg.match_by = parse_choice<MatchBy>(
      match_by, {{"id", MatchBy::Id}, {"label", MatchBy::Label}}, "match mode");
  cfg.strict_labels = strict_labels;
  return cfg;
}

GedConfig make_ged_config(const std::string& node_match, int max_exact_nodes,
                          const std::string& edge_rep_mode, bool include_virtual,
                          const py::object& costs) {
  GedConfig cfg;
  cfg.node_match = parse_choice<GedConfig::NodeMatch>(
      node_match,
      {{"exact", GedConfig::NodeMatch::Exact}, {"normalized", GedConfig::NodeMatch::Normalized}},
      "node match");
  cfg.edge_rep_mode = parse_choice<GedConfig::EdgeRepMode>(
      edge_rep_mode,
      {{"off", GedConfig::EdgeRepMode::Off}, {"endpoint-rep", GedConfig::EdgeRepMode::EndpointRep}},
      "edge replace mode");
  cfg.max_exact_nodes = max_exact_nodes;
  cfg.include_virtual = include_virtual;
  if (!costs.is_none()) {
    auto table = costs.cast<py::dict>();
    for (auto item : table) {
      auto key = item.first.cast<std::string>();
      double value = item.second.cast<double>();
      if (key == "v_del") cfg.costs.v_del = value;
      else if (key == "v_ins") cfg.costs.v_ins = value;
      else if (key == "v_rep") cfg.costs.v_rep = value;
      else if (key == "e_del") cfg.costs.e_del = value;
      else if (key == "e_ins") cfg.costs.e_ins = value;
      else if (key == "e_rep") cfg.costs.e_rep = value;
      else throw std::invalid_argument("unknown cost \"" + key + "\"");
    }
  }
  return cfg;
}

RandomPolicy make_policy(const std::string& kind, double p_branch, std::uint64_t seed) {
  RandomPolicy policy;
  policy.kind = parse_choice<RandomPolicy::Kind>(
      kind, {{"random-chain", RandomPolicy::Kind::Chain}, {"random-dag", RandomPolicy::Kind::Dag}},
      "baseline policy");
  policy.p_branch = p_branch;
  policy.seed = seed;
  return policy;
}

py::dict ops_to_dict(const GedOpCounts& ops) {
  py::dict d;
  d["v_del"] = ops.v_del;
  d["v_ins"] = ops.v_ins;
  d["v_rep"] = ops.v_rep;
  d["e_del"] = ops.e_del;
  d["e_ins"] = ops.e_ins;
  d["e_rep"] = ops.e_rep;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Partially ordered scripts: DAG construction, DOT codec, score "
            "aggregation, edge F1 and graph edit distance.";

  py::register_exception<CycleError>(m, "CycleError");
  py::register_exception<ParseError>(m, "ParseError");
  py::register_exception<SizeLimitError>(m, "SizeLimitError");

  m.attr("ROOT_ID") = kRootId;
  m.attr("LEAF_ID") = kLeafId;
  m.attr("UNSPECIFIED_SCENARIO") = kUnspecifiedScenario;

  m.def("normalize_label", &normalize_label, py::arg("text"),
        "Lowercase, trim and collapse whitespace; the comparison key used "
        "everywhere two graphs meet.");

  py::class_<EventNode>(m, "Event")
      .def(py::init([](int id, const std::string& text, const py::object& duration) {
             return EventNode{id, text, duration_from_py(duration)};
           }),
           py::arg("id"), py::arg("text"), py::arg("duration") = py::none())
      .def_readwrite("id", &EventNode::id)
      .def_readwrite("text", &EventNode::text)
      .def_property(
          "duration", [](const EventNode& e) { return duration_to_py(e.duration); },
          [](EventNode& e, const py::object& d) { e.duration = duration_from_py(d); })
      .def("__eq__", [](const EventNode& a, const EventNode& b) { return a == b; })
      .def("__repr__", [](const EventNode& e) {
        return "Event(" + std::to_string(e.id) + ", \"" + e.text + "\")";
      });

  py::class_<Violation>(m, "Violation")
      .def_readonly("code", &Violation::code)
      .def_readonly("message", &Violation::message)
      .def_readonly("element", &Violation::element)
      .def("__repr__", [](const Violation& v) {
        return "Violation(" + v.code + ": " + v.message + ")";
      });

  py::class_<ValidationReport>(m, "ValidationReport")
      .def_readonly("ok", &ValidationReport::ok)
      .def_readonly("violations", &ValidationReport::violations)
      .def("__bool__", [](const ValidationReport& r) { return r.ok; });

  py::class_<ScriptGraph>(m, "ScriptGraph")
      .def(py::init<std::string>(), py::arg("scenario"))
      .def_static(
          "from_parts",
          [](const std::string& scenario, const py::sequence& events, const EdgeSet& edges) {
            return ScriptGraph::from_parts(scenario, events_from_py(events), edges);
          },
          py::arg("scenario"), py::arg("events"), py::arg("edges"),
          "Unchecked assembly; pair with validate().")
      .def(
          "add_event",
          [](ScriptGraph& g, const std::string& text, const py::object& duration) {
            return g.add_event(text, duration_from_py(duration));
          },
          py::arg("text"), py::arg("duration") = py::none())
      .def(
          "add_edge",
          [](ScriptGraph& g, int src, int dst) {
            return g.add_edge(src, dst) == ScriptGraph::EdgeOutcome::Added ? "added" : "redundant";
          },
          py::arg("src"), py::arg("dst"))
      .def(
          "set_duration",
          [](ScriptGraph& g, int id, const py::object& duration) {
            g.set_duration(id, duration_from_py(duration));
          },
          py::arg("id"), py::arg("duration"))
      .def("validate", &ScriptGraph::validate)
      .def_property_readonly("scenario", &ScriptGraph::scenario)
      .def_property_readonly("events", &ScriptGraph::events)
      .def_property_readonly("edges", &ScriptGraph::edges)
      .def("event_count", &ScriptGraph::event_count)
      .def("edge_count", &ScriptGraph::edge_count)
      .def("augmented_edges", &ScriptGraph::augmented_edges)
      .def("closure", &ScriptGraph::closure)
      .def(
          "max_degree",
          [](const ScriptGraph& g, const std::string& kind, bool include_virtual) {
            auto k = parse_choice<DegreeKind>(kind,
                                              {{"max-in-out", DegreeKind::MaxInOut},
                                               {"in", DegreeKind::In},
                                               {"out", DegreeKind::Out},
                                               {"total", DegreeKind::Total}},
                                              "degree kind");
            return g.max_degree(k, include_virtual);
          },
          py::arg("kind") = "max-in-out", py::arg("include_virtual") = false)
      .def("linear_extensions", &ScriptGraph::linear_extensions, py::arg("limit"))
      .def("__len__", &ScriptGraph::event_count)
      .def("__eq__", [](const ScriptGraph& a, const ScriptGraph& b) { return a == b; })
      .def("__repr__", [](const ScriptGraph& g) {
        return "ScriptGraph(\"" + g.scenario() + "\", events=" + std::to_string(g.event_count()) +
               ", edges=" + std::to_string(g.edge_count()) + ")";
      });

  // Relation helpers on plain (n, edges) pairs.
  m.def("is_acyclic", &is_acyclic, py::arg("n"), py::arg("edges"));
  m.def("topological_order", &topological_order, py::arg("n"), py::arg("edges"));
  m.def("transitive_closure", &transitive_closure, py::arg("n"), py::arg("edges"));
  m.def("transitive_reduction", &transitive_reduction, py::arg("n"), py::arg("edges"));

  // DOT codec.
  py::class_<ParseWarning>(m, "ParseWarning")
      .def_readonly("line", &ParseWarning::line)
      .def_readonly("column", &ParseWarning::column)
      .def_readonly("code", &ParseWarning::code)
      .def_readonly("message", &ParseWarning::message)
      .def("__repr__", [](const ParseWarning& w) {
        return "ParseWarning(" + w.code + " at line " + std::to_string(w.line) + ")";
      });

  m.def(
      "emit_dot",
      [](const ScriptGraph& g, bool scenario_comment, bool duration_comments) {
        return emit_dot(g, {scenario_comment, duration_comments});
      },
      py::arg("graph"), py::arg("scenario_comment") = false, py::arg("duration_comments") = false,
      "Canonical DOT serialization; byte-deterministic.");
  m.def("parse_dot", &parse_dot, py::arg("text"), py::arg("scenario") = std::string(),
        "Strict parse of the canonical grammar.");
  m.def(
      "parse_lenient",
      [](std::string_view text, std::string scenario) {
        auto [graph, diagnostics] = parse_lenient(text, std::move(scenario));
        return py::make_tuple(std::move(graph), diagnostics.warnings);
      },
      py::arg("text"), py::arg("scenario") = std::string(),
      "Forgiving parse for model output; returns (graph, warnings).");

  // Pairwise-score aggregation.
  m.def(
      "predict_edges",
      [](const py::sequence& events, const std::vector<std::vector<double>>& p,
         const std::string& scenario, const std::string& policy, double tau,
         bool strict_complement) {
        PairwiseScores scores;
        scores.n = static_cast<int>(p.size());
        scores.p = p;
        AggregationConfig cfg;
        cfg.policy = parse_choice<EdgePolicy>(
            policy, {{"argmax-pair", EdgePolicy::ArgmaxPair}, {"threshold", EdgePolicy::Threshold}},
            "edge policy");
        cfg.tau = tau;
        cfg.strict_complement = strict_complement;
        return predict_edges(events_from_py(events), scores, cfg, scenario);
      },
      py::arg("events"), py::arg("p"), py::arg("scenario") = std::string(kUnspecifiedScenario),
      py::arg("policy") = "argmax-pair", py::arg("tau") = 0.5,
      py::arg("strict_complement") = false,
      "Aggregate an n x n precedence-probability matrix into a script DAG "
      "(direction pick, greedy cycle break, transitive reduction).");

  // Metrics.
  py::class_<PrfScore>(m, "PrfScore")
      .def_readonly("precision", &PrfScore::precision)
      .def_readonly("recall", &PrfScore::recall)
      .def_readonly("f1", &PrfScore::f1)
      .def("__eq__", [](const PrfScore& a, const PrfScore& b) { return a == b; })
      .def("__iter__",
           [](const PrfScore& s) {
             return py::iter(py::make_tuple(s.precision, s.recall, s.f1));
           })
      .def("__repr__", [](const PrfScore& s) {
        return "PrfScore(precision=" + std::to_string(s.precision) +
               ", recall=" + std::to_string(s.recall) + ", f1=" + std::to_string(s.f1) + ")";
      });

  m.def(
      "edge_prf",
      [](const ScriptGraph& pred, const ScriptGraph& gold, const std::string& convention,
         const std::string& match_by, bool strict_labels) {
        return edge_prf(pred, gold, make_prf_config(convention, match_by, strict_labels));
      },
      py::arg("pred"), py::arg("gold"), py::arg("convention") = "standard",
      py::arg("match_by") = "label", py::arg("strict_labels") = false,
      "Edge precision/recall/F1 over the reduced edge sets.");

  py::class_<EditOp>(m, "EditOp")
      .def_property_readonly("kind",
                             [](const EditOp& op) { return std::string(to_string(op.kind)); })
      .def_readonly("node", &EditOp::node)
      .def_readonly("edge", &EditOp::edge)
      .def_readonly("old_label", &EditOp::old_label)
      .def_readonly("new_label", &EditOp::new_label)
      .def_readonly("cost", &EditOp::cost)
      .def("__repr__", [](const EditOp& op) {
        std::string where = op.node >= 0 ? std::to_string(op.node)
                                         : "(" + std::to_string(op.edge.first) + ", " +
                                               std::to_string(op.edge.second) + ")";
        return "EditOp(" + std::string(to_string(op.kind)) + " " + where + ")";
      });

  py::class_<EditScript>(m, "EditScript")
      .def_readonly("ops", &EditScript::ops)
      .def_readonly("total_cost", &EditScript::total_cost)
      .def_readonly("mapping", &EditScript::mapping)
      .def("breakdown", [](const EditScript& es) { return ops_to_dict(ged_breakdown(es)); });

  py::class_<GedResult>(m, "GedResult")
      .def_readonly("cost", &GedResult::cost)
      .def_readonly("script", &GedResult::script)
      .def("__repr__",
           [](const GedResult& r) { return "GedResult(cost=" + std::to_string(r.cost) + ")"; });

  m.def(
      "ged",
      [](const ScriptGraph& g1, const ScriptGraph& g2, const std::string& node_match,
         int max_exact_nodes, const std::string& edge_rep_mode, bool include_virtual,
         const py::object& costs) {
        return ged(g1, g2,
                   make_ged_config(node_match, max_exact_nodes, edge_rep_mode, include_virtual,
                                   costs));
      },
      py::arg("g1"), py::arg("g2"), py::arg("node_match") = "normalized",
      py::arg("max_exact_nodes") = 12, py::arg("edge_rep_mode") = "off",
      py::arg("include_virtual") = false, py::arg("costs") = py::none(),
      "Exact minimum-cost edit path; raises SizeLimitError above max_exact_nodes.");
  m.def(
      "ged_approx",
      [](const ScriptGraph& g1, const ScriptGraph& g2, std::size_t beam,
         const std::string& node_match, int max_exact_nodes, const std::string& edge_rep_mode,
         bool include_virtual, const py::object& costs) {
        return ged_approx(g1, g2,
                          make_ged_config(node_match, max_exact_nodes, edge_rep_mode,
                                          include_virtual, costs),
                          beam);
      },
      py::arg("g1"), py::arg("g2"), py::arg("beam") = std::size_t{64},
      py::arg("node_match") = "normalized", py::arg("max_exact_nodes") = 12,
      py::arg("edge_rep_mode") = "off", py::arg("include_virtual") = false,
      py::arg("costs") = py::none(), "Beam-limited upper bound on the exact edit cost.");

  // Corpus I/O and statistics.
  py::class_<CorpusRecord>(m, "CorpusRecord")
      .def(py::init<>())
      .def_readwrite("id", &CorpusRecord::id)
      .def_readwrite("scenario", &CorpusRecord::scenario)
      .def_property(
          "source",
          [](const CorpusRecord& r) { return std::string(to_string(r.source)); },
          [](CorpusRecord& r, const std::string& s) {
            auto parsed = source_from_string(s);
            if (!parsed) throw std::invalid_argument("unknown source \"" + s + "\"");
            r.source = *parsed;
          })
      .def_property(
          "split", [](const CorpusRecord& r) { return std::string(to_string(r.split)); },
          [](CorpusRecord& r, const std::string& s) {
            auto parsed = split_from_string(s);
            if (!parsed) throw std::invalid_argument("unknown split \"" + s + "\"");
            r.split = *parsed;
          })
      .def_readwrite("events", &CorpusRecord::events)
      .def_readwrite("edges", &CorpusRecord::edges)
      .def_readwrite("alt_edges", &CorpusRecord::alt_edges)
      .def_readwrite("parent_id", &CorpusRecord::parent_id)
      .def_readwrite("parent_edge", &CorpusRecord::parent_edge)
      .def("graph", &record_graph, py::arg("alt") = false,
           "ScriptGraph view of this record (edges transitively reduced).")
      .def("to_json_line", &record_to_json_line)
      .def("__eq__", [](const CorpusRecord& a, const CorpusRecord& b) { return a == b; })
      .def("__repr__",
           [](const CorpusRecord& r) { return "CorpusRecord(\"" + r.id + "\")"; });

  py::class_<InvalidRecord>(m, "InvalidRecord")
      .def_readonly("line", &InvalidRecord::line)
      .def_readonly("code", &InvalidRecord::code)
      .def_readonly("message", &InvalidRecord::message)
      .def("__repr__", [](const InvalidRecord& r) {
        return "InvalidRecord(line " + std::to_string(r.line) + ", " + r.code + ")";
      });

  py::class_<LoadWarning>(m, "LoadWarning")
      .def_readonly("line", &LoadWarning::line)
      .def_readonly("id", &LoadWarning::id)
      .def_readonly("message", &LoadWarning::message);

  py::class_<Corpus>(m, "Corpus")
      .def(py::init<>())
      .def_readwrite("records", &Corpus::records)
      .def_readonly("invalid", &Corpus::invalid)
      .def_readonly("warnings", &Corpus::warnings)
      .def("__len__", [](const Corpus& c) { return c.records.size(); });

  m.def("load_jsonl", &load_jsonl, py::arg("path"),
        "Load a JSONL corpus; malformed lines are quarantined, not dropped.");
  m.def("save_jsonl", &save_jsonl, py::arg("corpus"), py::arg("path"),
        "Canonical re-serialization; loss-free against load_jsonl.");
  m.def("agreement_f1", &agreement_f1, py::arg("record"),
        "Edge F1 between the two annotators of one record.");

  py::class_<FilterResult>(m, "FilterResult")
      .def_readonly("kept", &FilterResult::kept)
      .def_readonly("rejected", &FilterResult::rejected)
      .def_readonly("warnings", &FilterResult::warnings);

  m.def("agreement_filter", &agreement_filter, py::arg("corpus"), py::arg("threshold") = 65.0,
        "Keep records whose annotator agreement reaches the threshold "
        "(F1 scaled by 100).");

  py::class_<CorpusStats>(m, "CorpusStats")
      .def_readonly("n_scripts", &CorpusStats::n_scripts)
      .def_readonly("by_split", &CorpusStats::by_split)
      .def_readonly("by_source", &CorpusStats::by_source)
      .def_readonly("mean_events", &CorpusStats::mean_events)
      .def_readonly("degree_hist", &CorpusStats::degree_hist)
      .def_readonly("duration_hist", &CorpusStats::duration_hist)
      .def_readonly("edge_count_hist", &CorpusStats::edge_count_hist)
      .def("to_json", &stats_to_json)
      .def("to_csv", &stats_to_csv);

  m.def("corpus_stats", &corpus_stats, py::arg("corpus"));

  // Corpus-level evaluation.
  py::class_<GedOpCounts>(m, "GedOpCounts")
      .def_readonly("v_del", &GedOpCounts::v_del)
      .def_readonly("v_ins", &GedOpCounts::v_ins)
      .def_readonly("v_rep", &GedOpCounts::v_rep)
      .def_readonly("e_del", &GedOpCounts::e_del)
      .def_readonly("e_ins", &GedOpCounts::e_ins)
      .def_readonly("e_rep", &GedOpCounts::e_rep)
      .def("as_dict", &ops_to_dict);

  py::class_<ScriptScore>(m, "ScriptScore")
      .def_readonly("id", &ScriptScore::id)
      .def_readonly("prf", &ScriptScore::prf)
      .def_readonly("ged_cost", &ScriptScore::ged_cost)
      .def_readonly("ops", &ScriptScore::ops)
      .def_readonly("notes", &ScriptScore::notes);

  py::class_<EvalReport>(m, "EvalReport")
      .def_readonly("scripts", &EvalReport::scripts)
      .def_readonly("n_scripts", &EvalReport::n_scripts)
      .def_readonly("macro_prf", &EvalReport::macro_prf)
      .def_readonly("macro_ged", &EvalReport::macro_ged)
      .def_readonly("macro_ops", &EvalReport::macro_ops)
      .def("to_json", &report_to_json)
      .def("to_tsv", &report_to_tsv);

  py::class_<ScoredPair>(m, "ScoredPair")
      .def(py::init<std::string, ScriptGraph, std::vector<ScriptGraph>>(), py::arg("id"),
           py::arg("pred"), py::arg("golds"))
      .def_readwrite("id", &ScoredPair::id)
      .def_readwrite("pred", &ScoredPair::pred)
      .def_readwrite("golds", &ScoredPair::golds)
      .def_readwrite("notes", &ScoredPair::notes);

  m.def(
      "corpus_report",
      [](const std::vector<ScoredPair>& pairs, bool edges, bool with_ged,
         const std::string& convention, const std::string& match_by, bool strict_labels,
         const std::string& node_match, int max_exact_nodes, const std::string& edge_rep_mode,
         bool include_virtual, std::size_t approx_beam, int jobs) {
        ReportConfig cfg;
        cfg.edges = edges;
        cfg.ged = with_ged;
        cfg.prf = make_prf_config(convention, match_by, strict_labels);
        cfg.ged_cfg =
            make_ged_config(node_match, max_exact_nodes, edge_rep_mode, include_virtual,
                            py::none());
        cfg.approx_beam = approx_beam;
        cfg.jobs = jobs;
        return corpus_report(pairs, cfg);
      },
      py::arg("pairs"), py::arg("edges") = true, py::arg("ged") = false,
      py::arg("convention") = "standard", py::arg("match_by") = "label",
      py::arg("strict_labels") = false, py::arg("node_match") = "normalized",
      py::arg("max_exact_nodes") = 12, py::arg("edge_rep_mode") = "off",
      py::arg("include_virtual") = false, py::arg("approx_beam") = std::size_t{64},
      py::arg("jobs") = 1,
      "Score predictions against their golds and macro-average in input order.");

  // Random baselines.
  m.def(
      "random_script",
      [](const py::sequence& events, const std::string& scenario, const std::string& kind,
         double p_branch, std::uint64_t seed) {
        return random_script(events_from_py(events), scenario, make_policy(kind, p_branch, seed));
      },
      py::arg("events"), py::arg("scenario"), py::arg("kind") = "random-chain",
      py::arg("p_branch") = 0.3, py::arg("seed") = std::uint64_t{0},
      "Seed-deterministic random script over the given events.");
  m.def(
      "random_baseline_eval",
      [](const Corpus& corpus, const std::string& kind, double p_branch, std::uint64_t seed,
         bool edges, bool with_ged, int max_exact_nodes, std::size_t approx_beam, int jobs) {
        BaselineEvalConfig cfg;
        cfg.edges = edges;
        cfg.ged = with_ged;
        cfg.ged_cfg.max_exact_nodes = max_exact_nodes;
        cfg.approx_beam = approx_beam;
        cfg.jobs = jobs;
        return random_baseline_eval(corpus, make_policy(kind, p_branch, seed), cfg);
      },
      py::arg("corpus"), py::arg("kind") = "random-chain", py::arg("p_branch") = 0.3,
      py::arg("seed") = std::uint64_t{0}, py::arg("edges") = true, py::arg("ged") = false,
      py::arg("max_exact_nodes") = 12, py::arg("approx_beam") = std::size_t{64},
      py::arg("jobs") = 1,
      "Score a seed-deterministic random baseline against every record's "
      "primary annotation.");
}

}  // namespace scriptdag
