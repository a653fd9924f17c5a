#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "nlohmann/json.hpp"
#include "scriptdag/dataset.hpp"
#include "scriptdag/metrics.hpp"

namespace scriptdag {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void schema_error(const std::string& message) {
  throw std::invalid_argument(message);
}

void check_fields(const json& j, const char* what, std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : j.items()) {
    if (std::find_if(allowed.begin(), allowed.end(),
                     [&](const char* name) { return key == name; }) == allowed.end()) {
      schema_error(std::string("unknown ") + what + " field \"" + key + "\"");
    }
  }
}

std::string require_string(const json& j, const char* field) {
  if (!j.contains(field)) schema_error(std::string("missing field \"") + field + "\"");
  const json& v = j.at(field);
  if (!v.is_string() || v.get<std::string>().empty()) {
    schema_error(std::string("field \"") + field + "\" must be a non-empty string");
  }
  return v.get<std::string>();
}

Edge parse_pair(const json& v, const char* field) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number_integer() || !v[1].is_number_integer()) {
    schema_error(std::string("field \"") + field + "\" must hold [src, dst] integer pairs");
  }
  return {v[0].get<int>(), v[1].get<int>()};
}

EdgeSet parse_edges(const json& j, const char* field) {
  const json& v = j.at(field);
  if (!v.is_array()) schema_error(std::string("field \"") + field + "\" must be an array");
  EdgeSet edges;
  edges.reserve(v.size());
  for (const json& item : v) edges.push_back(parse_pair(item, field));
  return edges;
}

std::vector<EventNode> parse_events(const json& j) {
  if (!j.contains("events")) schema_error("missing field \"events\"");
  const json& v = j.at("events");
  if (!v.is_array() || v.empty()) schema_error("field \"events\" must be a non-empty array");

  std::vector<EventNode> events;
  events.reserve(v.size());
  for (const json& item : v) {
    if (!item.is_object()) schema_error("events must be JSON objects");
    check_fields(item, "event", {"id", "text", "duration"});
    if (!item.contains("id") || !item.at("id").is_number_integer()) {
      schema_error("event field \"id\" must be an integer");
    }
    EventNode ev;
    ev.id = item.at("id").get<int>();
    ev.text = require_string(item, "text");
    if (item.contains("duration")) {
      const json& d = item.at("duration");
      if (!d.is_object()) schema_error("event field \"duration\" must be an object");
      check_fields(d, "duration", {"bucket", "seconds_estimate"});
      auto bucket = duration_bucket_from_string(require_string(d, "bucket"));
      if (!bucket) {
        schema_error("unknown duration bucket \"" + d.at("bucket").get<std::string>() + "\"");
      }
      Duration dur{*bucket, std::nullopt};
      if (d.contains("seconds_estimate")) {
        if (!d.at("seconds_estimate").is_number()) {
          schema_error("duration field \"seconds_estimate\" must be a number");
        }
        dur.seconds_estimate = d.at("seconds_estimate").get<double>();
      }
      ev.duration = dur;
    }
    events.push_back(std::move(ev));
  }
  return events;
}

CorpusRecord record_from_json(const json& j) {
  if (!j.is_object()) schema_error("record is not a JSON object");
  check_fields(j, "record",
               {"id", "scenario", "source", "split", "events", "edges", "alt_edges", "parent_id",
                "parent_edge"});

  CorpusRecord rec;
  rec.id = require_string(j, "id");
  rec.scenario = require_string(j, "scenario");
  if (j.contains("source")) {
    auto source = source_from_string(require_string(j, "source"));
    if (!source) schema_error("unknown source \"" + j.at("source").get<std::string>() + "\"");
    rec.source = *source;
  }
  if (j.contains("split")) {
    auto split = split_from_string(require_string(j, "split"));
    if (!split) schema_error("unknown split \"" + j.at("split").get<std::string>() + "\"");
    rec.split = *split;
  }
  rec.events = parse_events(j);
  if (!j.contains("edges")) schema_error("missing field \"edges\"");
  rec.edges = parse_edges(j, "edges");
  if (j.contains("alt_edges")) rec.alt_edges = parse_edges(j, "alt_edges");
  if (j.contains("parent_id")) rec.parent_id = require_string(j, "parent_id");
  if (j.contains("parent_edge")) rec.parent_edge = parse_pair(j.at("parent_edge"), "parent_edge");
  return rec;
}

// Ingestion accepts unreduced DAGs; everything else validate() flags is fatal.
std::string graph_problem(const CorpusRecord& rec, const EdgeSet& edges, const char* what) {
  auto report = ScriptGraph::from_parts(rec.scenario, rec.events, edges).validate();
  for (const auto& v : report.violations) {
    if (v.code == "NOT_REDUCED") continue;
    return std::string(what) + ": " + v.message + " (" + v.element + ")";
  }
  return {};
}

}  // namespace

std::string_view to_string(Source s) {
  switch (s) {
    case Source::RocStories: return "rocstories";
    case Source::Descript: return "descript";
    case Source::VirtualHome: return "virtualhome";
    case Source::Other: return "other";
  }
  return "other";
}

std::string_view to_string(Split s) {
  switch (s) {
    case Split::Train: return "train";
    case Split::Dev: return "dev";
    case Split::Test: return "test";
  }
  return "train";
}

std::optional<Source> source_from_string(std::string_view s) {
  if (s == "rocstories") return Source::RocStories;
  if (s == "descript") return Source::Descript;
  if (s == "virtualhome") return Source::VirtualHome;
  if (s == "other") return Source::Other;
  return std::nullopt;
}

std::optional<Split> split_from_string(std::string_view s) {
  if (s == "train") return Split::Train;
  if (s == "dev") return Split::Dev;
  if (s == "test") return Split::Test;
  return std::nullopt;
}

ScriptGraph record_graph(const CorpusRecord& rec, bool alt) {
  if (alt && !rec.alt_edges) {
    throw std::invalid_argument("record_graph: record \"" + rec.id + "\" has no alt_edges");
  }
  const EdgeSet& edges = alt ? *rec.alt_edges : rec.edges;
  int n = static_cast<int>(rec.events.size());
  return ScriptGraph::from_parts(rec.scenario, rec.events, transitive_reduction(n, edges));
}

Corpus load_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("load_jsonl: cannot open " + path.string());

  Corpus corpus;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;

    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      corpus.invalid.push_back({lineno, "JSON_ERROR", e.what()});
      continue;
    }

    CorpusRecord rec;
    try {
      rec = record_from_json(j);
    } catch (const std::invalid_argument& e) {
      corpus.invalid.push_back({lineno, "SCHEMA_ERROR", e.what()});
      continue;
    }

    std::string problem = graph_problem(rec, rec.edges, "edges");
    if (problem.empty() && rec.alt_edges) {
      problem = graph_problem(rec, *rec.alt_edges, "alt_edges");
    }
    if (!problem.empty()) {
      corpus.invalid.push_back({lineno, "DAG_ERROR", "record \"" + rec.id + "\": " + problem});
      continue;
    }

    if (rec.events.size() < 2 || rec.events.size() > 12) {
      corpus.warnings.push_back({lineno, rec.id,
                                 "event count " + std::to_string(rec.events.size()) +
                                     " falls outside the expected 2..12 band"});
    }
    corpus.records.push_back(std::move(rec));
  }
  return corpus;
}

std::string record_to_json_line(const CorpusRecord& rec) {
  ordered_json j;
  j["id"] = rec.id;
  j["scenario"] = rec.scenario;
  j["source"] = std::string(to_string(rec.source));
  j["split"] = std::string(to_string(rec.split));

  ordered_json events = ordered_json::array();
  for (const auto& ev : rec.events) {
    ordered_json e;
    e["id"] = ev.id;
    e["text"] = ev.text;
    if (ev.duration) {
      ordered_json d;
      d["bucket"] = std::string(to_string(ev.duration->bucket));
      if (ev.duration->seconds_estimate) d["seconds_estimate"] = *ev.duration->seconds_estimate;
      e["duration"] = std::move(d);
    }
    events.push_back(std::move(e));
  }
  j["events"] = std::move(events);

  auto edges_json = [](EdgeSet edges) {
    std::sort(edges.begin(), edges.end());
    ordered_json out = ordered_json::array();
    for (const auto& [u, v] : edges) out.push_back(ordered_json::array({u, v}));
    return out;
  };
  j["edges"] = edges_json(rec.edges);
  if (rec.alt_edges) j["alt_edges"] = edges_json(*rec.alt_edges);
  if (rec.parent_id) j["parent_id"] = *rec.parent_id;
  if (rec.parent_edge) j["parent_edge"] = ordered_json::array({rec.parent_edge->first, rec.parent_edge->second});
  return j.dump();
}

void save_jsonl(const Corpus& corpus, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("save_jsonl: cannot open " + path.string());
  for (const auto& rec : corpus.records) out << record_to_json_line(rec) << '\n';
  if (!out) throw std::runtime_error("save_jsonl: write failed for " + path.string());
}

PrfScore agreement_f1(const CorpusRecord& rec) {
  if (!rec.alt_edges) {
    throw std::invalid_argument("agreement_f1: record \"" + rec.id + "\" has no alt_edges");
  }
  EdgePrfConfig cfg;
  cfg.convention = Convention::Standard;
  cfg.match_by = MatchBy::Id;  // the annotators order the same event list
  return edge_prf(record_graph(rec, false), record_graph(rec, true), cfg);
}

FilterResult agreement_filter(const Corpus& corpus, double threshold) {
  FilterResult result;
  for (const auto& rec : corpus.records) {
    if (!rec.alt_edges) {
      result.warnings.push_back("record \"" + rec.id +
                                "\" has a single annotation; kept without an agreement check");
      result.kept.push_back(rec);
      continue;
    }
    if (agreement_f1(rec).f1 * 100.0 >= threshold) {
      result.kept.push_back(rec);
    } else {
      result.rejected.push_back(rec);
    }
  }
  return result;
}

CorpusStats corpus_stats(const Corpus& corpus) {
  CorpusStats stats;
  stats.n_scripts = corpus.records.size();

  std::size_t total_events = 0;
  for (const auto& rec : corpus.records) {
    total_events += rec.events.size();
    ++stats.by_split[std::string(to_string(rec.split))];
    ++stats.by_source[std::string(to_string(rec.source))];

    ScriptGraph g = record_graph(rec);
    ++stats.degree_hist[g.max_degree()];
    ++stats.edge_count_hist[g.edge_count()];

    // a script's time scale is the coarsest bucket any of its events carries
    std::optional<DurationBucket> coarsest;
    for (const auto& ev : rec.events) {
      if (ev.duration && (!coarsest || ev.duration->bucket > *coarsest)) {
        coarsest = ev.duration->bucket;
      }
    }
    ++stats.duration_hist[coarsest ? std::string(to_string(*coarsest)) : "unknown"];
  }
  if (stats.n_scripts > 0) {
    stats.mean_events = static_cast<double>(total_events) / static_cast<double>(stats.n_scripts);
  }
  return stats;
}

std::string stats_to_json(const CorpusStats& stats) {
  ordered_json j;
  j["n_scripts"] = stats.n_scripts;
  j["mean_events"] = stats.mean_events;
  j["by_split"] = stats.by_split;
  j["by_source"] = stats.by_source;
  ordered_json degrees = ordered_json::object();
  for (const auto& [degree, count] : stats.degree_hist) degrees[std::to_string(degree)] = count;
  j["degree_hist"] = std::move(degrees);
  j["duration_hist"] = stats.duration_hist;
  ordered_json edge_counts = ordered_json::object();
  for (const auto& [edges, count] : stats.edge_count_hist) edge_counts[std::to_string(edges)] = count;
  j["edge_count_hist"] = std::move(edge_counts);
  return j.dump();
}

std::string stats_to_csv(const CorpusStats& stats) {
  std::string out = "stat,key,value\n";
  out += "n_scripts,," + std::to_string(stats.n_scripts) + "\n";
  char mean[64];
  std::snprintf(mean, sizeof mean, "%.2f", stats.mean_events);
  out += std::string("mean_events,,") + mean + "\n";
  for (const auto& [key, count] : stats.by_split) {
    out += "split," + key + "," + std::to_string(count) + "\n";
  }
  for (const auto& [key, count] : stats.by_source) {
    out += "source," + key + "," + std::to_string(count) + "\n";
  }
  for (const auto& [degree, count] : stats.degree_hist) {
    out += "degree," + std::to_string(degree) + "," + std::to_string(count) + "\n";
  }
  for (const auto& [bucket, count] : stats.duration_hist) {
    out += "duration," + bucket + "," + std::to_string(count) + "\n";
  }
  for (const auto& [edges, count] : stats.edge_count_hist) {
    out += "edge_count," + std::to_string(edges) + "," + std::to_string(count) + "\n";
  }
  return out;
}

}  // namespace scriptdag
