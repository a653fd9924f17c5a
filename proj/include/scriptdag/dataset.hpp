#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "scriptdag/metrics.hpp"
#include "scriptdag/script_graph.hpp"

namespace scriptdag {

enum class Source { RocStories, Descript, VirtualHome, Other };
enum class Split { Train, Dev, Test };

std::string_view to_string(Source s);
std::string_view to_string(Split s);
std::optional<Source> source_from_string(std::string_view s);
std::optional<Split> split_from_string(std::string_view s);

/// One crowdsourced script instance. `edges` is the primary annotator's
/// ordering; `alt_edges`, when present, is a second annotator's ordering over
/// the same events. parent_id/parent_edge track which edge of a coarser
/// script this scenario refines.
struct CorpusRecord {
  std::string id;
  std::string scenario;
  Source source = Source::Other;
  Split split = Split::Train;
  std::vector<EventNode> events;
  EdgeSet edges;
  std::optional<EdgeSet> alt_edges;
  std::optional<std::string> parent_id;
  std::optional<Edge> parent_edge;

  friend bool operator==(const CorpusRecord&, const CorpusRecord&) = default;
};

/// ScriptGraph view of a record (reduced edges). `alt` selects alt_edges.
ScriptGraph record_graph(const CorpusRecord& rec, bool alt = false);

struct InvalidRecord {
  std::size_t line = 0;  // 1-based line in the source file
  std::string code;      // JSON_ERROR | SCHEMA_ERROR | DAG_ERROR
  std::string message;
};

struct LoadWarning {
  std::size_t line = 0;
  std::string id;
  std::string message;
};

struct Corpus {
  std::vector<CorpusRecord> records;
  std::vector<InvalidRecord> invalid;   // quarantined, never silently dropped
  std::vector<LoadWarning> warnings;
};

/// One JSON object per line:
///   {"id": "...", "scenario": "...", "source": "rocstories", "split": "dev",
///    "events": [{"id": 0, "text": "...",
///                "duration": {"bucket": "minutes", "seconds_estimate": 120}}, ...],
///    "edges": [[0, 1], ...], "alt_edges": [[...]],
///    "parent_id": "...", "parent_edge": [0, 1]}
/// Unknown fields, missing fields, cyclic/duplicated edges and bad ids all
/// quarantine the record with its line number. Throws std::runtime_error only
/// on I/O failure.
Corpus load_jsonl(const std::filesystem::path& path);

/// Canonical re-serialization (fixed field order, sorted edges); loss-free
/// against load_jsonl.
void save_jsonl(const Corpus& corpus, const std::filesystem::path& path);
std::string record_to_json_line(const CorpusRecord& rec);

/// Edge F1 between the two annotators (pred = primary, gold = alt, standard
/// convention, reduced edge sets). Throws std::invalid_argument when
/// alt_edges is absent.
PrfScore agreement_f1(const CorpusRecord& rec);

struct FilterResult {
  std::vector<CorpusRecord> kept;
  std::vector<CorpusRecord> rejected;
  std::vector<std::string> warnings;  // records that passed without alt_edges
};

/// Keeps records whose agreement F1 (scaled by 100) reaches the threshold.
/// Records without alt_edges pass with a warning.
FilterResult agreement_filter(const Corpus& corpus, double threshold = 65.0);

struct CorpusStats {
  std::size_t n_scripts = 0;
  std::map<std::string, std::size_t> by_split;
  std::map<std::string, std::size_t> by_source;
  double mean_events = 0.0;
  std::map<int, std::size_t> degree_hist;                 // max degree -> scripts
  std::map<std::string, std::size_t> duration_hist;       // bucket -> scripts
  std::map<std::size_t, std::size_t> edge_count_hist;     // |E| -> scripts
};

/// Deterministic corpus summary. Each script lands in exactly one bin per
/// histogram; a script with no event durations counts under "unknown".
CorpusStats corpus_stats(const Corpus& corpus);

std::string stats_to_json(const CorpusStats& stats);
std::string stats_to_csv(const CorpusStats& stats);

}  // namespace scriptdag
