#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "scriptdag/script_graph.hpp"

namespace scriptdag {

struct PrfScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;  // 2PR/(P+R) when P+R > 0, else 0

  friend bool operator==(const PrfScore&, const PrfScore&) = default;
};

/// Which denominators precision/recall use. Standard divides precision by the
/// predicted edge count; PaperLiteral swaps the denominators. F1 is the same
/// either way.
enum class Convention { Standard, PaperLiteral };

/// How the two event sets are aligned before edges are compared.
enum class MatchBy { Id, Label };

struct EdgePrfConfig {
  Convention convention = Convention::Standard;
  MatchBy match_by = MatchBy::Label;
  /// Label mode: refuse duplicate-label groups instead of pairing them
  /// greedily in id order. Id mode: require equal normalized labels per slot.
  bool strict_labels = false;
};

/// Edge precision/recall/F1 over the reduced edge sets of two scripts with
/// the same events. Both edge sets empty counts as perfect agreement.
/// Throws std::invalid_argument when the event sets cannot be aligned.
PrfScore edge_prf(const ScriptGraph& pred, const ScriptGraph& gold,
                  const EdgePrfConfig& cfg = {});

// ---------------------------------------------------------------------------
// Graph edit distance
// ---------------------------------------------------------------------------

enum class EditOpKind { VertexDelete, VertexInsert, VertexReplace, EdgeDelete, EdgeInsert, EdgeReplace };

std::string_view to_string(EditOpKind k);

/// One edit step. Node ids <= n1-1 address g1 nodes; ids >= n1 are handles
/// for inserted nodes (n1 + g2 id). Edges use the same addressing.
struct EditOp {
  EditOpKind kind = EditOpKind::VertexReplace;
  int node = -1;            // vertex ops
  Edge edge = {-1, -1};     // edge ops
  std::string old_label;
  std::string new_label;
  double cost = 1.0;
};

/// Ordered edit path g1 -> g2. `mapping[i]` is the g2 node that g1 node i
/// lands on, -1 when deleted.
struct EditScript {
  std::vector<EditOp> ops;
  double total_cost = 0.0;
  std::vector<int> mapping;
};

struct GedCosts {
  double v_del = 1.0, v_ins = 1.0, v_rep = 1.0;
  double e_del = 1.0, e_ins = 1.0, e_rep = 1.0;
};

struct GedConfig {
  enum class NodeMatch { Exact, Normalized };
  /// Preserved edges normally cost nothing; EndpointRep reclassifies a kept
  /// edge with at least one substituted endpoint as an E-Rep of cost e_rep.
  enum class EdgeRepMode { Off, EndpointRep };

  NodeMatch node_match = NodeMatch::Normalized;
  int max_exact_nodes = 12;  // cap on |V1| + |V2| for the exact search
  EdgeRepMode edge_rep_mode = EdgeRepMode::Off;
  GedCosts costs;
  /// Score the augmented view (virtual root/leaf become real nodes).
  bool include_virtual = false;
};

struct GedResult {
  double cost = 0.0;
  EditScript script;
};

/// Exact minimum-cost edit path by best-first search over node assignments.
/// Throws SizeLimitError when the combined node count exceeds
/// cfg.max_exact_nodes.
GedResult ged(const ScriptGraph& g1, const ScriptGraph& g2, const GedConfig& cfg = {});

/// Beam-limited variant; returns an upper bound on the exact cost. A beam
/// wide enough to hold every partial assignment degenerates to the exact
/// search.
GedResult ged_approx(const ScriptGraph& g1, const ScriptGraph& g2, const GedConfig& cfg,
                     std::size_t beam);

struct GedOpCounts {
  double v_del = 0, v_ins = 0, v_rep = 0;
  double e_del = 0, e_ins = 0, e_rep = 0;

  std::array<double, 6> as_array() const { return {v_del, v_ins, v_rep, e_del, e_ins, e_rep}; }
};

GedOpCounts ged_breakdown(const EditScript& es);

/// Replays the script on g1's labeled view and checks the result is g2 under
/// the script's mapping. Scoring code asserts this after every search.
bool edit_script_transforms(const ScriptGraph& g1, const ScriptGraph& g2,
                            const EditScript& es, const GedConfig& cfg = {});

// ---------------------------------------------------------------------------
// Corpus-level reporting
// ---------------------------------------------------------------------------

/// One prediction with every gold it is scored against. Multiple golds are
/// averaged per script.
struct ScoredPair {
  std::string id;
  ScriptGraph pred;
  std::vector<ScriptGraph> golds;
  std::vector<std::string> notes;  // carried through to the report row

  ScoredPair(std::string id_, ScriptGraph pred_, std::vector<ScriptGraph> golds_)
      : id(std::move(id_)), pred(std::move(pred_)), golds(std::move(golds_)) {}
};

struct ReportConfig {
  bool edges = true;
  bool ged = false;
  EdgePrfConfig prf;
  GedConfig ged_cfg;
  /// Fallback beam for pairs above ged_cfg.max_exact_nodes (0 = report an
  /// error note instead of falling back).
  std::size_t approx_beam = 64;
  int jobs = 1;
};

struct ScriptScore {
  std::string id;
  std::optional<PrfScore> prf;
  std::optional<double> ged_cost;
  GedOpCounts ops;
  std::vector<std::string> notes;
};

struct EvalReport {
  std::vector<ScriptScore> scripts;
  std::size_t n_scripts = 0;
  std::optional<PrfScore> macro_prf;
  std::optional<double> macro_ged;
  GedOpCounts macro_ops;
};

/// Scores every pair (fanning out across cfg.jobs workers) and macro-averages
/// in input order. Per-pair failures become row notes, not exceptions.
EvalReport corpus_report(const std::vector<ScoredPair>& pairs, const ReportConfig& cfg);

/// JSON and TSV renderings carry identical numbers: P/R/F1 are scaled by 100
/// and rounded to 2 decimals, edit distances to 2, op counts to 3.
std::string report_to_json(const EvalReport& report);
std::string report_to_tsv(const EvalReport& report);

}  // namespace scriptdag
