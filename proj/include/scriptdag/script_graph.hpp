#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace scriptdag {

// Virtual endpoints of the augmented single-source/single-sink view. They are
// computed, never stored, so event counts stay honest.
inline constexpr int kRootId = -1;
inline constexpr int kLeafId = -2;

/// Coarse duration scale annotated on an event.
enum class DurationBucket { Seconds, Minutes, Hours, Days, Weeks, Months, Years };

std::string_view to_string(DurationBucket b);
std::optional<DurationBucket> duration_bucket_from_string(std::string_view s);

/// Half-open [lo, hi) range of a bucket, in seconds.
std::pair<double, double> duration_bucket_range(DurationBucket b);

/// The bucket whose range contains `seconds` (values below one second clamp
/// to Seconds).
DurationBucket duration_bucket_for(double seconds);

struct Duration {
  DurationBucket bucket = DurationBucket::Minutes;
  std::optional<double> seconds_estimate;

  /// True when there is no estimate or the estimate lies inside the bucket.
  bool in_range() const;

  friend bool operator==(const Duration&, const Duration&) = default;
};

struct EventNode {
  int id = 0;
  std::string text;
  std::optional<Duration> duration;

  friend bool operator==(const EventNode&, const EventNode&) = default;
};

/// Ordered pair (src, dst): src must happen before dst.
using Edge = std::pair<int, int>;
using EdgeSet = std::vector<Edge>;

struct Violation {
  std::string code;
  std::string message;
  std::string element;
};

struct ValidationReport {
  bool ok = true;
  std::vector<Violation> violations;
};

/// Lowercase, trim, collapse internal whitespace. Every place two graphs meet
/// (scoring, matching, substitution costs) compares texts through this.
std::string normalize_label(std::string_view text);

enum class DegreeKind { MaxInOut, In, Out, Total };

/// A partially ordered script: a scenario, its events, and a transitively
/// reduced DAG of precedence constraints over the event ids.
///
/// Graphs built through the constructor and the add_* mutators always satisfy
/// the invariants (acyclic, reduced, no duplicates). from_parts() skips the
/// checks so that deserializers can load arbitrary data and report problems
/// through validate() instead of dying on the first bad record.
class ScriptGraph {
public:
  /// Throws std::invalid_argument when the scenario is empty.
  explicit ScriptGraph(std::string scenario);

  /// Unchecked assembly; pair with validate().
  static ScriptGraph from_parts(std::string scenario, std::vector<EventNode> events,
                                EdgeSet edges);

  enum class EdgeOutcome { Added, Redundant };

  /// Appends an event under the next ordinal id and returns that id.
  /// Throws std::invalid_argument when the text normalizes to nothing.
  int add_event(std::string text, std::optional<Duration> duration = std::nullopt);

  /// Inserts the constraint src -> dst, keeping the edge set reduced:
  /// a transitively implied pair is a recorded no-op (Redundant), and any
  /// existing edge the insertion makes redundant is removed. Throws
  /// CycleError when the pair would close a cycle, std::invalid_argument on
  /// unknown ids or src == dst.
  EdgeOutcome add_edge(int src, int dst);

  /// Attaches or replaces the duration annotation on an existing event.
  /// Throws std::invalid_argument on an unknown id or an estimate outside the
  /// bucket's range.
  void set_duration(int id, std::optional<Duration> duration);

  /// Checks every structural invariant; never mutates, never throws.
  ValidationReport validate() const;

  const std::string& scenario() const { return scenario_; }
  const std::vector<EventNode>& events() const { return events_; }
  const EdgeSet& edges() const { return edges_; }
  std::size_t event_count() const { return events_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  /// Edges of the single-source/single-sink view: kRootId feeds every event
  /// without predecessors, every event without successors feeds kLeafId, and
  /// an empty graph is just root -> leaf.
  EdgeSet augmented_edges() const;

  /// All (i, j) with a directed path i -> ... -> j.
  EdgeSet closure() const;

  /// Maximum degree over event nodes on the stored (reduced) edges. Virtual
  /// root/leaf fan-out is excluded unless include_virtual is set.
  int max_degree(DegreeKind kind = DegreeKind::MaxInOut, bool include_virtual = false) const;

  /// Up to `limit` topological orders, enumerated lexicographically by id.
  std::vector<std::vector<int>> linear_extensions(std::size_t limit) const;

  friend bool operator==(const ScriptGraph&, const ScriptGraph&) = default;

private:
  ScriptGraph() = default;

  std::string scenario_;
  std::vector<EventNode> events_;
  EdgeSet edges_;  // sorted by (src, dst) in graphs built via mutators
};

// Relation helpers over edge sets on nodes 0..n-1.

bool is_acyclic(int n, const EdgeSet& edges);

/// Deterministic Kahn order (lowest id first); nullopt on a cycle.
std::optional<std::vector<int>> topological_order(int n, const EdgeSet& edges);

EdgeSet transitive_closure(int n, const EdgeSet& edges);

/// Unique minimal edge set with the same reachability. Throws CycleError on
/// cyclic input.
EdgeSet transitive_reduction(int n, const EdgeSet& edges);

}  // namespace scriptdag
