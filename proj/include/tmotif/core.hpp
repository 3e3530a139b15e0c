#pragma once

// Data model for temporal graphs and temporal motifs.
//
// A temporal graph is a time-sorted multiset of directed edges (u, v, t).
// Equal timestamps are ordered by ingestion ordinal, so every edge has a
// unique position in the total order (t, seq) and "time-ordered" always
// means strictly increasing in that order.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tmotif/error.hpp"

namespace tmotif {

using NodeId = std::uint32_t;
using Timestamp = std::int64_t;
using TimeDelta = std::int64_t;

/// Stands in for an unbounded time span. Window arithmetic saturates.
inline constexpr TimeDelta kUnboundedDelta = std::numeric_limits<TimeDelta>::max();

/// t + delta, clamped to the representable range.
constexpr Timestamp saturating_add(Timestamp t, TimeDelta delta) noexcept {
  if (delta > 0 && t > std::numeric_limits<Timestamp>::max() - delta) {
    return std::numeric_limits<Timestamp>::max();
  }
  if (delta < 0 && t < std::numeric_limits<Timestamp>::min() - delta) {
    return std::numeric_limits<Timestamp>::min();
  }
  return t + delta;
}

struct TemporalEdge {
  NodeId src = 0;
  NodeId dst = 0;
  Timestamp t = 0;
  std::uint64_t seq = 0;  // ingestion ordinal, breaks timestamp ties

  friend bool operator==(const TemporalEdge&, const TemporalEdge&) = default;
};

/// Strict total order used by every counter.
constexpr bool time_order_less(const TemporalEdge& a, const TemporalEdge& b) noexcept {
  return a.t != b.t ? a.t < b.t : a.seq < b.seq;
}

class TemporalGraph {
 public:
  TemporalGraph() = default;

  /// Sorts by (t, seq). num_nodes becomes 1 + the largest node id, or the
  /// size of the label table when that is larger.
  static TemporalGraph from_edges(std::vector<TemporalEdge> edges,
                                  std::vector<std::string> labels = {});

  std::span<const TemporalEdge> edges() const noexcept { return edges_; }
  std::size_t num_edges() const noexcept { return edges_.size(); }
  std::size_t num_nodes() const noexcept { return num_nodes_; }
  bool empty() const noexcept { return edges_.empty(); }

  /// Both are 0 for an empty graph.
  Timestamp t_min() const noexcept { return edges_.empty() ? 0 : edges_.front().t; }
  Timestamp t_max() const noexcept { return edges_.empty() ? 0 : edges_.back().t; }

  const std::vector<std::string>& labels() const noexcept { return labels_; }

  /// Index range [first, last) of the edges with lo <= t <= hi.
  std::pair<std::size_t, std::size_t> index_range(Timestamp lo, Timestamp hi) const;

  /// Edges with lo <= t <= hi. Node ids and seq values are preserved.
  TemporalGraph time_slice(Timestamp lo, Timestamp hi) const;

  /// Edges [first, last) in time order.
  TemporalGraph index_slice(std::size_t first, std::size_t last) const;

 private:
  std::vector<TemporalEdge> edges_;
  std::size_t num_nodes_ = 0;
  std::vector<std::string> labels_;
};

/// Ordered multigraph pattern. edges[i] is the i-th edge in the motif order.
struct Motif {
  std::size_t num_nodes = 0;
  std::vector<std::pair<NodeId, NodeId>> edges;
  std::vector<std::string> labels;

  std::size_t num_edges() const noexcept { return edges.size(); }

  /// Throws Error(kParse) when the node ids are not dense or there are no edges.
  void validate() const;
};

/// Builds a motif from an ordered edge list over dense ids 0..k-1.
Motif make_motif(std::vector<std::pair<NodeId, NodeId>> edges);

/// Accepts "m23", "bifan", "triangle", or one "u v" line per edge (in motif
/// order, arbitrary labels, '#' and '%' comment lines skipped).
Motif parse_motif(std::string_view text);

/// Tokens of one edge-list line; the views point into the line.
struct EdgeLine {
  std::string_view src;
  std::string_view dst;
  Timestamp t = 0;
};

/// nullopt for blank and comment lines; Error(kParse) naming `line_no` for
/// anything other than `src dst t` with an integer t.
std::optional<EdgeLine> parse_edge_line(std::string_view line, std::size_t line_no);

/// Whitespace edge list, one `src dst t` per line.
TemporalGraph load_temporal_graph(std::istream& in);
TemporalGraph load_temporal_graph_file(const std::string& path);
TemporalGraph load_temporal_graph_string(std::string_view text);

/// Writes `src dst t` lines, using labels when present.
void write_edge_list(std::ostream& out, const TemporalGraph& g);

/// Shifts every timestamp so the earliest one is 0.
TemporalGraph normalize_timestamps(const TemporalGraph& g);

/// Indices into TemporalGraph::edges(), strictly increasing.
struct MotifInstance {
  std::vector<std::size_t> edge_indices;
};

TimeDelta duration(const MotifInstance& inst, const TemporalGraph& g);

/// Last timestamp minus first timestamp of a time-ordered edge sequence.
TimeDelta duration(std::span<const TemporalEdge> edges);

/// True iff `candidate` is strictly time-ordered, has the motif's length, is
/// mapped onto the motif by a node bijection, and spans at most delta.
bool is_delta_instance(std::span<const TemporalEdge> candidate, const Motif& m,
                       TimeDelta delta);

struct StaticEdge {
  NodeId src = 0;
  NodeId dst = 0;
  std::uint64_t multiplicity = 0;

  friend bool operator==(const StaticEdge&, const StaticEdge&) = default;
};

struct StaticGraph {
  std::vector<StaticEdge> edges;  // sorted by (src, dst)
};

StaticGraph static_projection(const TemporalGraph& g);

}  // namespace tmotif
