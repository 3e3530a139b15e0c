#pragma once

// Exact temporal motif counters. Every counter reports a count-duration
// histogram rather than a bare total, which is what lets the sampling layer
// reweight instances by their duration.

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string_view>
#include <vector>

#include "tmotif/core.hpp"

namespace tmotif {

using Count = std::uint64_t;

/// Adds with an Error(kOverflow) instead of wrapping.
Count checked_add(Count a, Count b);

class CountDurationHistogram {
 public:
  using Map = std::map<TimeDelta, Count>;

  void add(TimeDelta duration, Count count);
  void merge(const CountDurationHistogram& other);

  const Map& entries() const noexcept { return entries_; }
  bool empty() const noexcept { return entries_.empty(); }
  std::size_t size() const noexcept { return entries_.size(); }

  /// Count for one duration, 0 when absent.
  Count at(TimeDelta duration) const;

  friend bool operator==(const CountDurationHistogram&,
                         const CountDurationHistogram&) = default;

 private:
  Map entries_;
};

Count total_count(const CountDurationHistogram& h);

/// Chronological backtracking: each edge in turn is tried as the first motif
/// edge, and the match is extended one motif edge at a time over strictly
/// later edges inside [t_first, t_first + delta].
CountDurationHistogram count_backtracking(const TemporalGraph& g, const Motif& m,
                                          TimeDelta delta);

enum class Direction : std::uint8_t { kForward, kBackward };

/// Directions of a 2-node, 3-edge motif relative to its first edge.
struct DirectionPattern3 {
  Direction second = Direction::kForward;
  Direction third = Direction::kForward;

  friend bool operator==(const DirectionPattern3&, const DirectionPattern3&) = default;
};

inline constexpr std::array<DirectionPattern3, 4> kAllDirectionPatterns3 = {{
    {Direction::kForward, Direction::kForward},
    {Direction::kForward, Direction::kBackward},
    {Direction::kBackward, Direction::kForward},
    {Direction::kBackward, Direction::kBackward},
}};

/// Pattern of a 2-node, 3-edge motif without self-loops, if m is one.
std::optional<DirectionPattern3> as_direction_pattern(const Motif& m);

/// The motif (0,1), then the pattern's second and third edges.
Motif to_motif(const DirectionPattern3& p);

struct PairEvent {
  bool forward = true;  // lower node id -> higher node id
  Timestamp t = 0;
  std::uint64_t seq = 0;
};

struct PairTimeline {
  NodeId u = 0;  // u < v
  NodeId v = 0;
  std::vector<PairEvent> events;  // sorted by (t, seq)
};

/// One timeline per unordered node pair with at least one edge between two
/// distinct nodes, ordered by (u, v). Self-loops are not part of any pair.
std::vector<PairTimeline> pair_timelines(const TemporalGraph& g);

/// Per-pair counter for 2-node, 3-edge motifs. Fixes the first and last
/// edge of each instance with a double loop and keeps a running count of
/// candidate middle edges between them. Pair timelines are processed by up to
/// `threads` workers (0 = hardware concurrency).
CountDurationHistogram count_ex23(const TemporalGraph& g, const DirectionPattern3& pattern,
                                  TimeDelta delta, unsigned threads = 1);

enum class Algorithm { kAuto, kBacktracking, kEx23 };

Algorithm parse_algorithm(std::string_view name);
std::string_view algorithm_name(Algorithm a);

/// Any function honoring the count-duration histogram contract.
using ExactCounter =
    std::function<CountDurationHistogram(const TemporalGraph&, const Motif&, TimeDelta)>;

/// kAuto picks EX23 for 2-node, 3-edge motifs and backtracking otherwise.
/// Requesting kEx23 for any other motif throws Error(kUsage).
ExactCounter make_counter(Algorithm algo, const Motif& m);

/// Algorithm kAuto resolves to for this motif.
Algorithm resolve_algorithm(Algorithm algo, const Motif& m);

}  // namespace tmotif
