#include "tmotif/exact.hpp"

#include <algorithm>
#include <limits>
#include <unordered_map>

#include "parallel.hpp"

namespace tmotif {

Count checked_add(Count a, Count b) {
  if (a > std::numeric_limits<Count>::max() - b) {
    throw Error(ErrorKind::kOverflow, "motif count overflows 64 bits");
  }
  return a + b;
}

void CountDurationHistogram::add(TimeDelta duration, Count count) {
  if (count == 0) return;
  auto& slot = entries_[duration];
  slot = checked_add(slot, count);
}

void CountDurationHistogram::merge(const CountDurationHistogram& other) {
  for (const auto& [d, c] : other.entries_) add(d, c);
}

Count CountDurationHistogram::at(TimeDelta duration) const {
  const auto it = entries_.find(duration);
  return it == entries_.end() ? 0 : it->second;
}

Count total_count(const CountDurationHistogram& h) {
  Count total = 0;
  for (const auto& [d, c] : h.entries()) total = checked_add(total, c);
  return total;
}

namespace {

using LocalCounts = std::unordered_map<TimeDelta, Count>;

void add_local(LocalCounts& counts, TimeDelta d, Count c) {
  auto& slot = counts[d];
  slot = checked_add(slot, c);
}

CountDurationHistogram to_histogram(const LocalCounts& counts) {
  CountDurationHistogram h;
  for (const auto& [d, c] : counts) h.add(d, c);
  return h;
}

constexpr std::uint64_t pair_key(NodeId a, NodeId b) noexcept {
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

constexpr std::int64_t kUnmapped = -1;

class BacktrackingMatcher {
 public:
  BacktrackingMatcher(const TemporalGraph& g, const Motif& m, TimeDelta delta)
      : edges_(g.edges()), motif_(m), delta_(delta), motif_to_data_(m.num_nodes, kUnmapped) {
    for (std::uint32_t i = 0; i < edges_.size(); ++i) {
      const auto& e = edges_[i];
      out_[e.src].push_back(i);
      in_[e.dst].push_back(i);
      pair_[pair_key(e.src, e.dst)].push_back(i);
    }
  }

  CountDurationHistogram run() {
    for (std::size_t first = 0; first < edges_.size(); ++first) {
      if (!bind(0, edges_[first])) continue;
      const Timestamp t_first = edges_[first].t;
      extend(1, first, t_first, saturating_add(t_first, delta_));
      unbind();
    }
    return to_histogram(counts_);
  }

 private:
  // Newly bound motif nodes per depth, so unbind() restores the exact state.
  struct Bound {
    NodeId a = 0;
    NodeId b = 0;
    std::uint8_t count = 0;
  };

  bool data_node_used(NodeId x) const {
    for (const auto mapped : motif_to_data_) {
      if (mapped == static_cast<std::int64_t>(x)) return true;
    }
    return false;
  }

  bool bind(std::size_t depth, const TemporalEdge& e) {
    const auto [a, b] = motif_.edges[depth];
    Bound bound;
    auto bind_one = [&](NodeId motif_node, NodeId data_node) {
      const auto mapped = motif_to_data_[motif_node];
      if (mapped != kUnmapped) return mapped == static_cast<std::int64_t>(data_node);
      if (data_node_used(data_node)) return false;
      motif_to_data_[motif_node] = data_node;
      (bound.count == 0 ? bound.a : bound.b) = motif_node;
      ++bound.count;
      return true;
    };
    const bool ok = bind_one(a, e.src) && bind_one(b, e.dst);
    if (!ok) {
      if (bound.count > 0) motif_to_data_[bound.a] = kUnmapped;
      if (bound.count > 1) motif_to_data_[bound.b] = kUnmapped;
      return false;
    }
    stack_.push_back(bound);
    return true;
  }

  void unbind() {
    const Bound bound = stack_.back();
    stack_.pop_back();
    if (bound.count > 0) motif_to_data_[bound.a] = kUnmapped;
    if (bound.count > 1) motif_to_data_[bound.b] = kUnmapped;
  }

  void extend(std::size_t depth, std::size_t last, Timestamp t_first, Timestamp limit) {
    if (depth == motif_.num_edges()) {
      add_local(counts_, edges_[last].t - t_first, 1);
      return;
    }
    const auto [a, b] = motif_.edges[depth];
    const auto fa = motif_to_data_[a];
    const auto fb = motif_to_data_[b];

    auto visit = [&](std::size_t idx) {
      if (bind(depth, edges_[idx])) {
        extend(depth + 1, idx, t_first, limit);
        unbind();
      }
    };
    auto scan = [&](const std::vector<std::uint32_t>& list) {
      auto it = std::upper_bound(list.begin(), list.end(), static_cast<std::uint32_t>(last));
      for (; it != list.end() && edges_[*it].t <= limit; ++it) visit(*it);
    };
    static const std::vector<std::uint32_t> kNone;
    auto lookup = [](const auto& index, auto key) -> const std::vector<std::uint32_t>& {
      const auto it = index.find(key);
      return it == index.end() ? kNone : it->second;
    };

    if (fa != kUnmapped && fb != kUnmapped) {
      scan(lookup(pair_, pair_key(static_cast<NodeId>(fa), static_cast<NodeId>(fb))));
    } else if (fa != kUnmapped) {
      scan(lookup(out_, static_cast<NodeId>(fa)));
    } else if (fb != kUnmapped) {
      scan(lookup(in_, static_cast<NodeId>(fb)));
    } else {
      // Motif edge disconnected from the prefix matched so far.
      for (std::size_t idx = last + 1; idx < edges_.size() && edges_[idx].t <= limit; ++idx) {
        visit(idx);
      }
    }
  }

  std::span<const TemporalEdge> edges_;
  const Motif& motif_;
  TimeDelta delta_;
  std::vector<std::int64_t> motif_to_data_;
  std::vector<Bound> stack_;
  std::unordered_map<NodeId, std::vector<std::uint32_t>> out_;
  std::unordered_map<NodeId, std::vector<std::uint32_t>> in_;
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> pair_;
  LocalCounts counts_;
};

void count_timeline(const PairTimeline& timeline, const DirectionPattern3& pattern,
                    TimeDelta delta, LocalCounts& counts) {
  const auto& ev = timeline.events;
  const std::size_t n = ev.size();
  if (n < 3) return;
  for (std::size_t i = 0; i + 2 < n; ++i) {
    // The first edge fixes the orientation, so each instance is seen once.
    const bool orientation = ev[i].forward;
    const Timestamp limit = saturating_add(ev[i].t, delta);
    Count middles = 0;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (ev[j].t > limit) break;
      const Direction dir =
          ev[j].forward == orientation ? Direction::kForward : Direction::kBackward;
      if (dir == pattern.third && middles > 0) add_local(counts, ev[j].t - ev[i].t, middles);
      if (dir == pattern.second) ++middles;
    }
  }
}

}  // namespace

CountDurationHistogram count_backtracking(const TemporalGraph& g, const Motif& m,
                                          TimeDelta delta) {
  m.validate();
  if (delta < 0) throw Error(ErrorKind::kDomain, "delta must be nonnegative");
  if (g.empty()) return {};
  return BacktrackingMatcher(g, m, delta).run();
}

std::optional<DirectionPattern3> as_direction_pattern(const Motif& m) {
  if (m.num_nodes != 2 || m.num_edges() != 3) return std::nullopt;
  const auto first = m.edges[0];
  if (first.first == first.second) return std::nullopt;
  auto dir = [&](std::pair<NodeId, NodeId> e) -> std::optional<Direction> {
    if (e == first) return Direction::kForward;
    if (e.first == first.second && e.second == first.first) return Direction::kBackward;
    return std::nullopt;
  };
  const auto second = dir(m.edges[1]);
  const auto third = dir(m.edges[2]);
  if (!second || !third) return std::nullopt;
  return DirectionPattern3{*second, *third};
}

Motif to_motif(const DirectionPattern3& p) {
  auto edge = [](Direction d) {
    return d == Direction::kForward ? std::pair<NodeId, NodeId>{0, 1}
                                    : std::pair<NodeId, NodeId>{1, 0};
  };
  return make_motif({{0, 1}, edge(p.second), edge(p.third)});
}

std::vector<PairTimeline> pair_timelines(const TemporalGraph& g) {
  std::unordered_map<std::uint64_t, std::size_t> slot;
  std::vector<PairTimeline> timelines;
  for (const auto& e : g.edges()) {
    if (e.src == e.dst) continue;
    const NodeId u = std::min(e.src, e.dst);
    const NodeId v = std::max(e.src, e.dst);
    const auto [it, inserted] = slot.emplace(pair_key(u, v), timelines.size());
    if (inserted) timelines.push_back({u, v, {}});
    timelines[it->second].events.push_back({e.src == u, e.t, e.seq});
  }
  std::sort(timelines.begin(), timelines.end(), [](const auto& x, const auto& y) {
    return x.u != y.u ? x.u < y.u : x.v < y.v;
  });
  return timelines;
}

CountDurationHistogram count_ex23(const TemporalGraph& g, const DirectionPattern3& pattern,
                                  TimeDelta delta, unsigned threads) {
  if (delta < 0) throw Error(ErrorKind::kDomain, "delta must be nonnegative");
  const auto timelines = pair_timelines(g);
  const unsigned workers = detail::resolve_threads(threads);
  std::vector<LocalCounts> partial(std::min<std::size_t>(workers, std::max<std::size_t>(timelines.size(), 1)));
  detail::parallel_for(timelines.size(), static_cast<unsigned>(partial.size()),
                       [&](unsigned worker, std::size_t i) {
                         count_timeline(timelines[i], pattern, delta, partial[worker]);
                       });
  CountDurationHistogram h;
  for (const auto& p : partial) h.merge(to_histogram(p));
  return h;
}

Algorithm parse_algorithm(std::string_view name) {
  if (name == "auto") return Algorithm::kAuto;
  if (name == "bt") return Algorithm::kBacktracking;
  if (name == "ex23") return Algorithm::kEx23;
  throw Error(ErrorKind::kUsage, "unknown algorithm '" + std::string(name) + "'");
}

std::string_view algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::kAuto: return "auto";
    case Algorithm::kBacktracking: return "bt";
    case Algorithm::kEx23: return "ex23";
  }
  return "auto";
}

Algorithm resolve_algorithm(Algorithm algo, const Motif& m) {
  const bool two_three = as_direction_pattern(m).has_value();
  if (algo == Algorithm::kEx23 && !two_three) {
    throw Error(ErrorKind::kUsage, "ex23 requires a 2-node, 3-edge motif");
  }
  if (algo == Algorithm::kAuto) return two_three ? Algorithm::kEx23 : Algorithm::kBacktracking;
  return algo;
}

ExactCounter make_counter(Algorithm algo, const Motif& m) {
  if (resolve_algorithm(algo, m) == Algorithm::kEx23) {
    const auto pattern = *as_direction_pattern(m);
    return [pattern](const TemporalGraph& g, const Motif&, TimeDelta delta) {
      return count_ex23(g, pattern, delta);
    };
  }
  return [](const TemporalGraph& g, const Motif& motif, TimeDelta delta) {
    return count_backtracking(g, motif, delta);
  };
}

}  // namespace tmotif
