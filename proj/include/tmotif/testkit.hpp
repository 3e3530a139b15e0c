#pragma once

// Ground truth and input generators for tests and the `gen` subcommand.

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "tmotif/core.hpp"
#include "tmotif/exact.hpp"

namespace tmotif::testkit {

/// Enumerates every strictly time-ordered l-edge sequence with
/// t_l - t_1 <= delta and keeps those passing is_delta_instance. Refuses
/// with Error(kBudget) once more than `work_budget` sequences were examined.
CountDurationHistogram brute_force_count(const TemporalGraph& g, const Motif& m,
                                         TimeDelta delta,
                                         std::uint64_t work_budget = 50'000'000);

/// Same enumeration, reporting each instance.
void brute_force_instances(const TemporalGraph& g, const Motif& m, TimeDelta delta,
                           const std::function<void(const MotifInstance&)>& visit,
                           std::uint64_t work_budget = 50'000'000);

/// m edges with endpoints uniform over n nodes and timestamps uniform over
/// [0, t_range). Labels are the decimal node ids.
TemporalGraph random_temporal_graph(std::size_t n, std::size_t m, Timestamp t_range,
                                    std::uint64_t seed);

/// Message-exchange workload: `num_edges` edges grouped into short bursts of
/// back-and-forth messages between random node pairs, with burst start times
/// uniform over [0, t_range) and gaps uniform over [1, max_gap].
TemporalGraph conversation_temporal_graph(std::size_t num_nodes, std::size_t num_edges,
                                          Timestamp t_range, std::size_t burst_length,
                                          TimeDelta max_gap, std::uint64_t seed);

/// Undirected simple graph on nodes 1..n.
struct CliqueInstance {
  std::size_t n = 0;
  std::vector<std::pair<NodeId, NodeId>> edges;
  std::size_t k = 0;
};

struct ReductionInstance {
  TemporalGraph graph;
  Motif star;
  TimeDelta delta = kUnboundedDelta;
};

/// Temporal graph and k-leaf star motif such that the star has an instance
/// iff the undirected graph has a k-clique. Node 0 is the star center and
/// nodes 1..n keep their ids.
ReductionInstance clique_reduction_instance(const CliqueInstance& inst);

/// Exhaustive search over k-subsets.
bool has_k_clique(const CliqueInstance& inst);

}  // namespace tmotif::testkit
