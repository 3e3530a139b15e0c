#include "tmotif/testkit.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <string>

namespace tmotif::testkit {

namespace {

class Enumerator {
 public:
  Enumerator(const TemporalGraph& g, const Motif& m, TimeDelta delta, std::uint64_t budget,
             const std::function<void(const MotifInstance&)>& visit)
      : edges_(g.edges()), motif_(m), delta_(delta), budget_(budget), visit_(visit) {}

  void run() {
    chosen_.clear();
    candidate_.clear();
    for (std::size_t first = 0; first < edges_.size(); ++first) {
      push(first);
      descend(first, saturating_add(edges_[first].t, delta_));
      pop();
    }
  }

 private:
  void push(std::size_t idx) {
    if (++work_ > budget_) {
      throw Error(ErrorKind::kBudget, "brute-force enumeration exceeded its work budget");
    }
    chosen_.push_back(idx);
    candidate_.push_back(edges_[idx]);
  }

  void pop() {
    chosen_.pop_back();
    candidate_.pop_back();
  }

  void descend(std::size_t last, Timestamp limit) {
    if (chosen_.size() == motif_.num_edges()) {
      if (is_delta_instance(candidate_, motif_, delta_)) visit_(MotifInstance{chosen_});
      return;
    }
    for (std::size_t next = last + 1; next < edges_.size() && edges_[next].t <= limit; ++next) {
      push(next);
      descend(next, limit);
      pop();
    }
  }

  std::span<const TemporalEdge> edges_;
  const Motif& motif_;
  TimeDelta delta_;
  std::uint64_t budget_;
  const std::function<void(const MotifInstance&)>& visit_;
  std::uint64_t work_ = 0;
  std::vector<std::size_t> chosen_;
  std::vector<TemporalEdge> candidate_;
};

std::vector<std::string> decimal_labels(std::size_t n) {
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  return labels;
}

}  // namespace

void brute_force_instances(const TemporalGraph& g, const Motif& m, TimeDelta delta,
                           const std::function<void(const MotifInstance&)>& visit,
                           std::uint64_t work_budget) {
  m.validate();
  Enumerator(g, m, delta, work_budget, visit).run();
}

CountDurationHistogram brute_force_count(const TemporalGraph& g, const Motif& m,
                                         TimeDelta delta, std::uint64_t work_budget) {
  CountDurationHistogram h;
  brute_force_instances(
      g, m, delta, [&](const MotifInstance& inst) { h.add(duration(inst, g), 1); },
      work_budget);
  return h;
}

TemporalGraph random_temporal_graph(std::size_t n, std::size_t m, Timestamp t_range,
                                    std::uint64_t seed) {
  if (n == 0) throw Error(ErrorKind::kConfig, "random graph needs at least one node");
  if (t_range < 1) throw Error(ErrorKind::kConfig, "t_range must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<NodeId> node(0, static_cast<NodeId>(n - 1));
  std::uniform_int_distribution<Timestamp> time(0, t_range - 1);
  std::vector<TemporalEdge> edges;
  edges.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    const NodeId u = node(rng);
    const NodeId v = node(rng);
    edges.push_back({u, v, time(rng), i});
  }
  return TemporalGraph::from_edges(std::move(edges), decimal_labels(n));
}

TemporalGraph conversation_temporal_graph(std::size_t num_nodes, std::size_t num_edges,
                                          Timestamp t_range, std::size_t burst_length,
                                          TimeDelta max_gap, std::uint64_t seed) {
  if (num_nodes < 2) throw Error(ErrorKind::kConfig, "need at least two nodes");
  if (t_range < 1 || max_gap < 1 || burst_length < 1) {
    throw Error(ErrorKind::kConfig, "t_range, max_gap and burst_length must be positive");
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<NodeId> node(0, static_cast<NodeId>(num_nodes - 1));
  std::uniform_int_distribution<Timestamp> start(0, t_range - 1);
  std::uniform_int_distribution<TimeDelta> gap(1, max_gap);
  std::bernoulli_distribution flip(0.5);
  std::vector<TemporalEdge> edges;
  edges.reserve(num_edges);
  while (edges.size() < num_edges) {
    const NodeId a = node(rng);
    NodeId b = node(rng);
    while (b == a) b = node(rng);
    Timestamp t = start(rng);
    for (std::size_t i = 0; i < burst_length && edges.size() < num_edges; ++i) {
      const bool forward = flip(rng);
      edges.push_back({forward ? a : b, forward ? b : a, t, edges.size()});
      t += gap(rng);
    }
  }
  return TemporalGraph::from_edges(std::move(edges), decimal_labels(num_nodes));
}

ReductionInstance clique_reduction_instance(const CliqueInstance& inst) {
  const auto n = static_cast<Timestamp>(inst.n);
  if (inst.k < 1 || inst.k > inst.n) throw Error(ErrorKind::kConfig, "need 1 <= k <= n");
  const Timestamp block = n + 2;

  std::set<std::pair<NodeId, NodeId>> undirected;
  for (auto [u, v] : inst.edges) {
    if (u == v || u < 1 || v < 1 || u > inst.n || v > inst.n) {
      throw Error(ErrorKind::kConfig, "clique instance must be a simple graph on 1..n");
    }
    undirected.emplace(std::min(u, v), std::max(u, v));
  }

  std::vector<TemporalEdge> edges;
  auto add = [&](NodeId src, NodeId dst, Timestamp t) {
    edges.push_back({src, dst, t, edges.size()});
  };
  for (const auto& [u, v] : undirected) {
    // Forward edge to u in block v, and to v in block u.
    add(0, u, (static_cast<Timestamp>(v) - 1) * block + u + 1);
    add(0, v, (static_cast<Timestamp>(u) - 1) * block + v + 1);
  }
  for (NodeId u = 1; u <= inst.n; ++u) {
    // Bookends of block u.
    add(u, 0, (static_cast<Timestamp>(u) - 1) * block + 1);
    add(u, 0, static_cast<Timestamp>(u) * block);
  }

  // Star on leaves 1..k, ordered by the same block layout over k nodes:
  // block i holds leaf i's opening bookend, forward edges to every other
  // leaf in increasing order, then leaf i's closing bookend.
  std::vector<std::pair<NodeId, NodeId>> star;
  const auto k = static_cast<NodeId>(inst.k);
  for (NodeId i = 1; i <= k; ++i) {
    star.emplace_back(i, 0);
    for (NodeId j = 1; j <= k; ++j) {
      if (j != i) star.emplace_back(0, j);
    }
    star.emplace_back(i, 0);
  }

  ReductionInstance out;
  out.graph = TemporalGraph::from_edges(std::move(edges), decimal_labels(inst.n + 1));
  out.star = make_motif(std::move(star));
  out.delta = kUnboundedDelta;
  return out;
}

bool has_k_clique(const CliqueInstance& inst) {
  const std::size_t n = inst.n;
  if (inst.k == 0) return true;
  if (inst.k > n) return false;
  std::vector<std::vector<bool>> adj(n + 1, std::vector<bool>(n + 1, false));
  for (auto [u, v] : inst.edges) {
    adj[u][v] = true;
    adj[v][u] = true;
  }
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcountll(mask)) != inst.k) continue;
    bool clique = true;
    for (std::size_t a = 0; a < n && clique; ++a) {
      if (!(mask >> a & 1)) continue;
      for (std::size_t b = a + 1; b < n && clique; ++b) {
        if ((mask >> b & 1) && !adj[a + 1][b + 1]) clique = false;
      }
    }
    if (clique) return true;
  }
  return false;
}

}  // namespace tmotif::testkit
