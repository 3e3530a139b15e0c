#include <fstream>
#include <memory>
#include <unordered_map>

#include "tmotif/sampling.hpp"
#include "window_term.hpp"

namespace tmotif {

namespace {

struct StreamShift {
  IntervalGrid grid;
  std::vector<std::size_t> edge_counts;
  std::vector<double> q;
  std::vector<bool> sampled;
  std::size_t open = 0;
  std::vector<TemporalEdge> buffer;
};

}  // namespace

Estimate estimate_streaming(const EdgeReplay& replay, const Motif& m, TimeDelta delta,
                            const SamplingConfig& cfg, const ExactCounter& algo) {
  cfg.validate();
  m.validate();
  const TimeDelta width = window_width(cfg.c, delta);

  std::vector<StreamShift> shifts(cfg.b);
  Estimate est;
  est.per_shift.assign(cfg.b, 0.0);
  for (std::uint32_t k = 0; k < cfg.b; ++k) {
    shifts[k].grid.shift = draw_shift(cfg.seed, k, width);
    shifts[k].grid.width = width;
    est.shifts.push_back(shifts[k].grid.shift);
  }

  // Pass 1: origin, extent and per-window edge counts. Memory is O(b * l).
  bool any = false;
  Timestamp origin = 0;
  Timestamp last_t = 0;
  std::size_t total = 0;
  replay([&](const TemporalEdge& e) {
    if (!any) {
      origin = e.t;
      any = true;
    } else if (e.t < last_t) {
      throw Error(ErrorKind::kStreamOrder, "edge stream is not sorted by time");
    }
    last_t = e.t;
    ++total;
    const Timestamp t = e.t - origin;
    for (auto& s : shifts) {
      const std::size_t j = s.grid.index_of(t);
      if (j >= s.edge_counts.size()) s.edge_counts.resize(j + 1, 0);
      ++s.edge_counts[j];
    }
  });
  if (!any) return est;

  const Timestamp t_max = last_t - origin;
  for (std::uint32_t k = 0; k < cfg.b; ++k) {
    auto& s = shifts[k];
    s.grid = build_interval_grid(t_max, cfg.c, delta, s.grid.shift);
    s.edge_counts.resize(s.grid.num_intervals, 0);
    s.q = heuristic_probabilities(s.edge_counts, total, cfg.r).q;
    s.sampled.assign(s.grid.num_intervals, false);
    for (std::size_t j = 0; j < s.grid.num_intervals; ++j) {
      if (s.q[j] == 0.0 && s.edge_counts[j] >= m.num_edges()) {
        throw Error(ErrorKind::kConfig,
                    "zero sampling probability on a window that can hold an instance");
      }
      s.sampled[j] = inclusion_draw(cfg.seed, k, j) < s.q[j];
      if (s.sampled[j]) ++est.sampled_interval_count;
    }
    est.total_interval_count += s.grid.num_intervals;
  }

  // Pass 2: retain only the open window of each shift, and only if sampled.
  std::size_t retained = 0;
  std::size_t peak = 0;
  std::size_t sampled_edges = 0;
  auto flush = [&](std::uint32_t k) {
    auto& s = shifts[k];
    if (s.buffer.size() >= m.num_edges()) {
      const auto window = TemporalGraph::from_edges(s.buffer);
      est.per_shift[k] += detail::window_term(algo(window, m, delta), width, delta, s.q[s.open]);
    }
    retained -= s.buffer.size();
    s.buffer.clear();
  };
  std::uint64_t ordinal = 0;
  replay([&](const TemporalEdge& raw) {
    TemporalEdge e = raw;
    e.t -= origin;
    if (ordinal++ >= total || e.t > t_max) {
      throw Error(ErrorKind::kStreamOrder, "edge stream changed between passes");
    }
    for (std::uint32_t k = 0; k < cfg.b; ++k) {
      auto& s = shifts[k];
      const std::size_t j = s.grid.index_of(e.t);
      if (j < s.open) throw Error(ErrorKind::kStreamOrder, "edge stream is not sorted by time");
      if (j != s.open) {
        flush(k);
        s.open = j;
      }
      if (s.sampled[j]) {
        s.buffer.push_back(e);
        ++retained;
        ++sampled_edges;
      }
    }
    peak = std::max(peak, retained);
  });
  for (std::uint32_t k = 0; k < cfg.b; ++k) flush(k);

  est.peak_retained_edges = peak;
  est.sampled_edge_fraction = static_cast<double>(sampled_edges) /
                              (static_cast<double>(cfg.b) * static_cast<double>(total));
  double sum = 0.0;
  for (const double z : est.per_shift) sum += z;
  est.value = sum / static_cast<double>(cfg.b);
  return est;
}

EdgeReplay edge_list_file_replay(const std::string& path) {
  // Labels persist across replays so ids stay stable.
  auto ids = std::make_shared<std::unordered_map<std::string, NodeId>>();
  return [path, ids](const EdgeSink& sink) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::kIo, "cannot open '" + path + "'");
    auto intern = [&](const std::string& label) {
      const auto [it, inserted] = ids->emplace(label, static_cast<NodeId>(ids->size()));
      return it->second;
    };
    std::string line;
    std::size_t line_no = 0;
    std::uint64_t seq = 0;
    Timestamp prev = 0;
    while (std::getline(in, line)) {
      ++line_no;
      const auto e = parse_edge_line(line, line_no);
      if (!e) continue;
      if (seq > 0 && e->t < prev) {
        throw Error(ErrorKind::kStreamOrder,
                    "line " + std::to_string(line_no) + ": edge stream is not sorted by time");
      }
      prev = e->t;
      const NodeId src = intern(std::string(e->src));
      const NodeId dst = intern(std::string(e->dst));
      sink(TemporalEdge{src, dst, e->t, seq++});
    }
  };
}

EdgeReplay graph_replay(const TemporalGraph& g) {
  return [&g](const EdgeSink& sink) {
    for (const auto& e : g.edges()) sink(e);
  };
}

}  // namespace tmotif
