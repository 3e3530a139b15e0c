#include "tmotif/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "parallel.hpp"
#include "window_term.hpp"

namespace tmotif {

namespace {

// First edge index of each window, plus one past the last window. Each
// boundary is found by galloping forward from the previous one.
std::vector<std::size_t> window_bounds(std::span<const TemporalEdge> edges,
                                       const IntervalGrid& grid, Timestamp origin) {
  const std::size_t n = edges.size();
  std::vector<std::size_t> bounds(grid.num_intervals + 1);
  std::size_t pos = 0;
  for (std::size_t j = 0; j <= grid.num_intervals; ++j) {
    const Timestamp rel = j < grid.num_intervals ? grid.start(j) : saturating_add(grid.end(j - 1), 1);
    const Timestamp lo = saturating_add(origin, rel);
    std::size_t step = 1;
    std::size_t hi = pos;
    while (hi < n && edges[hi].t < lo) {
      pos = hi + 1;
      hi = pos + step;
      step *= 2;
    }
    hi = std::min(hi, n);
    pos = static_cast<std::size_t>(
        std::lower_bound(edges.begin() + static_cast<std::ptrdiff_t>(pos),
                         edges.begin() + static_cast<std::ptrdiff_t>(hi), lo,
                         [](const TemporalEdge& e, Timestamp t) { return e.t < t; }) -
        edges.begin());
    bounds[j] = pos;
  }
  return bounds;
}

std::vector<std::size_t> bounds_to_counts(const std::vector<std::size_t>& bounds) {
  std::vector<std::size_t> counts(bounds.size() - 1);
  for (std::size_t j = 0; j + 1 < bounds.size(); ++j) counts[j] = bounds[j + 1] - bounds[j];
  return counts;
}

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Counter-based stream: distinct (seed, tag, k, j) give independent words.
constexpr std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t tag, std::uint64_t k,
                                     std::uint64_t j) noexcept {
  std::uint64_t h = splitmix64(seed ^ 0x6a09e667f3bcc909ULL);
  h = splitmix64(h ^ tag);
  h = splitmix64(h ^ k);
  return splitmix64(h ^ j);
}

constexpr std::uint64_t kShiftTag = 1;
constexpr std::uint64_t kInclusionTag = 2;

void check_delta(TimeDelta delta) {
  if (delta < 1) throw Error(ErrorKind::kConfig, "delta must be at least 1");
}

void check_probabilities(const SamplingProbabilities& p, std::span<const std::size_t> counts,
                         const Motif& m) {
  if (p.q.size() != counts.size()) {
    throw Error(ErrorKind::kConfig, "probability vector length does not match the grid");
  }
  for (std::size_t j = 0; j < counts.size(); ++j) {
    const double q = p.q[j];
    if (!(q >= 0.0 && q <= 1.0)) {
      throw Error(ErrorKind::kConfig, "sampling probability outside [0, 1]");
    }
    if (q == 0.0 && counts[j] >= m.num_edges()) {
      throw Error(ErrorKind::kConfig,
                  "zero sampling probability on a window that can hold an instance");
    }
  }
}

struct ShiftPlan {
  IntervalGrid grid;
  std::vector<std::size_t> edge_counts;
  SamplingProbabilities probabilities;
  std::vector<std::size_t> sampled;  // ascending window indices
};

ShiftPlan plan_shift(const IntervalGrid& grid, std::vector<std::size_t> edge_counts,
                     std::size_t total_edges, const Motif& m, const SamplingConfig& cfg,
                     std::uint32_t k, const ProbabilityRule& rule) {
  ShiftPlan plan{grid, std::move(edge_counts), {}, {}};
  plan.probabilities = rule(plan.grid, plan.edge_counts, total_edges);
  check_probabilities(plan.probabilities, plan.edge_counts, m);
  for (std::size_t j = 0; j < grid.num_intervals; ++j) {
    if (inclusion_draw(cfg.seed, k, j) < plan.probabilities.q[j]) plan.sampled.push_back(j);
  }
  return plan;
}

ProbabilityRule heuristic_rule(double r) {
  return [r](const IntervalGrid&, std::span<const std::size_t> counts, std::size_t total) {
    return heuristic_probabilities(counts, total, r);
  };
}

}  // namespace

void SamplingConfig::validate() const {
  if (c < 2) throw Error(ErrorKind::kConfig, "c must be at least 2");
  if (b < 1) throw Error(ErrorKind::kConfig, "b must be at least 1");
  if (!(r > 0.0) || !std::isfinite(r)) throw Error(ErrorKind::kConfig, "r must be positive");
  if (target_epsilon && !(*target_epsilon > 0.0)) {
    throw Error(ErrorKind::kConfig, "target epsilon must be positive");
  }
}

TimeDelta window_width(std::int64_t c, TimeDelta delta) {
  if (c < 2) throw Error(ErrorKind::kConfig, "c must be at least 2");
  check_delta(delta);
  if (delta > std::numeric_limits<TimeDelta>::max() / c) {
    throw Error(ErrorKind::kConfig, "c * delta overflows 64 bits");
  }
  return c * delta;
}

IntervalGrid build_interval_grid(Timestamp t_max, std::int64_t c, TimeDelta delta,
                                 Timestamp shift) {
  const TimeDelta width = window_width(c, delta);
  if (shift > 0 || shift <= -width) {
    throw Error(ErrorKind::kConfig, "shift outside {-c*delta+1, ..., 0}");
  }
  if (t_max < 0) throw Error(ErrorKind::kDomain, "timestamps must be normalized");
  IntervalGrid grid;
  grid.shift = shift;
  grid.width = width;
  grid.num_intervals = 1 + static_cast<std::size_t>(t_max / width + (t_max % width != 0));
  return grid;
}

Timestamp draw_shift(std::uint64_t seed, std::uint32_t k, TimeDelta width) {
  const auto range = static_cast<std::uint64_t>(width);
  // Rejection keeps the draw exactly uniform.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % range;
  for (std::uint64_t attempt = 0;; ++attempt) {
    const std::uint64_t x = counter_hash(seed, kShiftTag, k, attempt);
    if (x < limit) return -static_cast<Timestamp>(x % range);
  }
}

double inclusion_draw(std::uint64_t seed, std::uint32_t k, std::size_t j) {
  return static_cast<double>(counter_hash(seed, kInclusionTag, k, j) >> 11) * 0x1.0p-53;
}

std::vector<std::size_t> interval_edge_counts(const TemporalGraph& g, const IntervalGrid& grid) {
  return bounds_to_counts(window_bounds(g.edges(), grid, 0));
}

SamplingProbabilities heuristic_probabilities(std::span<const std::size_t> edge_counts,
                                              std::size_t total_edges, double r) {
  if (!(r > 0.0)) throw Error(ErrorKind::kConfig, "r must be positive");
  SamplingProbabilities p;
  p.q.reserve(edge_counts.size());
  for (const auto mj : edge_counts) {
    if (mj == 0 || total_edges == 0) {
      p.q.push_back(0.0);
    } else {
      p.q.push_back(std::min(1.0, r * static_cast<double>(mj) / static_cast<double>(total_edges)));
    }
  }
  return p;
}

SamplingProbabilities heuristic_probabilities(const TemporalGraph& g, const IntervalGrid& grid,
                                              double r) {
  const auto counts = interval_edge_counts(g, grid);
  return heuristic_probabilities(counts, g.num_edges(), r);
}

double instance_weight(TimeDelta duration, std::int64_t c, TimeDelta delta) {
  const TimeDelta width = window_width(c, delta);
  if (duration < 0 || duration > delta) {
    throw Error(ErrorKind::kDomain, "instance duration outside [0, delta]");
  }
  return 1.0 / (1.0 - static_cast<double>(duration) / static_cast<double>(width));
}

Rational instance_weight_exact(TimeDelta duration, std::int64_t c, TimeDelta delta) {
  const TimeDelta width = window_width(c, delta);
  if (duration < 0 || duration > delta) {
    throw Error(ErrorKind::kDomain, "instance duration outside [0, delta]");
  }
  return Rational(width, width - duration);
}

double weighted_count(const CountDurationHistogram& h, TimeDelta width) {
  double y = 0.0;
  for (const auto& [d, count] : h.entries()) {
    if (d < 0 || d >= width) throw Error(ErrorKind::kDomain, "duration not below c*delta");
    y += static_cast<double>(count) * static_cast<double>(width) /
         static_cast<double>(width - d);
  }
  return y;
}

Rational weighted_count_exact(const CountDurationHistogram& h, TimeDelta width) {
  Rational y = 0;
  for (const auto& [d, count] : h.entries()) {
    if (d < 0 || d >= width) throw Error(ErrorKind::kDomain, "duration not below c*delta");
    y += Rational(count) * Rational(width, width - d);
  }
  return y;
}

std::vector<CountDurationHistogram> interval_histograms(const TemporalGraph& g,
                                                        const IntervalGrid& grid,
                                                        const Motif& m, TimeDelta delta,
                                                        const ExactCounter& algo,
                                                        unsigned threads) {
  std::vector<CountDurationHistogram> out(grid.num_intervals);
  detail::parallel_for(grid.num_intervals, threads, [&](unsigned, std::size_t j) {
    const auto slice = g.time_slice(grid.start(j), grid.end(j));
    if (slice.num_edges() >= m.num_edges()) out[j] = algo(slice, m, delta);
  });
  return out;
}

IntervalCountVector interval_count_vector(const TemporalGraph& g, const IntervalGrid& grid,
                                          const Motif& m, TimeDelta delta,
                                          const ExactCounter& algo, unsigned threads) {
  IntervalCountVector v;
  for (const auto& h : interval_histograms(g, grid, m, delta, algo, threads)) {
    v.y.push_back(weighted_count(h, grid.width));
  }
  return v;
}

Estimate estimate(const TemporalGraph& g, const Motif& m, TimeDelta delta,
                  const SamplingConfig& cfg, const ExactCounter& algo) {
  return estimate(g, m, delta, cfg, algo, heuristic_rule(cfg.r));
}

Estimate estimate(const TemporalGraph& input, const Motif& m, TimeDelta delta,
                  const SamplingConfig& cfg, const ExactCounter& algo,
                  const ProbabilityRule& rule) {
  cfg.validate();
  m.validate();
  const TimeDelta width = window_width(cfg.c, delta);

  Estimate est;
  est.per_shift.assign(cfg.b, 0.0);
  if (input.empty()) {
    for (std::uint32_t k = 0; k < cfg.b; ++k) est.shifts.push_back(draw_shift(cfg.seed, k, width));
    return est;
  }
  // Grids are laid out relative to the first timestamp; edges keep their own times.
  const TemporalGraph& g = input;
  const Timestamp origin = g.t_min();
  if (origin < 0 && g.t_max() > std::numeric_limits<Timestamp>::max() + origin) {
    throw Error(ErrorKind::kOverflow, "timestamp range exceeds 64 bits");
  }
  const Timestamp t_max = g.t_max() - origin;

  std::vector<ShiftPlan> plans;
  std::vector<std::vector<std::size_t>> bounds;
  struct Task {
    std::uint32_t k;
    std::size_t j;
  };
  std::vector<Task> tasks;
  for (std::uint32_t k = 0; k < cfg.b; ++k) {
    const Timestamp shift = draw_shift(cfg.seed, k, width);
    const auto grid = build_interval_grid(t_max, cfg.c, delta, shift);
    bounds.push_back(window_bounds(g.edges(), grid, origin));
    plans.push_back(plan_shift(grid, bounds_to_counts(bounds.back()), g.num_edges(), m, cfg, k, rule));
    est.shifts.push_back(shift);
    est.total_interval_count += grid.num_intervals;
    for (const auto j : plans.back().sampled) tasks.push_back({k, j});
  }

  std::vector<double> terms(tasks.size(), 0.0);
  detail::parallel_for(tasks.size(), cfg.threads, [&](unsigned, std::size_t i) {
    const auto& plan = plans[tasks[i].k];
    const std::size_t j = tasks[i].j;
    const auto slice = g.index_slice(bounds[tasks[i].k][j], bounds[tasks[i].k][j + 1]);
    if (slice.num_edges() < m.num_edges()) return;
    terms[i] = detail::window_term(algo(slice, m, delta), width, delta, plan.probabilities.q[j]);
  });

  // Fixed (k, j) order keeps the floating-point sum independent of threads.
  std::size_t sampled_edges = 0;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    est.per_shift[tasks[i].k] += terms[i];
    sampled_edges += plans[tasks[i].k].edge_counts[tasks[i].j];
  }
  est.sampled_interval_count = tasks.size();
  est.sampled_edge_fraction =
      static_cast<double>(sampled_edges) / (static_cast<double>(cfg.b) * static_cast<double>(g.num_edges()));
  double sum = 0.0;
  for (const double z : est.per_shift) sum += z;
  est.value = sum / static_cast<double>(cfg.b);
  return est;
}

double shift_estimate(std::span<const double> y, std::span<const double> q, std::uint64_t seed,
                      std::uint32_t k) {
  if (y.size() != q.size()) throw Error(ErrorKind::kDomain, "length mismatch");
  double z = 0.0;
  for (std::size_t j = 0; j < y.size(); ++j) {
    if (inclusion_draw(seed, k, j) < q[j]) z += y[j] / q[j];
  }
  return z;
}

std::vector<Rational> shift_norms_exact(const TemporalGraph& input, const Motif& m,
                                        TimeDelta delta, std::int64_t c,
                                        const ExactCounter& algo) {
  const TimeDelta width = window_width(c, delta);
  std::vector<Rational> norms;
  norms.reserve(static_cast<std::size_t>(width));
  const TemporalGraph g = normalize_timestamps(input);
  for (TimeDelta offset = 0; offset < width; ++offset) {
    Rational norm = 0;
    if (!g.empty()) {
      const auto grid = build_interval_grid(g.t_max(), c, delta, -offset);
      for (const auto& h : interval_histograms(g, grid, m, delta, algo)) {
        norm += weighted_count_exact(h, width);
      }
    }
    norms.push_back(std::move(norm));
  }
  return norms;
}

Rational exhaustive_expectation(const TemporalGraph& g, const Motif& m, TimeDelta delta,
                                std::int64_t c, const ExactCounter& algo) {
  const auto norms = shift_norms_exact(g, m, delta, c, algo);
  Rational sum = 0;
  for (const auto& n : norms) sum += n;
  return sum / static_cast<std::int64_t>(norms.size());
}

double correlation_diagnostic(std::span<const double> q, std::span<const double> y) {
  if (q.size() != y.size()) throw Error(ErrorKind::kDomain, "length mismatch");
  if (q.size() < 2) return 0.0;
  const double n = static_cast<double>(q.size());
  const double mq = std::accumulate(q.begin(), q.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sqq = 0.0, syy = 0.0, sqy = 0.0;
  for (std::size_t j = 0; j < q.size(); ++j) {
    const double dq = q[j] - mq;
    const double dy = y[j] - my;
    sqq += dq * dq;
    syy += dy * dy;
    sqy += dq * dy;
  }
  if (sqq == 0.0 || syy == 0.0) return 0.0;
  return std::clamp(sqy / std::sqrt(sqq * syy), -1.0, 1.0);
}

Rational variance_upper_bound(Count count, std::int64_t c) {
  if (c < 2) throw Error(ErrorKind::kConfig, "c must be at least 2");
  const Rational cm(count);
  return cm * cm / (c - 1);
}

double conditional_variance(std::span<const double> q, std::span<const double> y) {
  if (q.size() != y.size()) throw Error(ErrorKind::kDomain, "length mismatch");
  double v = 0.0;
  for (std::size_t j = 0; j < q.size(); ++j) {
    if (y[j] == 0.0) continue;
    if (!(q[j] > 0.0)) {
      throw Error(ErrorKind::kDomain, "zero sampling probability on a nonzero window");
    }
    v += y[j] * y[j] * (1.0 - q[j]) / q[j];
  }
  return v;
}

double sparsity_measure(std::span<const double> y) {
  double l1 = 0.0, l2 = 0.0;
  for (const double v : y) {
    l1 += std::abs(v);
    l2 += v * v;
  }
  if (l1 == 0.0) throw Error(ErrorKind::kDomain, "sparsity of a zero vector is undefined");
  return static_cast<double>(y.size() - 1) * l2 / (l1 * l1);
}

TradeoffTerms tradeoff_terms(std::span<const double> q, std::span<const double> y,
                             const SamplingConfig& cfg) {
  cfg.validate();
  TradeoffTerms t;
  const double l1 = std::accumulate(y.begin(), y.end(), 0.0);
  t.sampling_term = l1 > 0.0 ? conditional_variance(q, y) / (l1 * l1) : 0.0;
  t.shift_term = 1.0 / static_cast<double>(cfg.c - 1);
  if (cfg.target_epsilon) {
    t.budget = static_cast<double>(cfg.b) * *cfg.target_epsilon * *cfg.target_epsilon;
  }
  return t;
}

Diagnosis diagnose(const TemporalGraph& input, const Motif& m, TimeDelta delta,
                   const SamplingConfig& cfg, const ExactCounter& algo) {
  cfg.validate();
  m.validate();
  const TimeDelta width = window_width(cfg.c, delta);
  const TemporalGraph g = normalize_timestamps(input);
  Diagnosis d;
  d.grid = build_interval_grid(g.t_max(), cfg.c, delta, draw_shift(cfg.seed, 0, width));
  d.edge_counts = interval_edge_counts(g, d.grid);
  d.probabilities = heuristic_probabilities(d.edge_counts, g.num_edges(), cfg.r);
  d.counts = interval_count_vector(g, d.grid, m, delta, algo, cfg.threads);
  const auto& y = d.counts.y;
  const auto& q = d.probabilities.q;
  d.y_norm1 = std::accumulate(y.begin(), y.end(), 0.0);
  d.rho = correlation_diagnostic(q, y);
  if (d.y_norm1 > 0.0) d.sparsity = sparsity_measure(y);
  d.conditional_variance = conditional_variance(q, y);
  d.tradeoff = tradeoff_terms(q, y, cfg);
  return d;
}

}  // namespace tmotif
