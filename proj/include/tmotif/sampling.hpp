#pragma once

// Importance-sampling estimator for temporal motif counts.
//
// The time axis is tiled by disjoint windows of width c*delta, offset by a
// random shift. An instance of duration D lands wholly inside one window for
// a fraction 1 - D/(c*delta) of the shifts, so weighting it by the inverse
// of that fraction makes the weighted window total unbiased. Windows are
// then sampled independently with probability q_j and their exact weighted
// counts are scaled by 1/q_j.

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "tmotif/core.hpp"
#include "tmotif/exact.hpp"

namespace tmotif {

using Rational = boost::multiprecision::cpp_rational;

struct SamplingConfig {
  std::int64_t c = 32;   // window width multiplier, >= 2
  std::uint32_t b = 8;   // number of shifts
  double r = 32.0;       // probability scale for the edge-proportional heuristic
  std::uint64_t seed = 0;
  std::optional<double> target_epsilon;
  unsigned threads = 0;  // 0 = hardware concurrency

  /// Throws Error(kConfig) on c < 2, b < 1 or r <= 0.
  void validate() const;
};

/// Checked c * delta.
TimeDelta window_width(std::int64_t c, TimeDelta delta);

/// Windows [shift + j*width, shift + (j+1)*width - 1] for j = 0..num_intervals-1
/// (0-based here), covering [0, t_max].
struct IntervalGrid {
  Timestamp shift = 0;
  TimeDelta width = 1;
  std::size_t num_intervals = 0;

  Timestamp start(std::size_t j) const noexcept {
    return shift + static_cast<Timestamp>(j) * width;
  }
  Timestamp end(std::size_t j) const noexcept { return start(j) + width - 1; }

  /// Window holding timestamp t (t >= shift).
  std::size_t index_of(Timestamp t) const noexcept {
    return static_cast<std::size_t>((t - shift) / width);
  }
};

/// 1 + ceil(t_max / width) windows at the given shift, which must lie in
/// {-width+1, ..., 0}.
IntervalGrid build_interval_grid(Timestamp t_max, std::int64_t c, TimeDelta delta,
                                 Timestamp shift);

/// Same, with the shift drawn uniformly from {-c*delta+1, ..., 0} by `rng`.
template <typename Rng>
IntervalGrid build_interval_grid(const TemporalGraph& g, std::int64_t c, TimeDelta delta,
                                 Rng& rng) {
  const TimeDelta width = window_width(c, delta);
  const auto offset = static_cast<Timestamp>(rng() % static_cast<std::uint64_t>(width));
  return build_interval_grid(g.t_max(), c, delta, -offset);
}

/// Shift for estimator k. Pure function of (seed, k).
Timestamp draw_shift(std::uint64_t seed, std::uint32_t k, TimeDelta width);

/// Uniform [0, 1) draw deciding whether window j of shift k is sampled.
/// Pure function of (seed, k, j), so scheduling cannot change the sample.
double inclusion_draw(std::uint64_t seed, std::uint32_t k, std::size_t j);

/// Number of edges falling in each window.
std::vector<std::size_t> interval_edge_counts(const TemporalGraph& g, const IntervalGrid& grid);

struct SamplingProbabilities {
  std::vector<double> q;
};

/// q_j = min(1, r * m_j / m); empty windows get 0.
SamplingProbabilities heuristic_probabilities(std::span<const std::size_t> edge_counts,
                                              std::size_t total_edges, double r);
SamplingProbabilities heuristic_probabilities(const TemporalGraph& g, const IntervalGrid& grid,
                                              double r);

/// 1 / (1 - duration / (c*delta)). Throws Error(kDomain) when duration is
/// outside [0, delta].
double instance_weight(TimeDelta duration, std::int64_t c, TimeDelta delta);
Rational instance_weight_exact(TimeDelta duration, std::int64_t c, TimeDelta delta);

/// Sum of count * width / (width - duration) over a window's histogram.
/// Throws Error(kDomain) for a duration >= width.
double weighted_count(const CountDurationHistogram& h, TimeDelta width);
Rational weighted_count_exact(const CountDurationHistogram& h, TimeDelta width);

/// Exact histograms of every window of the grid.
std::vector<CountDurationHistogram> interval_histograms(const TemporalGraph& g,
                                                        const IntervalGrid& grid,
                                                        const Motif& m, TimeDelta delta,
                                                        const ExactCounter& algo,
                                                        unsigned threads = 1);

struct IntervalCountVector {
  std::vector<double> y;
};

IntervalCountVector interval_count_vector(const TemporalGraph& g, const IntervalGrid& grid,
                                          const Motif& m, TimeDelta delta,
                                          const ExactCounter& algo, unsigned threads = 1);

struct Estimate {
  double value = 0.0;
  std::vector<double> per_shift;
  std::vector<Timestamp> shifts;
  std::size_t sampled_interval_count = 0;
  std::size_t total_interval_count = 0;
  double sampled_edge_fraction = 0.0;
  std::optional<double> rho;
  std::optional<std::size_t> peak_retained_edges;  // streaming only
};

/// Custom probability rule: (grid, per-window edge counts, total edges) -> q.
using ProbabilityRule = std::function<SamplingProbabilities(
    const IntervalGrid&, std::span<const std::size_t>, std::size_t)>;

/// Sampling estimator over b shifts. Windows are counted concurrently; the
/// result is independent of cfg.threads.
Estimate estimate(const TemporalGraph& g, const Motif& m, TimeDelta delta,
                  const SamplingConfig& cfg, const ExactCounter& algo);

/// As above with caller-provided probabilities. A zero probability on a
/// window holding at least l edges throws Error(kConfig).
Estimate estimate(const TemporalGraph& g, const Motif& m, TimeDelta delta,
                  const SamplingConfig& cfg, const ExactCounter& algo,
                  const ProbabilityRule& rule);

/// A replayable time-ordered edge stream: each call feeds every edge to the
/// sink, in order. Node ids must be stable across calls.
using EdgeSink = std::function<void(const TemporalEdge&)>;
using EdgeReplay = std::function<void(const EdgeSink&)>;

/// One-pass-per-replay estimator. A first pass gathers per-window edge
/// counts; the second keeps only the edges of the currently open sampled
/// window of each shift. Produces the same Estimate as estimate() for the
/// same input and configuration. Throws Error(kStreamOrder) on an edge that
/// is earlier than its predecessor.
Estimate estimate_streaming(const EdgeReplay& replay, const Motif& m, TimeDelta delta,
                            const SamplingConfig& cfg, const ExactCounter& algo);

/// Replays an edge-list file sorted by time, interning labels in order of
/// first appearance.
EdgeReplay edge_list_file_replay(const std::string& path);

/// Replays an in-memory graph.
EdgeReplay graph_replay(const TemporalGraph& g);

/// sum_j Q_j * y_j / q_j for shift k using the inclusion draws of `seed`.
double shift_estimate(std::span<const double> y, std::span<const double> q,
                      std::uint64_t seed, std::uint32_t k);

/// Average of ||Y_s||_1 over every shift, in exact arithmetic.
Rational exhaustive_expectation(const TemporalGraph& g, const Motif& m, TimeDelta delta,
                                std::int64_t c, const ExactCounter& algo);

/// ||Y_s||_1 for each shift s = 0, -1, ..., -c*delta+1, exactly.
std::vector<Rational> shift_norms_exact(const TemporalGraph& g, const Motif& m,
                                        TimeDelta delta, std::int64_t c,
                                        const ExactCounter& algo);

/// Pearson correlation of q and y; 0 when either is constant.
double correlation_diagnostic(std::span<const double> q, std::span<const double> y);

/// count^2 / (c - 1).
Rational variance_upper_bound(Count count, std::int64_t c);

/// sum_j y_j^2 (1 - q_j) / q_j.
double conditional_variance(std::span<const double> q, std::span<const double> y);

/// (l - 1) * ||y||_2^2 / ||y||_1^2.
double sparsity_measure(std::span<const double> y);

/// Terms of the error trade-off, estimated from one full pass at one shift:
/// the sampling term (||Y^||^2 - ||Y||^2) / ||Y||_1^2 against the shift term
/// 1 / (c - 1). The sum should not exceed b * epsilon^2.
struct TradeoffTerms {
  double sampling_term = 0.0;
  double shift_term = 0.0;
  std::optional<double> budget;  // b * epsilon^2 when a target is set
};

TradeoffTerms tradeoff_terms(std::span<const double> q, std::span<const double> y,
                             const SamplingConfig& cfg);

struct Diagnosis {
  IntervalGrid grid;
  SamplingProbabilities probabilities;
  IntervalCountVector counts;
  std::vector<std::size_t> edge_counts;
  double y_norm1 = 0.0;
  double rho = 0.0;
  std::optional<double> sparsity;
  double conditional_variance = 0.0;
  TradeoffTerms tradeoff;
};

/// Full pass over every window at shift 0 of the configured seed.
Diagnosis diagnose(const TemporalGraph& g, const Motif& m, TimeDelta delta,
                   const SamplingConfig& cfg, const ExactCounter& algo);

}  // namespace tmotif
