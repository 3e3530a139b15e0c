// Acceptance checks. One PASS/FAIL line per criterion; exit status is the
// number of failures. Optional arguments pick criteria by number.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "tmotif/core.hpp"
#include "tmotif/exact.hpp"
#include "tmotif/sampling.hpp"
#include "tmotif/testkit.hpp"

using namespace tmotif;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

const ExactCounter kBacktracking = [](const TemporalGraph& g, const Motif& m, TimeDelta d) {
  return count_backtracking(g, m, d);
};

// Small random graph with between 1 and max_edges edges.
TemporalGraph small_graph(std::mt19937_64& rng, std::size_t max_nodes, std::size_t max_edges,
                          Timestamp t_range) {
  const std::size_t n = std::uniform_int_distribution<std::size_t>(2, max_nodes)(rng);
  const std::size_t m = std::uniform_int_distribution<std::size_t>(1, max_edges)(rng);
  return testkit::random_temporal_graph(n, m, t_range, rng());
}

TimeDelta median_gap(const TemporalGraph& g) {
  std::vector<TimeDelta> gaps;
  const auto e = g.edges();
  for (std::size_t i = 1; i < e.size(); ++i) gaps.push_back(e[i].t - e[i - 1].t);
  if (gaps.empty()) return 0;
  std::nth_element(gaps.begin(), gaps.begin() + gaps.size() / 2, gaps.end());
  return gaps[gaps.size() / 2];
}

Outcome oracle_equivalence() {
  const auto start = std::chrono::steady_clock::now();
  std::vector<Motif> motifs{parse_motif("m23"), parse_motif("bifan"), parse_motif("triangle")};
  for (const auto& p : kAllDirectionPatterns3) motifs.push_back(to_motif(p));
  std::mt19937_64 rng(20240601);
  constexpr int kGraphs = 500;
  std::size_t comparisons = 0;
  std::size_t instances = 0;
  for (int i = 0; i < kGraphs; ++i) {
    const Timestamp t_range = std::uniform_int_distribution<Timestamp>(5, 200)(rng);
    const auto g = small_graph(rng, 8, 40, t_range);
    for (const TimeDelta delta : {TimeDelta{1}, median_gap(g), TimeDelta{t_range}}) {
      for (const auto& m : motifs) {
        const auto truth = testkit::brute_force_count(g, m, delta);
        instances += total_count(truth);
        ++comparisons;
        if (!(count_backtracking(g, m, delta) == truth)) {
          return {false, fmt("backtracking differs on graph %d, delta %lld", i, (long long)delta)};
        }
      }
      for (const auto& p : kAllDirectionPatterns3) {
        ++comparisons;
        if (!(count_ex23(g, p, delta) == testkit::brute_force_count(g, to_motif(p), delta))) {
          return {false, fmt("ex23 differs on graph %d, delta %lld", i, (long long)delta)};
        }
      }
    }
  }
  const double secs = seconds_since(start);
  return {secs <= 60.0, fmt("%d graphs, %zu histogram comparisons, %zu instances, %.1fs",
                            kGraphs, comparisons, instances, secs)};
}

// Shared corpus for the exact sampling identities.
struct CorpusItem {
  TemporalGraph graph;
  TimeDelta delta;
};

std::vector<CorpusItem> small_corpus() {
  std::mt19937_64 rng(77);
  std::vector<CorpusItem> out;
  for (int i = 0; i < 80; ++i) {
    const Timestamp t_range = std::uniform_int_distribution<Timestamp>(10, 40)(rng);
    auto g = small_graph(rng, 5, 40, t_range);
    const TimeDelta delta = std::uniform_int_distribution<TimeDelta>(1, 8)(rng);
    out.push_back({std::move(g), delta});
  }
  return out;
}

const std::vector<Motif>& identity_motifs() {
  static const std::vector<Motif> m{parse_motif("m23"), parse_motif("triangle"),
                                    make_motif({{0, 1}, {0, 2}})};
  return m;
}

Outcome exact_unbiasedness(const std::vector<CorpusItem>& corpus) {
  const auto start = std::chrono::steady_clock::now();
  std::size_t checks = 0;
  Count total = 0;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    for (const auto& m : identity_motifs()) {
      const auto truth = total_count(testkit::brute_force_count(corpus[i].graph, m, corpus[i].delta));
      total += truth;
      for (const std::int64_t c : {2, 4}) {
        ++checks;
        const auto e = exhaustive_expectation(corpus[i].graph, m, corpus[i].delta, c, kBacktracking);
        if (e != Rational(truth)) {
          return {false, fmt("graph %zu c=%lld: expectation %s, count %llu", i, (long long)c,
                             e.str().c_str(), (unsigned long long)truth)};
        }
      }
    }
  }
  const double secs = seconds_since(start);
  return {secs <= 60.0 && total > 0, fmt("%zu graphs, %zu exact identities, %llu instances, %.1fs",
                                         corpus.size(), checks, (unsigned long long)total, secs)};
}

Outcome containment_probability(const std::vector<CorpusItem>& corpus) {
  std::size_t instances = 0;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& g = corpus[i].graph;
    const TimeDelta delta = corpus[i].delta;
    for (const auto& m : identity_motifs()) {
      for (const std::int64_t c : {2, 4}) {
        const TimeDelta width = window_width(c, delta);
        bool ok = true;
        testkit::brute_force_instances(g, m, delta, [&](const MotifInstance& inst) {
          const Timestamp first = g.edges()[inst.edge_indices.front()].t;
          const Timestamp last = g.edges()[inst.edge_indices.back()].t;
          std::int64_t contained = 0;
          for (Timestamp s = 0; s > -width; --s) {
            const auto grid = build_interval_grid(g.t_max(), c, delta, s);
            contained += grid.index_of(first) == grid.index_of(last);
          }
          ++instances;
          ok &= Rational(contained, width) == 1 - Rational(last - first, width);
        });
        if (!ok) return {false, fmt("graph %zu c=%lld", i, (long long)c)};
      }
    }
  }
  return {instances > 0, fmt("%zu instance/c pairs, all exact", instances)};
}

Outcome variance_bound(const std::vector<CorpusItem>& corpus) {
  std::size_t checks = 0;
  double worst = 0.0;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    for (const auto& m : identity_motifs()) {
      const auto truth = total_count(testkit::brute_force_count(corpus[i].graph, m, corpus[i].delta));
      for (const std::int64_t c : {2, 4, 8}) {
        const auto norms = shift_norms_exact(corpus[i].graph, m, corpus[i].delta, c, kBacktracking);
        Rational mean = 0, second = 0;
        for (const auto& x : norms) {
          mean += x;
          second += x * x;
        }
        const auto n = static_cast<std::int64_t>(norms.size());
        mean /= n;
        second /= n;
        const Rational var = second - mean * mean;
        const Rational bound = variance_upper_bound(truth, c);
        ++checks;
        if (var > bound) {
          return {false, fmt("graph %zu c=%lld: variance %s > bound %s", i, (long long)c,
                             var.str().c_str(), bound.str().c_str())};
        }
        if (bound > 0) worst = std::max(worst, static_cast<double>(var / bound));
      }
    }
  }
  return {true, fmt("%zu exact comparisons, largest variance/bound %.3f", checks, worst)};
}

Outcome conditional_variance_check() {
  // Y and q from a real pass over a conversation graph.
  const auto g = testkit::conversation_temporal_graph(40, 20000, 2'000'000, 6, 40, 5);
  const auto m = parse_motif("m23");
  SamplingConfig cfg;
  cfg.c = 8;
  cfg.r = 8;
  cfg.threads = 1;
  const auto d = diagnose(g, m, 200, cfg, make_counter(Algorithm::kAuto, m));
  const double closed = conditional_variance(d.probabilities.q, d.counts.y);

  constexpr int kDraws = 100000;
  std::vector<double> z(kDraws);
  double mean = 0.0;
  for (int i = 0; i < kDraws; ++i) {
    z[i] = shift_estimate(d.counts.y, d.probabilities.q, 1000 + static_cast<std::uint64_t>(i), 0);
    mean += z[i];
  }
  mean /= kDraws;
  double m2 = 0.0, m4 = 0.0;
  for (const double v : z) {
    const double sq = (v - mean) * (v - mean);
    m2 += sq;
    m4 += sq * sq;
  }
  m2 /= kDraws - 1;
  m4 /= kDraws;
  const double se = std::sqrt(std::max(0.0, m4 - m2 * m2) / kDraws);
  const double gap = std::abs(m2 - closed);
  return {closed > 0.0 && gap <= 3.0 * se,
          fmt("%zu windows, closed form %.6g, simulated %.6g, |diff| = %.2f SE", d.grid.num_intervals,
              closed, m2, se > 0 ? gap / se : 0.0)};
}

// ~1e5 edges over ~20 windows of the default width.
TemporalGraph accuracy_graph() {
  return testkit::conversation_temporal_graph(2000, 100000, 20 * 32 * 3600, 8, 600, 2026);
}

Outcome end_to_end_accuracy() {
  const auto start = std::chrono::steady_clock::now();
  const auto g = accuracy_graph();
  const auto m = parse_motif("m23");
  const TimeDelta delta = 3600;
  const auto pattern = *as_direction_pattern(m);
  const double truth = static_cast<double>(total_count(count_ex23(g, pattern, delta)));
  const auto counter = make_counter(Algorithm::kAuto, m);
  int within = 0;
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    SamplingConfig cfg;
    cfg.seed = seed;
    const double err = std::abs(estimate(g, m, delta, cfg, counter).value - truth) / truth;
    within += err <= 0.05;
    worst = std::max(worst, err);
  }
  const double secs = seconds_since(start);
  return {within >= 90 && secs <= 300.0,
          fmt("%zu edges, exact %.0f, %d/100 seeds within 5%%, worst %.2f%%, %.1fs", g.num_edges(),
              truth, within, 100 * worst, secs)};
}

bool same_estimate(const Estimate& a, const Estimate& b) {
  return a.value == b.value && a.per_shift == b.per_shift && a.shifts == b.shifts &&
         a.sampled_interval_count == b.sampled_interval_count &&
         a.total_interval_count == b.total_interval_count &&
         a.sampled_edge_fraction == b.sampled_edge_fraction;
}

Outcome determinism_and_streaming() {
  const auto g = testkit::conversation_temporal_graph(300, 50000, 4'000'000, 6, 50, 11);
  const auto m = parse_motif("m23");
  const auto counter = make_counter(Algorithm::kAuto, m);
  SamplingConfig cfg;
  cfg.c = 8;
  cfg.r = 16;
  cfg.seed = 123;
  const TimeDelta delta = 300;
  const unsigned max_threads = std::max(1u, std::thread::hardware_concurrency());
  cfg.threads = 1;
  const auto base = estimate(g, m, delta, cfg, counter);
  for (const unsigned t : {4u, max_threads}) {
    cfg.threads = t;
    if (!same_estimate(estimate(g, m, delta, cfg, counter), base)) {
      return {false, fmt("threads=%u differs from threads=1", t)};
    }
  }
  cfg.threads = 1;
  const auto streamed = estimate_streaming(graph_replay(g), m, delta, cfg, counter);
  if (!same_estimate(streamed, base)) return {false, "streaming differs from in-memory"};

  // Adversarial: sparse background with dense bursts straddling window edges.
  std::vector<TemporalEdge> edges;
  std::mt19937_64 rng(9);
  for (Timestamp t = 0; t < 2'000'000; t += 97) edges.push_back({0, 1, t, edges.size()});
  for (Timestamp centre = 100'000; centre < 2'000'000; centre += 400'000) {
    for (int i = 0; i < 5000; ++i) {
      const auto u = static_cast<NodeId>(2 + rng() % 30);
      const auto v = static_cast<NodeId>(2 + rng() % 30);
      edges.push_back({u, v, centre + static_cast<Timestamp>(rng() % 2400), edges.size()});
    }
  }
  const auto adv = TemporalGraph::from_edges(std::move(edges));
  SamplingConfig acfg;
  acfg.c = 4;
  acfg.b = 8;
  acfg.r = 64;
  acfg.seed = 5;
  acfg.threads = 1;
  const auto s = estimate_streaming(graph_replay(adv), m, 300, acfg, counter);
  std::size_t widest = 0;
  for (const auto shift : s.shifts) {
    const auto grid = build_interval_grid(adv.t_max(), acfg.c, 300, shift);
    for (const auto c : interval_edge_counts(adv, grid)) widest = std::max(widest, c);
  }
  const std::size_t peak = s.peak_retained_edges.value_or(SIZE_MAX);
  const bool memory_ok = peak <= 2 * widest * acfg.b;
  const bool adv_equal = same_estimate(s, estimate(adv, m, 300, acfg, counter));
  return {memory_ok && adv_equal,
          fmt("threads {1,4,%u} identical; streaming identical; peak %zu <= 2 x %zu x %u over %zu edges",
              max_threads, peak, widest, acfg.b, adv.num_edges())};
}

// r such that the b shifts together touch about `coverage` of the edges.
double solve_r(const TemporalGraph& g, const SamplingConfig& cfg, TimeDelta delta, double coverage) {
  const auto grid = build_interval_grid(g.t_max() - g.t_min(), cfg.c, delta, 0);
  const auto counts = interval_edge_counts(normalize_timestamps(g), grid);
  const double m = static_cast<double>(g.num_edges());
  auto expected = [&](double r) {
    double f = 0.0;
    for (const auto c : counts) f += std::min(1.0, r * c / m) * c / m;
    return f * cfg.b;
  };
  double lo = 1e-9, hi = 1e9;
  for (int i = 0; i < 200; ++i) {
    const double mid = std::sqrt(lo * hi);
    (expected(mid) < coverage ? lo : hi) = mid;
  }
  return lo;
}

Outcome relative_speed() {
  const auto g = testkit::conversation_temporal_graph(20000, 1'000'000, 40000LL * 32 * 100, 6, 15, 31);
  const auto m = parse_motif("m23");
  const TimeDelta delta = 100;
  const auto pattern = *as_direction_pattern(m);

  auto t0 = std::chrono::steady_clock::now();
  const double truth = static_cast<double>(total_count(count_ex23(g, pattern, delta, 1)));
  const double exact_secs = seconds_since(t0);

  SamplingConfig cfg;
  cfg.threads = 1;
  cfg.r = solve_r(g, cfg, delta, 0.10);
  const auto counter = make_counter(Algorithm::kAuto, m);
  constexpr int kSeeds = 20;
  int within = 0;
  double total_secs = 0.0, coverage = 0.0, worst = 0.0;
  for (int seed = 0; seed < kSeeds; ++seed) {
    cfg.seed = static_cast<std::uint64_t>(seed);
    t0 = std::chrono::steady_clock::now();
    const auto est = estimate(g, m, delta, cfg, counter);
    total_secs += seconds_since(t0);
    const double err = std::abs(est.value - truth) / truth;
    within += err <= 0.05;
    worst = std::max(worst, err);
    coverage += est.sampled_edge_fraction * cfg.b;
  }
  const double est_secs = total_secs / kSeeds;
  const double speedup = exact_secs / est_secs;
  return {speedup >= 3.0 && within * 10 >= kSeeds * 9,
          fmt("%zu edges, r=%.1f, coverage %.1f%%, exact %.3fs, estimate %.3fs (%.1fx), %d/%d "
              "seeds within 5%%, worst %.2f%%",
              g.num_edges(), cfg.r, 100 * coverage / kSeeds, exact_secs, est_secs, speedup, within,
              kSeeds, 100 * worst)};
}

Outcome reduction_property() {
  std::size_t checked = 0;
  for (std::size_t n = 1; n <= 6; ++n) {
    std::vector<std::pair<NodeId, NodeId>> pairs;
    for (NodeId u = 1; u <= n; ++u)
      for (NodeId v = u + 1; v <= n; ++v) pairs.emplace_back(u, v);
    for (std::uint32_t mask = 0; mask < (1u << pairs.size()); ++mask) {
      testkit::CliqueInstance inst{n, {}, 0};
      for (std::size_t i = 0; i < pairs.size(); ++i)
        if (mask >> i & 1) inst.edges.push_back(pairs[i]);
      for (std::size_t k = 2; k <= std::min<std::size_t>(4, n); ++k) {
        inst.k = k;
        const auto r = testkit::clique_reduction_instance(inst);
        const bool star = total_count(count_backtracking(r.graph, r.star, r.delta)) > 0;
        ++checked;
        if (star != testkit::has_k_clique(inst)) {
          return {false, fmt("n=%zu mask=%u k=%zu", n, mask, k)};
        }
      }
    }
  }
  return {true, fmt("%zu (graph, k) pairs on up to 6 nodes", checked)};
}

}  // namespace

int main(int argc, char** argv) {
  const auto corpus = small_corpus();
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"oracle equivalence", oracle_equivalence},
      {"exact unbiasedness", [&] { return exact_unbiasedness(corpus); }},
      {"containment probability", [&] { return containment_probability(corpus); }},
      {"variance bound", [&] { return variance_bound(corpus); }},
      {"conditional variance", conditional_variance_check},
      {"end-to-end accuracy", end_to_end_accuracy},
      {"determinism and streaming equivalence", determinism_and_streaming},
      {"relative speed", relative_speed},
      {"reduction property", reduction_property},
  };
  int failures = 0;
  std::vector<bool> selected(criteria.size(), argc == 1);
  for (int a = 1; a < argc; ++a) {
    const auto n = static_cast<std::size_t>(std::atoi(argv[a]));
    if (n >= 1 && n <= criteria.size()) selected[n - 1] = true;
  }
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (!selected[i]) continue;
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("%s criterion %zu: %s (%s)\n", o.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  return failures;
}
