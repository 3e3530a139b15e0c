#include <limits>

#include "doctest.h"
#include "tmotif/exact.hpp"
#include "tmotif/testkit.hpp"

using namespace tmotif;

namespace {

TemporalGraph graph_of(std::initializer_list<std::tuple<NodeId, NodeId, Timestamp>> list) {
  std::vector<TemporalEdge> edges;
  for (const auto& [u, v, t] : list) edges.push_back({u, v, t, edges.size()});
  return TemporalGraph::from_edges(std::move(edges));
}

CountDurationHistogram hist(std::initializer_list<std::pair<TimeDelta, Count>> list) {
  CountDurationHistogram h;
  for (const auto& [d, c] : list) h.add(d, c);
  return h;
}

}  // namespace

TEST_CASE("histogram accumulates and totals") {
  CountDurationHistogram h;
  h.add(2, 1);
  h.add(3, 4);
  h.add(2, 0);
  CHECK(h.size() == 2);
  CHECK(total_count(h) == 5);
  CHECK(total_count(CountDurationHistogram{}) == 0);
  CHECK(h.at(7) == 0);
}

TEST_CASE("histogram overflow is an error, never a wraparound") {
  CountDurationHistogram h;
  h.add(1, std::numeric_limits<Count>::max());
  CHECK_THROWS_AS(h.add(1, 1), Error);
  CountDurationHistogram two;
  two.add(1, std::numeric_limits<Count>::max());
  two.add(2, 1);
  try {
    total_count(two);
    FAIL("expected overflow");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kOverflow);
  }
}

TEST_CASE("backtracking: m23 on a single alternating triple") {
  const auto g = graph_of({{0, 1, 1}, {1, 0, 2}, {0, 1, 3}});
  const auto m23 = parse_motif("m23");
  CHECK(testkit::brute_force_count(g, m23, 10) == hist({{2, 1}}));
  CHECK(count_backtracking(g, m23, 10) == hist({{2, 1}}));
  CHECK(count_backtracking(g, m23, 1).empty());
}

TEST_CASE("backtracking: empty graph") {
  for (const char* name : {"m23", "bifan", "triangle"}) {
    CHECK(count_backtracking(TemporalGraph{}, parse_motif(name), 100).empty());
  }
}

TEST_CASE("backtracking: bi-fan single candidate") {
  // u=0, v=1, y=2, z=3
  const auto g = graph_of({{0, 2, 1}, {0, 3, 2}, {1, 2, 3}, {1, 3, 4}});
  const auto bifan = parse_motif("bifan");
  CHECK(testkit::brute_force_count(g, bifan, 3) == hist({{3, 1}}));
  CHECK(count_backtracking(g, bifan, 3) == hist({{3, 1}}));
  CHECK(count_backtracking(g, bifan, 2).empty());
}

TEST_CASE("backtracking respects injectivity and self-loops") {
  const auto g = graph_of({{0, 0, 1}, {0, 0, 2}, {0, 1, 3}});
  CHECK(count_backtracking(g, make_motif({{0, 0}, {0, 0}}), 5) == hist({{1, 1}}));
  CHECK(count_backtracking(g, make_motif({{0, 1}, {0, 1}}), 5).empty());
  // A path a->b->c must not reuse a as c.
  const auto back = graph_of({{0, 1, 1}, {1, 0, 2}});
  CHECK(count_backtracking(back, make_motif({{0, 1}, {1, 2}}), 5).empty());
}

TEST_CASE("backtracking handles an unbounded span") {
  const auto g = graph_of({{0, 1, std::numeric_limits<Timestamp>::max() - 5},
                           {1, 0, std::numeric_limits<Timestamp>::max() - 1}});
  CHECK(count_backtracking(g, parse_motif("a b\nb a"), kUnboundedDelta) == hist({{4, 1}}));
}

TEST_CASE("pair_timelines") {
  const auto g = graph_of({{0, 1, 1}, {1, 0, 2}, {0, 2, 3}});
  const auto tl = pair_timelines(g);
  REQUIRE(tl.size() == 2);
  CHECK(tl[0].u == 0);
  CHECK(tl[0].v == 1);
  CHECK(tl[0].events.size() == 2);
  CHECK(tl[0].events[0].forward);
  CHECK_FALSE(tl[0].events[1].forward);
  CHECK(tl[1].v == 2);
  CHECK(tl[1].events.size() == 1);
  CHECK(pair_timelines(TemporalGraph{}).empty());
}

TEST_CASE("pair_timelines partitions the non-loop edges") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto g = testkit::random_temporal_graph(6, 50, 100, seed);
    std::size_t loops = 0;
    for (const auto& e : g.edges()) loops += e.src == e.dst;
    std::size_t total = 0;
    for (const auto& t : pair_timelines(g)) {
      CHECK(t.u < t.v);
      total += t.events.size();
      for (std::size_t i = 1; i < t.events.size(); ++i) {
        CHECK((t.events[i - 1].t < t.events[i].t ||
               (t.events[i - 1].t == t.events[i].t && t.events[i - 1].seq < t.events[i].seq)));
      }
    }
    CHECK(total + loops == g.num_edges());
  }
}

TEST_CASE("as_direction_pattern recognises exactly the 2-node 3-edge motifs") {
  const auto p = as_direction_pattern(parse_motif("m23"));
  REQUIRE(p.has_value());
  CHECK(*p == DirectionPattern3{Direction::kBackward, Direction::kForward});
  CHECK_FALSE(as_direction_pattern(parse_motif("bifan")));
  CHECK_FALSE(as_direction_pattern(parse_motif("a b\nb a")));
  CHECK_FALSE(as_direction_pattern(make_motif({{0, 0}, {0, 1}, {0, 1}})));
  for (const auto& pattern : kAllDirectionPatterns3) {
    CHECK(as_direction_pattern(to_motif(pattern)) == pattern);
  }
}

TEST_CASE("ex23: m23 counts the middle edge right after the first") {
  const auto g = graph_of({{0, 1, 1}, {1, 0, 2}, {0, 1, 3}});
  CHECK(count_ex23(g, *as_direction_pattern(parse_motif("m23")), 10) == hist({{2, 1}}));
}

TEST_CASE("ex23: timelines with fewer than three events") {
  const auto g = graph_of({{0, 1, 1}, {1, 0, 2}, {2, 3, 3}, {2, 3, 4}});
  for (const auto& p : kAllDirectionPatterns3) CHECK(count_ex23(g, p, 100).empty());
}

TEST_CASE("ex23: all-forward pattern on four forward edges") {
  const auto g = graph_of({{0, 1, 1}, {0, 1, 2}, {0, 1, 3}, {0, 1, 4}});
  const DirectionPattern3 fff{Direction::kForward, Direction::kForward};
  const auto expected = testkit::brute_force_count(g, to_motif(fff), 3);
  CHECK(expected == hist({{2, 2}, {3, 2}}));
  CHECK(count_ex23(g, fff, 3) == expected);
}

TEST_CASE("ex23 and backtracking agree with the oracle on random graphs") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto g = testkit::random_temporal_graph(2 + seed % 5, 10 + seed % 25, 40, seed);
    for (const TimeDelta delta : {TimeDelta{1}, TimeDelta{7}, TimeDelta{40}}) {
      for (const auto& p : kAllDirectionPatterns3) {
        const auto m = to_motif(p);
        const auto oracle = testkit::brute_force_count(g, m, delta);
        CHECK(count_backtracking(g, m, delta) == oracle);
        CHECK(count_ex23(g, p, delta) == oracle);
      }
    }
  }
}

TEST_CASE("ex23 result does not depend on the worker count") {
  const auto g = testkit::random_temporal_graph(8, 400, 200, 11);
  for (const auto& p : kAllDirectionPatterns3) {
    const auto serial = count_ex23(g, p, 30, 1);
    CHECK(count_ex23(g, p, 30, 4) == serial);
    CHECK(count_ex23(g, p, 30, 0) == serial);
  }
}

TEST_CASE("counts grow with delta and durations stay within delta") {
  const auto bifan = parse_motif("bifan");
  const auto tri = parse_motif("triangle");
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    const auto g = testkit::random_temporal_graph(5, 35, 60, seed);
    for (const auto* m : {&bifan, &tri}) {
      Count previous = 0;
      for (TimeDelta delta = 0; delta <= 60; delta += 6) {
        const auto h = count_backtracking(g, *m, delta);
        const Count total = total_count(h);
        CHECK(total >= previous);
        previous = total;
        for (const auto& [d, c] : h.entries()) CHECK(d <= delta);
      }
    }
  }
}

TEST_CASE("make_counter dispatch") {
  CHECK(resolve_algorithm(Algorithm::kAuto, parse_motif("m23")) == Algorithm::kEx23);
  CHECK(resolve_algorithm(Algorithm::kAuto, parse_motif("bifan")) == Algorithm::kBacktracking);
  try {
    make_counter(Algorithm::kEx23, parse_motif("bifan"));
    FAIL("expected usage error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kUsage);
  }
  CHECK(parse_algorithm("bt") == Algorithm::kBacktracking);
  CHECK(algorithm_name(parse_algorithm("ex23")) == "ex23");
  CHECK_THROWS_AS(parse_algorithm("f23"), Error);
}
