#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>

#include "cim/parallel.hpp"
#include "cim/rrset.hpp"
#include "oracles.hpp"

namespace cim {
namespace {

constexpr NodeId a = 0, b = 1, c = 2;

// {{a},{a,b},{b},{c}} over N = 10.
RRIndex fixture() {
  return RRIndex::from_sets(10, {{a, {a}}, {b, {a, b}}, {b, {b}}, {c, {c}}});
}

Graph chain(std::vector<EdgeRecord> edges, std::size_t n) {
  return Graph::from_edges(n, std::move(edges));
}

TEST(RRSet, IsolatedRoot) {
  const Graph g = chain({{0, 1, 1.0}}, 3);
  Rng rng = make_stream(1, "t");
  for (int i = 0; i < 50; ++i) {
    const RRSet r = sample_rr_set(g, rng);
    if (r.root == 2) EXPECT_EQ(r.nodes, std::vector<NodeId>{2});
    if (r.root == 0) EXPECT_EQ(r.nodes, std::vector<NodeId>{0});
  }
}

TEST(RRSet, DeterministicAndBlockedEdges) {
  Rng rng = make_stream(2, "t");
  const Graph live = chain({{0, 1, 1.0}}, 2);
  const Graph dead = chain({{0, 1, 0.0}}, 2);
  for (int i = 0; i < 50; ++i) {
    const RRSet r = sample_rr_set(live, rng);
    if (r.root == 1) {
      auto nodes = r.nodes;
      std::sort(nodes.begin(), nodes.end());
      EXPECT_EQ(nodes, (std::vector<NodeId>{0, 1}));
    }
    const RRSet d = sample_rr_set(dead, rng);
    EXPECT_EQ(d.nodes, std::vector<NodeId>{d.root});
  }
}

TEST(RRSet, CompetitiveStopsAtOpponentSeeds) {
  // w -> u -> v
  const Graph g = chain({{0, 1, 1.0}, {1, 2, 1.0}}, 3);
  Rng rng = make_stream(3, "t");
  const std::vector<NodeId> opp{1};
  for (int i = 0; i < 60; ++i) {
    RRSet r = sample_competitive_rr_set(g, opp, rng);
    std::sort(r.nodes.begin(), r.nodes.end());
    if (r.root == 2) EXPECT_EQ(r.nodes, (std::vector<NodeId>{1, 2}));
    if (r.root == 1) EXPECT_EQ(r.nodes, std::vector<NodeId>{1});
  }
}

TEST(RRSet, CompetitiveWithoutOpponentMatchesPlain) {
  Rng gen = make_stream(4, "t");
  const Graph g = oracle::random_graph(30, 0.1, 0.4, gen);
  Rng r1 = make_stream(9, "same");
  Rng r2 = make_stream(9, "same");
  for (int i = 0; i < 200; ++i) {
    const RRSet x = sample_rr_set(g, r1);
    const RRSet y = sample_competitive_rr_set(g, {}, r2);
    EXPECT_EQ(x.root, y.root);
    EXPECT_EQ(x.nodes, y.nodes);
  }
}

TEST(RRIndex, InvariantsHold) {
  Rng gen = make_stream(5, "t");
  const Graph g = oracle::random_graph(50, 0.08, 0.5, gen);
  const RRIndex idx = build_index(g, 3000, 77);
  EXPECT_EQ(idx.theta(), 3000u);
  std::vector<std::vector<std::uint32_t>> expect(g.node_count());
  for (std::size_t r = 0; r < idx.theta(); ++r) {
    const auto s = idx.set(r);
    EXPECT_TRUE(std::is_sorted(s.begin(), s.end()));
    EXPECT_TRUE(std::binary_search(s.begin(), s.end(), idx.root(r)));
    EXPECT_EQ(std::adjacent_find(s.begin(), s.end()), s.end());
    for (NodeId v : s) expect[v].push_back(static_cast<std::uint32_t>(r));
  }
  for (NodeId v = 0; v < g.node_count(); ++v) {
    const auto cov = idx.coverage(v);
    EXPECT_EQ(std::vector<std::uint32_t>(cov.begin(), cov.end()), expect[v]);
  }
}

TEST(RRIndex, SingleSet) {
  const Graph g = chain({{0, 1, 1.0}}, 2);
  EXPECT_EQ(build_index(g, 1, 1).theta(), 1u);
  EXPECT_THROW(build_index(g, 0, 1), Error);
}

TEST(RRIndex, RootsSplitEvenly) {
  const Graph g = chain({{0, 1, 1.0}}, 2);
  const RRIndex idx = build_index(g, 10000, 21);
  std::size_t zero = 0;
  for (std::size_t r = 0; r < idx.theta(); ++r) zero += idx.root(r) == 0;
  // +-3 sigma of Binomial(10000, 1/2)
  EXPECT_NEAR(static_cast<double>(zero), 5000.0, 150.0);
}

TEST(RRIndex, DeterministicAcrossThreadCounts) {
  Rng gen = make_stream(6, "t");
  const Graph g = oracle::random_graph(80, 0.05, 0.6, gen);
  set_thread_count(1);
  const RRIndex one = build_index(g, 20000, 5);
  set_thread_count(4);
  const RRIndex four = build_index(g, 20000, 5);
  set_thread_count(0);
  const RRIndex dflt = build_index(g, 20000, 5);
  EXPECT_TRUE(one == four);
  EXPECT_TRUE(one == dflt);
  EXPECT_FALSE(one == build_index(g, 20000, 6));
}

TEST(Estimate, SpreadFixture) {
  const RRIndex idx = fixture();
  EXPECT_DOUBLE_EQ(estimate_spread(idx, std::vector<NodeId>{a}), 5.0);
  EXPECT_DOUBLE_EQ(estimate_spread(idx, std::vector<NodeId>{}), 0.0);
  std::vector<NodeId> all(10);
  for (NodeId i = 0; i < 10; ++i) all[i] = i;
  EXPECT_DOUBLE_EQ(estimate_spread(idx, all), 10.0);
}

TEST(Estimate, SpreadIsMonotone) {
  Rng gen = make_stream(7, "t");
  const Graph g = oracle::random_graph(40, 0.1, 0.3, gen);
  const RRIndex idx = build_index(g, 5000, 3);
  std::vector<NodeId> s;
  double last = 0.0;
  for (NodeId v = 0; v < 40; v += 3) {
    s.push_back(v);
    const double now = estimate_spread(idx, s);
    EXPECT_GE(now, last);
    last = now;
  }
}

TEST(Greedy, TieBreaksByLowestIndex) {
  EXPECT_EQ(select_seeds(fixture(), 1), std::vector<NodeId>{a});
  const RRIndex dup = RRIndex::from_sets(4, {{a, {a, b}}, {b, {a, b}}});
  EXPECT_EQ(select_seeds(dup, 2), (std::vector<NodeId>{a, b}));
}

TEST(Greedy, ExhaustionCoversPositiveNodesFirst) {
  const RRIndex idx = fixture();
  const auto all = select_seeds(idx, 10);
  ASSERT_EQ(all.size(), 10u);
  std::vector<NodeId> head(all.begin(), all.begin() + 3);
  std::sort(head.begin(), head.end());
  EXPECT_EQ(head, (std::vector<NodeId>{a, b, c}));
  auto sorted = all;
  std::sort(sorted.begin(), sorted.end());
  EXPECT_EQ(std::adjacent_find(sorted.begin(), sorted.end()), sorted.end());
  EXPECT_THROW(select_seeds(idx, 11), Error);
  EXPECT_THROW(select_seeds(idx, 0), Error);
}

TEST(Values, HandComputedWeights) {
  const RRIndex two = RRIndex::from_sets(10, {{a, {a}}, {b, {a, b}}});
  const auto v1 = estimate_values(two, std::vector<NodeId>{a});
  EXPECT_DOUBLE_EQ(v1.values[0], 10.0);

  const RRIndex shared = RRIndex::from_sets(10, {{a, {a, b}}});
  const auto v2 = estimate_values(shared, std::vector<NodeId>{a, b});
  EXPECT_DOUBLE_EQ(v2.values[0], 5.0);
  EXPECT_DOUBLE_EQ(v2.values[1], 5.0);

  const auto s2 = estimate_values_simple(shared, std::vector<NodeId>{a, b});
  EXPECT_DOUBLE_EQ(s2.values[0], 10.0);
  EXPECT_DOUBLE_EQ(s2.values[1], 10.0);
  EXPECT_DOUBLE_EQ(estimate_values_simple(two, std::vector<NodeId>{a}).values[0], 10.0);
}

TEST(Values, RejectsBadNodeSets) {
  const RRIndex idx = fixture();
  EXPECT_THROW(estimate_values(idx, std::vector<NodeId>{}), Error);
  EXPECT_THROW(estimate_values(idx, std::vector<NodeId>{a, a}), Error);
  EXPECT_THROW(estimate_values(idx, std::vector<NodeId>{42}), Error);
}

TEST(Values, WeightedSumMatchesSpread) {
  Rng gen = make_stream(8, "t");
  for (int trial = 0; trial < 10; ++trial) {
    const Graph g = oracle::random_graph(50, 0.1, 0.5, gen);
    const RRIndex idx = build_index(g, 4000, static_cast<std::uint64_t>(trial));
    const auto s = select_seeds(idx, 8);
    const auto v = estimate_values(idx, s);
    EXPECT_NEAR(v.total(), estimate_spread(idx, s), 1e-9);
  }
}

TEST(Values, WeightedEqualsSimpleWithoutOverlap) {
  const RRIndex idx = RRIndex::from_sets(6, {{0, {0, 3}}, {1, {1}}, {2, {2, 4}}, {0, {0}}});
  const std::vector<NodeId> s{0, 1, 2};
  const auto w = estimate_values(idx, s);
  const auto p = estimate_values_simple(idx, s);
  EXPECT_EQ(w.values, p.values);
}

TEST(Cache, RoundTripAndKeyCheck) {
  Rng gen = make_stream(9, "t");
  const Graph g = oracle::random_graph(30, 0.1, 0.5, gen);
  const RRIndex idx = build_index(g, 2500, 13);
  const auto path = std::filesystem::temp_directory_path() / "cim_rr_cache.bin";
  save_index(idx, path);
  EXPECT_TRUE(load_index(path) == idx);
  EXPECT_TRUE(load_index_if_matches(path, g.fingerprint(), 2500, 13).has_value());
  EXPECT_FALSE(load_index_if_matches(path, g.fingerprint(), 2500, 14).has_value());
  EXPECT_FALSE(load_index_if_matches(path, g.fingerprint(), 2501, 13).has_value());
  EXPECT_FALSE(load_index_if_matches(path, g.fingerprint() ^ 1, 2500, 13).has_value());
  {
    std::ofstream junk(path, std::ios::binary | std::ios::trunc);
    junk << "not a cache";
  }
  EXPECT_THROW(load_index(path), Error);
  std::filesystem::remove(path);
  EXPECT_FALSE(load_index_if_matches(path, g.fingerprint(), 2500, 13).has_value());
}

TEST(RRIndex, FromSetsValidates) {
  EXPECT_THROW(RRIndex::from_sets(3, {{0, {1}}}), Error);
  EXPECT_THROW(RRIndex::from_sets(3, {{0, {0, 0}}}), Error);
}

}  // namespace
}  // namespace cim
