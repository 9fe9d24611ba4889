#include <gtest/gtest.h>

#include <algorithm>
#include <cstring>
#include <filesystem>
#include <fstream>

#include "cim/graph.hpp"
#include "oracles.hpp"

namespace cim {
namespace {

std::vector<std::pair<NodeId, NodeId>> edge_pairs(const Graph& g) {
  std::vector<std::pair<NodeId, NodeId>> out;
  for (const auto& e : g.edges()) out.emplace_back(e.source, e.target);
  return out;
}

TEST(Graph, ParsesDirectedList) {
  const Graph g = parse_edge_list("0 1\n1 2", true);
  EXPECT_EQ(g.node_count(), 3u);
  EXPECT_EQ(edge_pairs(g), (std::vector<std::pair<NodeId, NodeId>>{{0, 1}, {1, 2}}));
}

TEST(Graph, UndirectedDoubling) {
  const Graph g = parse_edge_list("# c\n0 1", false);
  EXPECT_EQ(edge_pairs(g), (std::vector<std::pair<NodeId, NodeId>>{{0, 1}, {1, 0}}));
}

TEST(Graph, DropsSelfLoopsAndDuplicates) {
  const Graph g = parse_edge_list("5 5\n5 9\n5 9\n9\t5\n", true);
  EXPECT_EQ(g.node_count(), 2u);
  EXPECT_EQ(g.edge_count(), 2u);
  EXPECT_EQ(g.external_id(0), 5);
  EXPECT_EQ(g.external_id(1), 9);
  EXPECT_EQ(g.find_node(9), std::optional<NodeId>(1));
  EXPECT_FALSE(g.find_node(7).has_value());
}

TEST(Graph, CompactsIdsInAscendingOrder) {
  const Graph g = parse_edge_list("100 7\n7 42\n", true);
  EXPECT_EQ(g.external_id(0), 7);
  EXPECT_EQ(g.external_id(1), 42);
  EXPECT_EQ(g.external_id(2), 100);
  EXPECT_TRUE(g.edge_prob(2, 0).has_value());
  EXPECT_FALSE(g.edge_prob(0, 2).has_value());
}

TEST(Graph, MalformedLineNamesLineNumber) {
  try {
    parse_edge_list("0 1\n# fine\n1 x\n", true);
    FAIL() << "expected a parse error";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
  EXPECT_THROW(parse_edge_list("1 2 3 4\n", true), Error);
}

TEST(Graph, EmptyGraphIsAnError) {
  EXPECT_THROW(parse_edge_list("# nothing\n", true), Error);
  EXPECT_THROW(parse_edge_list("3 3\n", true), Error);
}

TEST(Graph, MissingFileIsAnError) {
  EXPECT_THROW(load_edge_list("/nonexistent/edges.txt", true), Error);
}

TEST(Graph, InDegreeScheme) {
  const Graph g =
      assign_probabilities(parse_edge_list("1 0\n2 0\n3 0\n0 4\n", true), ProbabilitySpec{});
  for (double p : g.in_probs(0)) EXPECT_DOUBLE_EQ(p, 1.0 / 3.0);
  EXPECT_EQ(g.edge_prob(0, 4), std::optional<double>(1.0));
}

TEST(Graph, InDegreeProbabilitiesSumToOne) {
  Rng rng = make_stream(11, "graph-test");
  const Graph g = assign_probabilities(oracle::random_graph(60, 0.1, 0.5, rng),
                                       ProbabilitySpec::parse("indegree"));
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (g.in_degree(v) == 0) continue;
    double sum = 0.0;
    for (double p : g.in_probs(v)) sum += p;
    EXPECT_NEAR(sum, 1.0, 1e-12);
  }
}

TEST(Graph, ConstantScheme) {
  const Graph g = assign_probabilities(parse_edge_list("0 1\n1 2\n", true),
                                       ProbabilitySpec::parse("const:1.0"));
  for (const auto& e : g.edges()) EXPECT_EQ(e.prob, 1.0);
  EXPECT_THROW(ProbabilitySpec::parse("const:1.5"), Error);
  EXPECT_THROW(ProbabilitySpec::parse("const:abc"), Error);
  EXPECT_THROW(ProbabilitySpec::parse("weighted"), Error);
}

TEST(Graph, FileScheme) {
  const Graph g = assign_probabilities(parse_edge_list("0 1 0.25\n1 2 0.5\n", true),
                                       ProbabilitySpec::parse("file"));
  EXPECT_EQ(g.edge_prob(0, 1), std::optional<double>(0.25));
  EXPECT_EQ(g.edge_prob(1, 2), std::optional<double>(0.5));
  EXPECT_THROW(assign_probabilities(parse_edge_list("0 1 0.25\n1 2\n", true),
                                    ProbabilitySpec::parse("file")),
               Error);
}

TEST(Graph, TransposeConsistency) {
  Rng rng = make_stream(3, "graph-test");
  const Graph g = oracle::random_graph(40, 0.15, 0.3, rng);
  for (NodeId u = 0; u < g.node_count(); ++u) {
    for (NodeId v : g.out_neighbors(u)) {
      const auto in = g.in_neighbors(v);
      EXPECT_NE(std::find(in.begin(), in.end(), u), in.end());
    }
    for (NodeId w : g.in_neighbors(u)) {
      const auto out = g.out_neighbors(w);
      EXPECT_NE(std::find(out.begin(), out.end(), u), out.end());
    }
  }
}

TEST(Graph, SaveReloadRoundTrip) {
  Rng rng = make_stream(5, "graph-test");
  const Graph g = assign_probabilities(oracle::random_graph(30, 0.2, 0.5, rng),
                                       ProbabilitySpec::parse("indegree"));
  const auto path = std::filesystem::temp_directory_path() / "cim_graph_roundtrip.txt";
  save_edge_list(g, path);
  const Graph back = assign_probabilities(load_edge_list(path, true),
                                          ProbabilitySpec::parse("file"));
  std::filesystem::remove(path);
  const auto a = g.edges();
  const auto b = back.edges();
  ASSERT_EQ(a.size(), b.size());
  ASSERT_EQ(g.node_count(), back.node_count());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].source, b[i].source);
    EXPECT_EQ(a[i].target, b[i].target);
    EXPECT_EQ(std::memcmp(&a[i].prob, &b[i].prob, sizeof(double)), 0);
  }
  EXPECT_EQ(g.fingerprint(), back.fingerprint());
}

TEST(Graph, DegreeCentrality) {
  const Graph d = parse_edge_list("0 1\n0 2\n", true);
  const auto cd = degree_centrality(d, false);
  EXPECT_DOUBLE_EQ(cd[0], 1.0);
  EXPECT_DOUBLE_EQ(cd[1], 0.5);
  const Graph u = parse_edge_list("0 1\n0 2\n", false);
  const auto cu = degree_centrality(u, true);
  EXPECT_DOUBLE_EQ(cu[0], 1.0);
  EXPECT_DOUBLE_EQ(cu[2], 0.5);
}

}  // namespace
}  // namespace cim
