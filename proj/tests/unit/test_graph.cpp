#include <gtest/gtest.h>

#include "btlab/building.hpp"
#include "btlab/graph.hpp"
#include "fixtures.hpp"

using namespace btlab;

TEST(Graph, Basics) {
  LabeledGraph g(3);
  g.add_edge(0, 2);
  g.add_edge(1, 0);
  EXPECT_EQ(g.edge_count(), 2u);
  EXPECT_TRUE(g.has_edge(2, 0));
  EXPECT_FALSE(g.has_edge(1, 2));
  EXPECT_EQ(g.neighbors(0), (std::vector<int>{1, 2}));
  EXPECT_EQ(g.edges(), (std::vector<std::pair<int, int>>{{0, 1}, {0, 2}}));
  EXPECT_THROW(g.add_edge(0, 0), InvalidInput);
  EXPECT_THROW(g.add_edge(0, 1), InvalidInput);
  EXPECT_THROW(g.add_edge(0, 3), InvalidInput);
  EXPECT_EQ(g.add_vertex(), 3);
  EXPECT_FALSE(is_connected(g));
  EXPECT_EQ(bfs_distances(g, 1), (std::vector<int>{1, 0, 2, -1}));
}

TEST(Graph, RelabelAndInduced) {
  const auto c5 = cycle_graph(5);
  const std::vector<int> perm{4, 3, 2, 1, 0};
  const auto r = relabel(c5, perm);
  for (const auto& [u, v] : c5.edges()) EXPECT_TRUE(r.has_edge(perm[static_cast<std::size_t>(u)], perm[static_cast<std::size_t>(v)]));
  const std::vector<int> keep{0, 1, 2};
  const auto p = induced_subgraph(c5, keep);
  EXPECT_EQ(p.edge_count(), 2u);
  EXPECT_TRUE(is_proper_coloring(cycle_graph(4), std::vector<int>{0, 1, 0, 1}));
  EXPECT_FALSE(is_proper_coloring(cycle_graph(3), std::vector<int>{0, 1, 0}));
}

TEST(GraphIo, JsonRoundTrip) {
  const auto ball = build_ball(ResidueRing::build(FieldDescriptor::mixed(2, 1, 1), 2), 3);
  const auto doc = to_json(ball.graph);
  const auto back = graph_from_json(doc);
  EXPECT_EQ(back.edges(), ball.graph.edges());
  EXPECT_EQ(back.tau, ball.graph.tau);
  EXPECT_EQ(back.dist, ball.graph.dist);
  EXPECT_EQ(back.payload, ball.graph.payload);
  EXPECT_EQ(back.meta, ball.graph.meta);
  EXPECT_EQ(to_json(parse_graph(doc.dump())), doc);
}

TEST(GraphIo, Errors) {
  EXPECT_THROW(parse_graph("{"), InvalidInput);
  EXPECT_THROW(parse_graph(R"({"vertices": []})"), InvalidInput);
  EXPECT_THROW(parse_graph(R"({"vertices": [{"id": 1}], "edges": []})"), InvalidInput);
  EXPECT_THROW(parse_graph(R"({"vertices": [{}, {}], "edges": [[0, 0]]})"), InvalidInput);
  EXPECT_THROW(parse_graph(R"({"vertices": [{"tau": 0}, {}], "edges": []})"), InvalidInput);
  EXPECT_THROW(parse_graph(R"({"vertices": [{}, {}], "edges": [[0, "x"]]})"), InvalidInput);
}

TEST(GraphIo, DotAndCsv) {
  auto g = cycle_graph(4);
  g.tau = std::vector<int>{0, 1, 0, 1};
  const auto dot = to_dot(g);
  EXPECT_NE(dot.find("graph"), std::string::npos);
  EXPECT_NE(dot.find("0 -- 1"), std::string::npos);
  const auto csv = to_csv(g);
  EXPECT_EQ(csv.substr(0, 4), "u,v\n");
  EXPECT_NE(csv.find("2,3\n"), std::string::npos);
}
