#include <gtest/gtest.h>

#include "btlab/building.hpp"
#include "btlab/geometry.hpp"
#include "fixtures.hpp"

using namespace btlab;

TEST(Diagram, Construction) {
  const auto m = atilde_diagram(3);
  EXPECT_EQ(m.rank(), 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) EXPECT_EQ(m(i, j), i == j ? 1 : 3);
  const auto m4 = atilde_diagram(4);
  EXPECT_EQ(m4(0, 2), 2);
  EXPECT_EQ(m4(0, 3), 3);
  EXPECT_EQ(parse_diagram("atilde:4"), m4);
  EXPECT_EQ(parse_diagram("polygon:5"), polygon_diagram(5));
  EXPECT_THROW(parse_diagram("atilde:2"), InvalidInput);
  EXPECT_THROW(parse_diagram("hexagon"), InvalidInput);
  EXPECT_THROW(CoxeterDiagram::from_matrix(2, {1, 3, 2, 1}), InvalidInput);
  EXPECT_THROW(CoxeterDiagram::from_matrix(2, {2, 3, 3, 1}), InvalidInput);
}

TEST(Diagram, Symmetries) {
  EXPECT_EQ(diagram_symmetries(atilde_diagram(3)).size(), 6u);
  EXPECT_EQ(diagram_symmetries(atilde_diagram(4)).size(), 8u);
  EXPECT_EQ(diagram_symmetries(atilde_diagram(5)).size(), 10u);
  EXPECT_EQ(diagram_symmetries(polygon_diagram(4)).size(), 2u);
}

TEST(Polygon, Recognition) {
  EXPECT_TRUE(is_generalized_mgon(cycle_graph(6), 3).ok);
  EXPECT_TRUE(is_generalized_mgon(cycle_graph(8), 4).ok);
  EXPECT_TRUE(is_generalized_mgon(support::complete_bipartite(3, 3), 2).ok);
  EXPECT_TRUE(is_generalized_mgon(support::fano_incidence(), 3).ok);
  EXPECT_FALSE(is_generalized_mgon(cycle_graph(9), 4).ok);
  EXPECT_FALSE(is_generalized_mgon(cycle_graph(8), 3).ok);
  EXPECT_FALSE(is_generalized_mgon(path_graph(5), 2).ok);
  EXPECT_FALSE(is_generalized_mgon(support::petersen(), 3).ok);
  LabeledGraph two_triangles(6);
  for (int i = 0; i < 3; ++i) {
    two_triangles.add_edge(i, (i + 1) % 3);
    two_triangles.add_edge(3 + i, 3 + (i + 1) % 3);
  }
  EXPECT_EQ(is_generalized_mgon(two_triangles, 3).reason.empty(), false);
}

TEST(Residue, OfFlags) {
  const auto g = support::complete_bipartite(2, 3);
  std::vector<int> map;
  const std::vector<int> flag{0};
  const auto r = residue_of_flag(g, flag, &map);
  EXPECT_EQ(r.size(), 3u);
  EXPECT_EQ(map, (std::vector<int>{2, 3, 4}));
  const std::vector<int> not_clique{0, 1};
  EXPECT_THROW(residue_of_flag(g, not_clique), InvalidInput);
  const std::vector<int> none;
  EXPECT_EQ(residue_of_flag(g, none).size(), g.size());
}

TEST(Geometry, BuildingBallsPassInInterior) {
  for (auto [q, d, r] : std::vector<std::array<int, 3>>{{2, 3, 2}, {2, 3, 3}, {2, 4, 2}, {3, 3, 2}}) {
    const auto ball = build_ball(ResidueRing::build(FieldDescriptor::mixed(q, 1, 1), r), d);
    const auto report = verify_geometry(ball.graph, atilde_diagram(d), interior_scope(ball.graph, r));
    EXPECT_TRUE(report.ok()) << "q=" << q << " d=" << d << " R=" << r;
    EXPECT_GE(report.flags_checked, 2u);
  }
}

TEST(Geometry, BoundaryFailsAndCorruptionIsCaught) {
  const auto ball = build_ball(ResidueRing::build(FieldDescriptor::equal_characteristic(2, 1), 2), 3);
  // At the boundary, residues are truncated.
  const auto full = verify_geometry(ball.graph, atilde_diagram(3), full_scope(ball.graph));
  EXPECT_FALSE(full.ok());
  // Swapping two types breaks properness somewhere.
  auto broken = ball.graph;
  auto tau = *broken.tau;
  tau[1] = tau[0];
  broken.tau = tau;
  const auto report = verify_geometry(broken, atilde_diagram(3), interior_scope(broken, 2));
  ASSERT_FALSE(report.ok());
  EXPECT_EQ(report.violations.front().condition, "coloring");
}

TEST(Geometry, PolygonFixtures) {
  auto c6 = cycle_graph(6);
  c6.tau = std::vector<int>{0, 1, 0, 1, 0, 1};
  EXPECT_TRUE(verify_geometry(c6, polygon_diagram(3), full_scope(c6)).ok());
  EXPECT_FALSE(verify_geometry(c6, polygon_diagram(4), full_scope(c6)).ok());
  auto fano = support::fano_incidence();
  EXPECT_TRUE(verify_geometry(fano, polygon_diagram(3), full_scope(fano)).ok());
  LabeledGraph uncolored = cycle_graph(4);
  EXPECT_THROW(verify_geometry(uncolored, polygon_diagram(2), full_scope(uncolored)), InvalidInput);
}
