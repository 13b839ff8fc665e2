#include <gtest/gtest.h>

#include <map>

#include "btlab/building.hpp"
#include "btlab/canon.hpp"
#include "btlab/geometry.hpp"
#include "fixtures.hpp"

using namespace btlab;

namespace {

bool is_tree(const LabeledGraph& g) { return is_connected(g) && g.edge_count() + 1 == g.size(); }

}  // namespace

TEST(Building, TreeBalls) {
  for (int q : {2, 3})
    for (int r = 1; r <= 3; ++r) {
      const auto ball = build_ball(ResidueRing::build(FieldDescriptor::mixed(q, 1, 1), r), 2);
      std::uint64_t qr = 1;
      for (int i = 0; i < r; ++i) qr *= static_cast<std::uint64_t>(q);
      EXPECT_EQ(ball.graph.size(), 1 + (q + 1) * (qr - 1) / (q - 1));
      EXPECT_TRUE(is_tree(ball.graph));
      EXPECT_EQ(ball.graph.degree(0), q + 1);
    }
}

TEST(Building, GaussianBinomialsMatchSubspaceCounts) {
  for (auto [p, d] : std::vector<std::pair<int, int>>{{2, 3}, {3, 3}, {2, 4}, {5, 2}})
    for (int k = 0; k <= d; ++k)
      EXPECT_EQ(gaussian_binomial(d, k, static_cast<std::uint64_t>(p)), support::count_subspaces(p, d, k))
          << "p=" << p << " d=" << d << " k=" << k;
}

TEST(Building, CenterDegree) {
  for (auto [q, d] : std::vector<std::pair<int, int>>{{2, 3}, {3, 3}, {2, 4}}) {
    const auto ball = build_ball(ResidueRing::build(FieldDescriptor::mixed(q, 1, 1), 1), d);
    std::uint64_t oracle = 0;
    for (int k = 1; k < d; ++k) oracle += support::count_subspaces(q, d, k);
    EXPECT_EQ(static_cast<std::uint64_t>(ball.graph.degree(0)), oracle);
    EXPECT_EQ(degree_closed_form(static_cast<std::uint64_t>(q), d).subspaces, oracle);
  }
  EXPECT_EQ(degree_closed_form(2, 3).subspaces, 14u);
  EXPECT_EQ(degree_closed_form(2, 3).product, 21u);
  EXPECT_EQ(degree_closed_form(2, 4).subspaces, 65u);
}

TEST(Building, LabelsAndDistances) {
  const auto ball = build_ball(ResidueRing::build(FieldDescriptor::equal_characteristic(2, 1), 3), 3);
  const auto& g = ball.graph;
  ASSERT_TRUE(g.tau && g.dist);
  EXPECT_TRUE(is_proper_coloring(g, *g.tau));
  EXPECT_EQ(*g.dist, bfs_distances(g, 0));
  for (std::size_t v = 0; v < g.size(); ++v) {
    EXPECT_EQ((*g.tau)[v], type_label(ball.modules[v]));
    EXPECT_EQ((*g.dist)[v], distance_origin(ball.modules[v]));
  }
  std::map<int, int> per_type;
  for (int t : *g.tau) ++per_type[t];
  EXPECT_EQ(per_type.size(), 3u);
  EXPECT_EQ(g.meta.at("d"), 3);
  EXPECT_EQ(g.meta.at("R"), 3);
}

TEST(Building, ResidueAtOriginIsFanoIncidenceGraph) {
  const auto ball = build_ball(ResidueRing::build(FieldDescriptor::equal_characteristic(2, 1), 1), 3);
  const std::vector<int> flag{0};
  const auto residue = residue_of_flag(ball.graph, flag);
  const auto fano = support::fano_incidence();
  EXPECT_EQ(canonical_form(residue), canonical_form(fano));
  EXPECT_TRUE(is_generalized_mgon(residue, 3).ok);
}

TEST(Building, SkewBallsHaveDistanceButNoType) {
  const auto ball = build_ball(ResidueRing::build(FieldDescriptor::mixed(2, 1, 1, 2, 1), 1), 3);
  EXPECT_FALSE(ball.graph.tau.has_value());
  ASSERT_TRUE(ball.graph.dist.has_value());
  // Residue field F_4: 2 (q^2 + q + 1) = 42 neighbours.
  EXPECT_EQ(ball.graph.degree(0), 42);
}

TEST(Building, TruncateBall) {
  const auto ball = build_ball(ResidueRing::build(FieldDescriptor::mixed(2, 1, 1), 3), 2);
  const auto small = truncate_ball(ball.graph, 2);
  EXPECT_EQ(small.size(), 10u);
  const auto direct = build_ball(ResidueRing::build(FieldDescriptor::mixed(2, 1, 1), 2), 2);
  EXPECT_EQ(canonical_form(small), canonical_form(direct.graph));
}

TEST(Building, Budget) {
  Budget tiny;
  tiny.max_vertices = 50;
  EXPECT_THROW(build_ball(ResidueRing::build(FieldDescriptor::mixed(2, 1, 1), 2), 3, tiny), BudgetExceeded);
  EXPECT_THROW(build_ball(ResidueRing::build(FieldDescriptor::mixed(2, 1, 1), 2), 1), InvalidInput);
}
