#include <gtest/gtest.h>

#include "btlab/building.hpp"
#include "btlab/canon.hpp"
#include "fixtures.hpp"

using namespace btlab;

namespace {

struct Fixture {
  std::string name;
  LabeledGraph graph;
};

std::vector<Fixture> fixtures() {
  std::vector<Fixture> out;
  out.push_back({"C6", cycle_graph(6)});
  out.push_back({"C8", cycle_graph(8)});
  out.push_back({"C9", cycle_graph(9)});
  out.push_back({"P7", path_graph(7)});
  out.push_back({"K33", support::complete_bipartite(3, 3)});
  out.push_back({"K24", support::complete_bipartite(2, 4)});
  out.push_back({"petersen", support::petersen()});
  out.push_back({"fano", support::fano_incidence()});
  out.push_back({"tree3", build_ball(ResidueRing::build(FieldDescriptor::mixed(2, 1, 1), 3), 2).graph});
  out.push_back({"tree4", build_ball(ResidueRing::build(FieldDescriptor::mixed(3, 1, 1), 2), 2).graph});
  out.push_back({"X3r1", build_ball(ResidueRing::build(FieldDescriptor::mixed(2, 1, 1), 1), 3).graph});
  out.push_back({"X3r2", build_ball(ResidueRing::build(FieldDescriptor::mixed(2, 1, 1), 2), 3).graph});
  return out;
}

}  // namespace

TEST(Canon, ShuffleInvariance) {
  for (const auto& f : fixtures()) {
    const auto cert = canonical_form(f.graph);
    EXPECT_EQ(cert.digest.size(), 64u);
    const int shuffles = f.graph.size() > 60 ? 10 : 100;
    for (int s = 0; s < shuffles; ++s) {
      const auto g = support::shuffled(f.graph, 1000 + static_cast<std::uint64_t>(s));
      ASSERT_EQ(canonical_form(g), cert) << f.name << " shuffle " << s;
    }
  }
}

TEST(Canon, LabelingIsAPermutationReproducingTheEncoding) {
  for (const auto& f : fixtures()) {
    const auto cert = canonical_form(f.graph);
    std::vector<int> sorted = cert.labeling;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) ASSERT_EQ(sorted[i], static_cast<int>(i));
    // Relabelling by the canonical labelling is a fixed point.
    const auto canon_graph = relabel(f.graph, cert.labeling);
    EXPECT_EQ(canonical_form(canon_graph), cert) << f.name;
  }
}

TEST(Canon, OrbitsOfSymmetricGraphs) {
  EXPECT_EQ(canonical_form(cycle_graph(6)).orbits.size(), 1u);
  EXPECT_EQ(canonical_form(support::petersen()).orbits.size(), 1u);
  EXPECT_EQ(canonical_form(path_graph(5)).orbits.size(), 3u);
  EXPECT_EQ(canonical_form(support::complete_bipartite(2, 4)).orbits.size(), 2u);
  auto fano = support::fano_incidence();
  EXPECT_EQ(canonical_form(fano).orbits.size(), 1u);
  EXPECT_EQ(canonical_form(fano, {.use_colors = true}).orbits.size(), 2u);
}

TEST(Canon, DistinguishesNonIsomorphicGraphs) {
  const auto all = fixtures();
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = 0; j < all.size(); ++j) {
      const bool same_cert = canonical_form(all[i].graph) == canonical_form(all[j].graph);
      const auto iso = are_isomorphic(all[i].graph, all[j].graph);
      EXPECT_EQ(same_cert, i == j) << all[i].name << " vs " << all[j].name;
      EXPECT_EQ(iso.isomorphic(), same_cert) << all[i].name << " vs " << all[j].name;
    }
  // Both cubic on six vertices.
  LabeledGraph prism(6);
  for (int i = 0; i < 3; ++i) {
    prism.add_edge(i, (i + 1) % 3);
    prism.add_edge(3 + i, 3 + (i + 1) % 3);
    prism.add_edge(i, 3 + i);
  }
  LabeledGraph k33 = support::complete_bipartite(3, 3);
  EXPECT_NE(canonical_form(prism), canonical_form(k33));
  EXPECT_FALSE(are_isomorphic(prism, k33).isomorphic());
}

TEST(Canon, MismatchInvariants) {
  const auto t3 = build_ball(ResidueRing::build(FieldDescriptor::mixed(2, 1, 1), 2), 2).graph;
  auto t3_extended = t3;
  const int extra = t3_extended.add_vertex();
  t3_extended.add_edge(0, extra);
  const auto a = build_ball(ResidueRing::build(FieldDescriptor::mixed(2, 1, 1), 1), 2).graph;
  const auto b = support::star(3);
  EXPECT_TRUE(are_isomorphic(a, b).isomorphic());
  const auto r = are_isomorphic(build_ball(ResidueRing::build(FieldDescriptor::mixed(3, 1, 1), 1), 2).graph,
                                support::complete_bipartite(1, 4));
  EXPECT_TRUE(r.isomorphic());
  EXPECT_EQ(are_isomorphic(t3, t3_extended).invariant, "vertex count");
  EXPECT_EQ(are_isomorphic(cycle_graph(6), path_graph(6)).invariant, "edge count");
  LabeledGraph spider(6);
  spider.add_edge(0, 1);
  spider.add_edge(0, 2);
  spider.add_edge(0, 3);
  spider.add_edge(1, 4);
  spider.add_edge(2, 5);
  EXPECT_EQ(are_isomorphic(spider, path_graph(6)).invariant, "degree sequence");
  // Valency-3 tree ball vs a valency-4 tree cut to the same size.
  const auto tree3 = build_ball(ResidueRing::build(FieldDescriptor::mixed(2, 1, 1), 2), 2).graph;
  LabeledGraph tree4(10);
  for (int i = 1; i <= 4; ++i) tree4.add_edge(0, i);
  for (int i = 5; i <= 9; ++i) tree4.add_edge(1 + (i - 5) % 4, i);
  EXPECT_EQ(are_isomorphic(tree3, tree4).invariant, "degree sequence");
}

TEST(Canon, MappingsVerify) {
  for (const auto& f : fixtures()) {
    std::vector<int> perm;
    const auto g = support::shuffled(f.graph, 7, &perm);
    const auto iso = are_isomorphic(f.graph, g);
    ASSERT_TRUE(iso.isomorphic()) << f.name;
    EXPECT_TRUE(verify_isomorphism(f.graph, g, *iso.mapping));
  }
  const auto c6 = cycle_graph(6);
  std::vector<int> bad{0, 2, 1, 3, 4, 5};
  EXPECT_FALSE(verify_isomorphism(c6, c6, bad));
}

TEST(Canon, ColorsAndDistances) {
  auto c6 = cycle_graph(6);
  c6.tau = std::vector<int>{0, 1, 0, 1, 0, 1};
  auto c6b = cycle_graph(6);
  c6b.tau = std::vector<int>{1, 0, 1, 0, 1, 0};
  EXPECT_EQ(canonical_form(c6, {.use_colors = true}), canonical_form(c6b, {.use_colors = true}));
  c6b.tau = std::vector<int>{0, 0, 1, 1, 0, 1};
  EXPECT_NE(canonical_form(c6, {.use_colors = true}), canonical_form(c6b, {.use_colors = true}));
  EXPECT_EQ(canonical_form(c6), canonical_form(c6b));

  const auto ball = build_ball(ResidueRing::build(FieldDescriptor::mixed(2, 1, 1), 2), 3).graph;
  const auto shuffled = support::shuffled(ball, 3);
  EXPECT_EQ(canonical_form(ball, {.use_distance = true}), canonical_form(shuffled, {.use_distance = true}));
  const auto iso = are_isomorphic(ball, shuffled, {.use_distance = true});
  ASSERT_TRUE(iso.isomorphic());
  EXPECT_TRUE(verify_isomorphism(ball, shuffled, *iso.mapping, {.use_distance = true}));
  EXPECT_THROW(canonical_form(cycle_graph(5), {.use_colors = true}), InvalidInput);
}

TEST(Canon, RejectsDisconnectedAndRespectsBudget) {
  LabeledGraph two_triangles(6);
  for (int i = 0; i < 3; ++i) {
    two_triangles.add_edge(i, (i + 1) % 3);
    two_triangles.add_edge(3 + i, 3 + (i + 1) % 3);
  }
  EXPECT_THROW(canonical_form(two_triangles), InvalidInput);
  EXPECT_THROW(are_isomorphic(cycle_graph(6), two_triangles), InvalidInput);
  Budget tiny;
  tiny.max_search_nodes = 3;
  EXPECT_THROW(canonical_form(support::petersen(), {}, tiny), BudgetExceeded);
}
