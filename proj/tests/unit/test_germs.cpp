#include <gtest/gtest.h>

#include "btlab/building.hpp"
#include "btlab/germs.hpp"
#include "fixtures.hpp"

using namespace btlab;

namespace {

const Ball& ball_f2_r3() {
  static const Ball ball = build_ball(ResidueRing::build(FieldDescriptor::equal_characteristic(2, 1), 3), 3);
  return ball;
}

// tau equals sigma o labelling on the domain for some diagram symmetry sigma.
bool matches_up_to_symmetry(const std::vector<int>& labelling, const std::vector<int>& tau, const std::vector<bool>& domain,
                            const std::vector<std::vector<int>>& symmetries) {
  for (const auto& sigma : symmetries) {
    bool all = true;
    for (std::size_t v = 0; v < tau.size() && all; ++v)
      if (domain[v]) all = labelling[v] >= 0 && sigma[static_cast<std::size_t>(labelling[v])] == tau[v];
    if (all) return true;
  }
  return false;
}

}  // namespace

TEST(Germs, SmallFixtures) {
  EXPECT_EQ(germs_at(cycle_graph(6), 0, polygon_diagram(3)).germs.size(), 2u);
  EXPECT_EQ(germs_at(path_graph(2), 0, atilde_diagram(3)).germs.size(), 0u);
  const auto star = support::star(3);
  EXPECT_EQ(germs_at(star, 1, atilde_diagram(3)).germs.size(), 0u);
}

TEST(Germs, CenterOfBuildingBall) {
  const auto& ball = ball_f2_r3();
  GermLabeler labeler(ball.graph, atilde_diagram(3));
  const auto set = labeler.germs_at(0);
  EXPECT_EQ(set.germs.size(), 6u);
  EXPECT_TRUE(set.single_orbit);
  EXPECT_EQ(set.stabilizer, 1u);
  EXPECT_TRUE(std::is_sorted(set.germs.begin(), set.germs.end()));
  // One of them is the building's own labelling.
  bool found = false;
  for (const auto& germ : set.germs) {
    bool same = true;
    for (std::size_t i = 0; i < germ.vertices.size(); ++i)
      same &= germ.colors[i] == (*ball.graph.tau)[static_cast<std::size_t>(germ.vertices[i])];
    found |= same;
  }
  EXPECT_TRUE(found);
}

TEST(Germs, TransportAgreesWithBuildingLabels) {
  const auto& ball = ball_f2_r3();
  const auto& tau = *ball.graph.tau;
  GermLabeler labeler(ball.graph, atilde_diagram(3));
  Germ own;
  for (const auto& germ : labeler.germs_at(0).germs)
    if (germ.colors[0] == tau[0] && germ.color_of(ball.graph.neighbors(0)[0]) == tau[static_cast<std::size_t>(ball.graph.neighbors(0)[0])])
      own = germ;
  for (int y : ball.graph.neighbors(0)) {
    const auto moved = labeler.transport(own, y);
    for (std::size_t i = 0; i < moved.vertices.size(); ++i)
      EXPECT_EQ(moved.colors[i], tau[static_cast<std::size_t>(moved.vertices[i])]);
  }
}

TEST(Germs, RoundTripAndEquivarianceExhaustive) {
  const auto& ball = ball_f2_r3();
  GermLabeler labeler(ball.graph, atilde_diagram(3));
  const auto& syms = labeler.symmetries();
  std::size_t checked = 0;
  for (std::size_t x = 0; x < ball.graph.size(); ++x) {
    if ((*ball.graph.dist)[x] > 1) continue;
    for (const auto& germ : labeler.germs_at(static_cast<int>(x)).germs)
      for (int y : ball.graph.neighbors(static_cast<int>(x))) {
        if ((*ball.graph.dist)[static_cast<std::size_t>(y)] > 2) continue;
        const auto there = labeler.transport(germ, y);
        ASSERT_EQ(labeler.transport(there, static_cast<int>(x)), germ);
        for (const auto& sigma : syms)
          ASSERT_EQ(labeler.transport(apply_symmetry(germ, sigma), y), apply_symmetry(there, sigma));
        ++checked;
      }
  }
  EXPECT_GT(checked, 1000u);
}

TEST(Germs, TransportErrors) {
  auto g = cycle_graph(6);
  GermLabeler c6(g, polygon_diagram(3));
  const auto germ = c6.germs_at(0).germs.front();
  EXPECT_THROW(c6.transport(germ, 3), InvalidInput);
  const auto moved = c6.transport(germ, 1);
  EXPECT_EQ(moved.color_of(0), germ.color_of(0));
  EXPECT_EQ(moved.color_of(1), germ.color_of(1));

  // Radius-1 ball: germs exist at the origin, but the neighbourhood of a
  // boundary vertex is cut off.
  const auto ball = build_ball(ResidueRing::build(FieldDescriptor::equal_characteristic(2, 1), 1), 3);
  GermLabeler labeler(ball.graph, atilde_diagram(3));
  const auto at_origin = labeler.germs_at(0).germs;
  ASSERT_FALSE(at_origin.empty());
  try {
    labeler.transport(at_origin.front(), ball.graph.neighbors(0).front());
    FAIL() << "expected NoExtension";
  } catch (const TransportError& err) {
    EXPECT_EQ(err.status(), TransportStatus::NoExtension);
  }
}

TEST(Propagate, EvenAndOddCycles) {
  const auto c8 = cycle_graph(8);
  GermLabeler l8(c8, polygon_diagram(4));
  const auto r8 = propagate(l8, l8.germs_at(0).germs.front());
  ASSERT_EQ(r8.status, PropagationStatus::Labelled);
  EXPECT_TRUE(is_proper_coloring(c8, r8.tau));

  const auto c9 = cycle_graph(9);
  GermLabeler l9(c9, polygon_diagram(4));
  const auto seeds = l9.germs_at(0).germs;
  ASSERT_EQ(seeds.size(), 2u);
  for (const auto& seed : seeds) {
    const auto r9 = propagate(l9, seed);
    ASSERT_EQ(r9.status, PropagationStatus::Obstruction);
    EXPECT_EQ(r9.cycle.size(), 9u);
  }
  // No cycle of length <= 3 exists, so the short certificate is vacuous.
  EXPECT_TRUE(short_cycle_certificate(l9, 3).passed());
}

TEST(Propagate, BuildingBallMatchesTypeLabel) {
  const auto& ball = ball_f2_r3();
  const auto domain = interior_scope(ball.graph, 3, 1);
  GermLabeler labeler(ball.graph, atilde_diagram(3));
  // Every seed at three basepoints.
  std::vector<int> basepoints{0};
  for (std::size_t v = 1; v < ball.graph.size() && basepoints.size() < 3; ++v)
    if (domain[v] && (*ball.graph.dist)[v] == static_cast<int>(basepoints.size())) basepoints.push_back(static_cast<int>(v));
  ASSERT_EQ(basepoints.size(), 3u);
  for (int base : basepoints)
    for (const auto& seed : labeler.germs_at(base).germs) {
      const auto result = propagate(labeler, seed, &domain);
      ASSERT_EQ(result.status, PropagationStatus::Labelled) << result.detail;
      EXPECT_TRUE(matches_up_to_symmetry(result.tau, *ball.graph.tau, domain, labeler.symmetries()));
    }
}

TEST(ShortCycles, Certificates) {
  const auto& ball = ball_f2_r3();
  const auto domain = interior_scope(ball.graph, 3, 1);
  GermLabeler labeler(ball.graph, atilde_diagram(3));
  const auto cert = short_cycle_certificate(labeler, 3, &domain);
  EXPECT_TRUE(cert.passed());
  ASSERT_EQ(cert.classes.size(), 2u);
  EXPECT_GT(cert.classes[1].checked, 0u);

  const auto c6 = cycle_graph(6);
  GermLabeler l6(c6, polygon_diagram(3));
  const auto c6cert = short_cycle_certificate(l6, 6);
  EXPECT_TRUE(c6cert.passed());
  EXPECT_EQ(c6cert.classes.back().length, 6);
  EXPECT_GT(c6cert.classes.back().checked, 0u);
}
