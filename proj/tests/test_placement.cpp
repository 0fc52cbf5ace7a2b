#include <gtest/gtest.h>

#include <algorithm>

#include "beacon/generators.hpp"
#include "beacon/placement.hpp"
#include "corpus.hpp"
#include "fixtures.hpp"

using namespace beacon;
using testkit::Fixture;

namespace {

struct Setup {
  DualGraph g;
  SpanningTree tree;
  TetId leaf;
};

Setup setup(const TetDecomposition& d) {
  Setup s{dual_graph(d), {}, 0};
  s.tree = leaf_rooted_spanning_tree(s.g);
  s.leaf = select_deepest_leaf(s.tree);
  return s;
}

bool in_all(const TetDecomposition& d, VertexId v, std::initializer_list<TetId> tets) {
  return std::all_of(tets.begin(), tets.end(), [&](TetId t) { return d.tets[t].contains(v); });
}

std::vector<TetId> sorted(std::vector<TetId> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST(Budget, Formula) {
  EXPECT_EQ(budget(1), 0u);
  EXPECT_EQ(budget(4), 1u);
  EXPECT_EQ(budget(5), 2u);
  EXPECT_EQ(budget(14), 5u);
  EXPECT_THROW(budget(0), InputError);
}

TEST(BaseCase, Examples) {
  const auto one = testkit::unit_tetrahedron();
  const auto s0 = place_base_case(one, dual_graph(one));
  EXPECT_TRUE(s0.beacons.empty());
  EXPECT_EQ(s0.removed, (std::vector<TetId>{0}));

  const auto sp = spiral_polyhedron({1});
  const auto s1 = place_base_case(sp, dual_graph(sp));
  ASSERT_EQ(s1.beacons.size(), 1u);
  EXPECT_EQ(s1.beacons[0], SpiralIndex::r(1));   // smallest of {r1, q1, z1}
  EXPECT_EQ(s1.removed, (std::vector<TetId>{0, 1}));

  const auto star = figure_configuration(FigureName::Star);
  const auto s4 = place_base_case(star, dual_graph(star));
  ASSERT_EQ(s4.beacons.size(), 1u);
  EXPECT_EQ(s4.beacons[0], 0u);   // the only vertex of all four
  EXPECT_EQ(s4.removed.size(), 4u);
}

TEST(DeepestLeaf, Examples) {
  auto tree_of = [](std::vector<std::pair<TetId, TetId>> edges, std::size_t n) {
    std::vector<TetId> nodes(n);
    for (std::size_t i = 0; i < n; ++i) nodes[i] = i;
    DualGraph g(n, nodes);
    for (auto [a, b] : edges) g.add_edge(a, b);
    return leaf_rooted_spanning_tree(g);
  };
  EXPECT_EQ(select_deepest_leaf(tree_of({{0, 1}, {1, 2}}, 3)), 2u);
  // 0 - 5 - 2 - {3, 4}: deepest level holds 3 and 4
  EXPECT_EQ(select_deepest_leaf(tree_of({{0, 5}, {5, 2}, {2, 3}, {2, 4}, {5, 1}}, 6)), 3u);
  // depth-3 leaves 6 (parent 2, one child) and 7, 8, 9 (parent 3, three children)
  const auto t = tree_of({{0, 1}, {1, 2}, {1, 3}, {2, 6}, {3, 7}, {3, 8}, {3, 9}, {1, 4}, {4, 5}}, 10);
  EXPECT_EQ(select_deepest_leaf(t), 7u);
}

TEST(Step1, ConditionA) {
  const Fixture fx = testkit::step1_shape('a');
  const auto [s1, s2, s3, s4, s5, s6] = fx.sigma;
  const auto st = setup(fx.d);
  ASSERT_EQ(st.leaf, s1);
  const auto step = place_step1(fx.d, st.g, st.tree, st.leaf);
  ASSERT_TRUE(step);
  EXPECT_EQ(step->rule, "1a");
  EXPECT_EQ(step->removed, sorted({s1, s3, s4}));
  ASSERT_EQ(step->beacons.size(), 1u);
  EXPECT_TRUE(in_all(fx.d, step->beacons[0], {s1, s2, s3, s4}));
  EXPECT_EQ(step->anchor, s2);
}

TEST(Step1, ConditionB) {
  const Fixture fx = testkit::step1_shape('b');
  const auto [s1, s2, s3, s4, s5, s6] = fx.sigma;
  const auto st = setup(fx.d);
  const auto step = place_step1(fx.d, st.g, st.tree, st.leaf);
  ASSERT_TRUE(step);
  EXPECT_EQ(step->rule, "1b");
  EXPECT_EQ(step->removed, sorted({s1, s2, s3}));
  EXPECT_EQ(step->anchor, s4);
  EXPECT_TRUE(in_all(fx.d, step->beacons.at(0), {s1, s2, s3, s4}));
}

TEST(Step1, ConditionC) {
  const Fixture fx = testkit::step1_shape('c');
  const auto [s1, s2, s3, s4, s5, s6] = fx.sigma;
  const auto st = setup(fx.d);
  const auto step = place_step1(fx.d, st.g, st.tree, st.leaf);
  ASSERT_TRUE(step);
  EXPECT_EQ(step->rule, "1c");
  EXPECT_EQ(step->removed, sorted({s1, s2, s3}));
  EXPECT_EQ(step->anchor, s4);
  EXPECT_TRUE(in_all(fx.d, step->beacons.at(0), {s1, s2, s3, s4}));
}

TEST(Step1, ConditionD) {
  const Fixture fx = testkit::step1_shape('d');
  const auto [s1, s2, s3, s4, leaf, s6] = fx.sigma;
  const auto st = setup(fx.d);
  const auto step = place_step1(fx.d, st.g, st.tree, st.leaf);
  ASSERT_TRUE(step);
  EXPECT_EQ(step->rule, "1d");
  EXPECT_EQ(step->removed, sorted({s1, s2, leaf}));
  EXPECT_EQ(step->anchor, s3);
  EXPECT_TRUE(in_all(fx.d, step->beacons.at(0), {s1, s2, s3, leaf}));
}

TEST(Step1, ConditionE) {
  const Fixture fx = testkit::step1_shape('e');
  const auto [s1, s2, s3, s4, s5, x] = fx.sigma;
  const auto st = setup(fx.d);
  const auto step = place_step1(fx.d, st.g, st.tree, st.leaf);
  ASSERT_TRUE(step);
  EXPECT_EQ(step->rule, "1e");
  EXPECT_EQ(step->removed, sorted({s1, s2, s4, s5}));
  EXPECT_EQ(step->anchor, s3);
  EXPECT_TRUE(in_all(fx.d, step->beacons.at(0), {s1, s2, s3, s4, s5}));
}

TEST(Step1, TwoChainsIsNotApplicable) {
  const Fixture fx = testkit::step1_shape('f');
  const auto st = setup(fx.d);
  EXPECT_EQ(st.leaf, fx.sigma[0]);
  EXPECT_FALSE(place_step1(fx.d, st.g, st.tree, st.leaf));
}

TEST(Dichotomy, Cases) {
  using K = Dichotomy::Kind;
  const auto v = testkit::six_chain("vertex");
  const auto a = dichotomy_5_over_6(v.d, v.sigma);
  EXPECT_EQ(a.kind, K::SharedVertex);
  EXPECT_EQ(a.v, 4u);

  const auto ve = testkit::six_chain("vertex_edge");
  const auto b = dichotomy_5_over_6(ve.d, ve.sigma);
  EXPECT_EQ(b.kind, K::VertexPlusEdge);
  EXPECT_EQ(b.v, 2u);
  EXPECT_EQ(b.e, (std::array<VertexId, 2>{0, 1}));
  EXPECT_FALSE(b.mirrored);

  const auto mi = testkit::six_chain("mirrored");
  const auto c = dichotomy_5_over_6(mi.d, mi.sigma);
  EXPECT_EQ(c.kind, K::VertexPlusEdge);
  EXPECT_EQ(c.v, 0u);
  EXPECT_EQ(c.e, (std::array<VertexId, 2>{1, 2}));
  EXPECT_TRUE(c.mirrored);

  const auto te = testkit::six_chain("two_edges");
  const auto e = dichotomy_5_over_6(te.d, te.sigma);
  EXPECT_EQ(e.kind, K::SharedVertex);
  EXPECT_EQ(e.v, 1u);
}

TEST(Dichotomy, VertexPlusEdgeIsDisjoint) {
  for (const char* which : {"vertex_edge", "mirrored"}) {
    const auto fx = testkit::six_chain(which);
    const auto r = dichotomy_5_over_6(fx.d, fx.sigma);
    EXPECT_NE(r.v, r.e[0]);
    EXPECT_NE(r.v, r.e[1]);
  }
}

TEST(Step2, SixTetrahedraClearedWithTwoBeacons) {
  for (const char* which : {"vertex", "vertex_edge", "mirrored", "two_edges"}) {
    const auto fx = testkit::six_chain(which);
    const auto st = setup(fx.d);
    ASSERT_FALSE(place_step1(fx.d, st.g, st.tree, st.leaf)) << which;
    const auto step = place_step2(fx.d, st.g, st.tree, st.tree.root);
    EXPECT_EQ(step.rule, "2");
    EXPECT_EQ(step.beacons.size(), 2u) << which;
    EXPECT_EQ(step.removed.size(), 6u) << which;
    EXPECT_FALSE(step.anchor);
    EXPECT_TRUE(beacons_connected(fx.d, step.beacons)) << which;
    for (TetId t : step.removed) {
      EXPECT_TRUE(std::any_of(step.beacons.begin(), step.beacons.end(),
                              [&](VertexId b) { return fx.d.tets[t].contains(b); }));
    }
  }
}

TEST(Step2, SharedVertexCaseUsesIt) {
  const auto fx = testkit::six_chain("vertex");
  const auto p = place_all(fx.d);
  ASSERT_EQ(p.beacons.size(), 2u);
  EXPECT_TRUE(std::find(p.beacons.begin(), p.beacons.end(), 4u) != p.beacons.end() ||
              fx.d.tets[fx.sigma[5]].contains(p.beacons[0]));
}

TEST(PlaceAll, Examples) {
  EXPECT_LE(place_all(spiral_polyhedron({2})).beacons.size(), 2u);
  EXPECT_TRUE(place_all(testkit::unit_tetrahedron()).beacons.empty());
  const auto five = place_all(spiral_polyhedron({5}));
  EXPECT_LE(five.beacons.size(), 5u);
  EXPECT_EQ(five.budget, 5u);
  EXPECT_EQ(five.m, 14u);
}

TEST(PlaceAll, Deterministic) {
  const auto d = stacked_hallways(stacked_corpus_params(7));
  const auto a = place_all(d), b = place_all(d);
  EXPECT_EQ(a.beacons, b.beacons);
  ASSERT_EQ(a.steps.size(), b.steps.size());
  for (std::size_t i = 0; i < a.steps.size(); ++i) EXPECT_EQ(a.steps[i].removed, b.steps[i].removed);
}

TEST(PlaceAll, CorpusCertificates) {
  for (const auto& d : testkit::corpus()) {
    for (std::uint64_t seed : {0, 1, 2, 3, 7, 11}) {
      const auto p = place_all(d, seed);
      EXPECT_LE(p.beacons.size(), budget(d.size())) << d.label << " seed " << seed;
      EXPECT_TRUE(check_certificate(d, p).empty()) << d.label << " seed " << seed;
    }
  }
}

TEST(Certificate, DetectsTampering) {
  const auto d = spiral_polyhedron({4});
  auto p = place_all(d);
  ASSERT_TRUE(check_certificate(d, p).empty());

  auto fewer = p;
  fewer.steps[0].removed.pop_back();
  EXPECT_FALSE(check_certificate(d, fewer).empty());

  auto wrong = p;
  wrong.steps[0].beacons = {SpiralIndex::t};
  EXPECT_FALSE(check_certificate(d, wrong).empty());

  auto dropped = p;
  dropped.steps.pop_back();
  EXPECT_FALSE(check_certificate(d, dropped).empty());

  auto anchorless = p;
  anchorless.steps[0].anchor.reset();
  EXPECT_FALSE(check_certificate(d, anchorless).empty());
}

TEST(BeaconsConnected, CoContainment) {
  const auto d = spiral_polyhedron({3});
  EXPECT_TRUE(beacons_connected(d, {}));
  EXPECT_TRUE(beacons_connected(d, {SpiralIndex::s}));
  EXPECT_TRUE(beacons_connected(d, {SpiralIndex::s, SpiralIndex::r(1)}));
  EXPECT_FALSE(beacons_connected(d, {SpiralIndex::s, SpiralIndex::t}));
}
