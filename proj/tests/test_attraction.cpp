#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "beacon/attraction.hpp"
#include "beacon/generators.hpp"
#include "corpus.hpp"
#include "fixtures.hpp"
#include "oracle.hpp"

using namespace beacon;

namespace {

struct Spiral2 {
  Polygon poly;
  Region2 region;
  VecD<2> s, t;
};

Spiral2 spiral2(int c) {
  auto poly = spiral_polygon({c});
  auto region = make_region(poly);
  const auto s = to_float(poly.vertices[0]);
  const auto t = to_float(poly.vertices[static_cast<std::size_t>(c) + 1]);
  return {std::move(poly), std::move(region), s, t};
}

VecD<3> centroid(const Region3& r, std::size_t c) {
  VecD<3> x{};
  for (auto v : r.cells()[c].vertex) {
    for (int k = 0; k < 3; ++k) x[k] += r.vertices()[v][k] / 4;
  }
  return x;
}

template <int Dim>
void expect_agrees_with_oracle(const SimplicialRegion<Dim>& region, const VecD<Dim>& p, const VecD<Dim>& b) {
  const auto path = attract<Dim>(region, p, b);
  const auto ref = testkit::descend<Dim>(region, p, b);
  EXPECT_EQ(path.terminal, ref.terminal);
  EXPECT_LT(distance(path.end, ref.end), 1e-5 * region.diagonal());
}

}  // namespace

TEST(Attract, ConvexCellGoesStraight) {
  const auto r = make_region(testkit::unit_tetrahedron());
  const auto path = attract<3>(r, {0.1, 0.1, 0.1}, {0.6, 0.2, 0.1});
  EXPECT_EQ(path.terminal, Terminal::Reached);
  ASSERT_EQ(path.segments.size(), 1u);
  EXPECT_EQ(path.segments[0].kind, SegmentKind::Free);
  EXPECT_EQ(path.end, (VecD<3>{0.6, 0.2, 0.1}));
}

TEST(Attract, BeaconAtStart) {
  const auto sp = spiral2(2);
  const auto path = attract<2>(sp.region, sp.s, sp.s);
  EXPECT_EQ(path.terminal, Terminal::Reached);
  EXPECT_TRUE(path.segments.empty());
  EXPECT_EQ(path.waypoints.size(), 1u);
}

TEST(Attract, SpiralOneCorner) {
  const auto sp = spiral2(1);
  const auto path = attract<2>(sp.region, sp.s, sp.t);
  EXPECT_EQ(path.terminal, Terminal::Stuck);
  EXPECT_NEAR(path.end[0], 0.25, 1e-9);
  EXPECT_NEAR(path.end[1], std::sqrt(3.0) / 4, 1e-9);
  expect_agrees_with_oracle<2>(sp.region, sp.s, sp.t);
}

TEST(Attract, SpiralTwoCornersStuckAtStart) {
  const auto sp = spiral2(2);
  const auto path = attract<2>(sp.region, sp.s, sp.t);
  EXPECT_EQ(path.terminal, Terminal::Stuck);
  EXPECT_TRUE(path.segments.empty());
  EXPECT_LT(distance(path.end, sp.s), 1e-12);
  EXPECT_FALSE(covers<2>(sp.region, sp.t, sp.s));
  expect_agrees_with_oracle<2>(sp.region, sp.s, sp.t);
}

TEST(Attract, SpiralThreeCornersSticksAtQ1) {
  const auto sp = spiral2(3);
  const auto path = attract<2>(sp.region, sp.s, sp.t);
  EXPECT_EQ(path.terminal, Terminal::Stuck);
  EXPECT_NEAR(path.end[0], -0.7, 1e-9);
  EXPECT_NEAR(path.end[1], 0.7 * std::sqrt(3.0), 1e-9);
  expect_agrees_with_oracle<2>(sp.region, sp.s, sp.t);
}

TEST(Attract, SpiralPolyhedronMatchesFloorTrace) {
  for (int c = 1; c <= 3; ++c) {
    const auto sp = spiral2(c);
    const auto d = spiral_polyhedron({c});
    const auto r3 = make_region(d);
    const auto s = to_float(d.vertices[SpiralIndex::s]);
    const auto t = to_float(d.vertices[SpiralIndex::t]);
    const auto p3 = attract<3>(r3, s, t);
    const auto p2 = attract<2>(sp.region, sp.s, sp.t);
    EXPECT_EQ(p3.terminal, p2.terminal) << c;
    EXPECT_NEAR(p3.end[0], p2.end[0], 1e-9) << c;
    EXPECT_NEAR(p3.end[1], p2.end[1], 1e-9) << c;
    EXPECT_NEAR(p3.end[2], 0, 1e-9) << c;
  }
}

TEST(Covers, SharedVertexCoversStar) {
  const auto d = figure_configuration(FigureName::Star);
  const auto r = make_region(d);
  const auto b = to_float(d.vertices[0]);
  for (std::size_t c = 0; c < r.cells().size(); ++c) EXPECT_TRUE(covers<3>(r, b, centroid(r, c))) << c;
}

TEST(Covers, AgreesWithOracleOnSamples) {
  std::mt19937_64 rng(5);
  for (int c = 1; c <= 3; ++c) {
    const auto r = make_region(spiral_polyhedron({c}));
    for (int i = 0; i < 15; ++i) {
      const auto p = testkit::sample_point<3>(r, rng);
      const auto b = testkit::sample_point<3>(r, rng);
      expect_agrees_with_oracle<3>(r, p, b);
    }
  }
}

TEST(Attract, DistanceNeverIncreases) {
  std::mt19937_64 rng(9);
  for (const auto& d : testkit::corpus()) {
    const auto r = make_region(d);
    for (int i = 0; i < 10; ++i) {
      const auto p = testkit::sample_point<3>(r, rng);
      const auto b = testkit::sample_point<3>(r, rng);
      const auto path = attract<3>(r, p, b);
      ASSERT_EQ(path.waypoints.size(), path.segments.size() + 1);
      for (std::size_t k = 1; k < path.waypoints.size(); ++k) {
        EXPECT_LE(distance(path.waypoints[k], b), distance(path.waypoints[k - 1], b) + 1e-12 * r.diagonal())
            << d.label;
      }
      for (std::size_t k = 1; k < path.segments.size(); ++k) {
        EXPECT_FALSE(path.segments[k] == path.segments[k - 1]) << d.label;
      }
      if (path.terminal == Terminal::Stuck) {
        EXPECT_EQ(path.end, path.waypoints.back());
      }
    }
  }
}

TEST(Attract, SegmentsOnWallsAreTagged) {
  const auto sp = spiral2(3);
  const auto path = attract<2>(sp.region, sp.s, sp.t);
  ASSERT_FALSE(path.segments.empty());
  EXPECT_EQ(path.segments.back().kind, SegmentKind::OnFacet);
  EXPECT_LT(path.segments.back().feature, sp.region.boundary_facets().size());
}

TEST(Attract, RejectsOutsidePoints) {
  const auto r = make_region(testkit::unit_tetrahedron());
  EXPECT_THROW(attract<3>(r, {2, 2, 2}, {0.1, 0.1, 0.1}), InputError);
  EXPECT_THROW(attract<3>(r, {0.1, 0.1, 0.1}, {-1, 0, 0}), InputError);
}
