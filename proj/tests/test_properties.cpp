#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "beacon/generators.hpp"
#include "beacon/io.hpp"
#include "beacon/kernels.hpp"
#include "beacon/placement.hpp"
#include "beacon/routing.hpp"
#include "oracle.hpp"

using namespace beacon;

namespace {

std::vector<TetDecomposition> random_instances(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> prisms(1, 6), buds(0, 8);
  std::vector<TetDecomposition> out;
  for (int i = 0; i < count; ++i) out.push_back(stacked_hallways({rng(), prisms(rng), buds(rng)}));
  return out;
}

}  // namespace

TEST(Property, RandomInstancesAreValid) {
  for (const auto& d : random_instances(101, 30)) EXPECT_TRUE(validate(d).ok()) << d.label;
}

TEST(Property, PlacementWithinBudgetForAnySeed) {
  std::mt19937_64 rng(202);
  for (const auto& d : random_instances(202, 30)) {
    const auto seed = rng();
    const auto p = place_all(d, seed);
    EXPECT_LE(p.beacons.size(), budget(d.size())) << d.label << " seed " << seed;
    EXPECT_TRUE(check_certificate(d, p).empty()) << d.label << " seed " << seed;
  }
}

TEST(Property, StepsPartitionTheTetrahedra) {
  for (const auto& d : random_instances(303, 20)) {
    const auto p = place_all(d);
    std::vector<int> hits(d.size(), 0);
    for (const auto& s : p.steps) {
      for (TetId t : s.removed) ++hits[t];
    }
    for (std::size_t t = 0; t < d.size(); ++t) EXPECT_EQ(hits[t], 1) << d.label << " tet " << t;
  }
}

TEST(Property, KernelsAgree) {
  for (const auto& d : random_instances(404, 15)) {
    const std::vector<char> usable(d.size(), 1);
    EXPECT_EQ(kernels::overlapping_pairs_serial(d, usable), kernels::overlapping_pairs_parallel(d, usable)) << d.label;
    const auto r = make_region(d);
    const auto pts = default_samples(d, 6, 1);
    EXPECT_EQ(kernels::coverage_matrix_serial<3>(r, pts), kernels::coverage_matrix_parallel<3>(r, pts)) << d.label;
  }
}

TEST(Property, JsonRoundTrip) {
  for (const auto& d : random_instances(505, 20)) {
    std::ostringstream out;
    write_decomposition(out, d);
    const auto back = parse_decomposition(out.str());
    EXPECT_TRUE(back.vertices == d.vertices && back.tets == d.tets) << d.label;
  }
}

TEST(Property, AttractionMatchesOracle) {
  std::mt19937_64 rng(606);
  for (const auto& d : random_instances(606, 6)) {
    const auto r = make_region(d);
    for (int i = 0; i < 5; ++i) {
      const auto p = testkit::sample_point<3>(r, rng);
      const auto b = testkit::sample_point<3>(r, rng);
      const auto path = attract<3>(r, p, b);
      const auto ref = testkit::descend<3>(r, p, b);
      EXPECT_EQ(path.terminal, ref.terminal) << d.label;
      EXPECT_LT(distance(path.end, ref.end), 1e-5 * r.diagonal()) << d.label;
    }
  }
}

TEST(Property, SegmentInsideOneCellIsCovered) {
  std::mt19937_64 rng(707);
  std::exponential_distribution<double> e(1.0);
  for (const auto& d : random_instances(707, 10)) {
    const auto r = make_region(d);
    for (const auto& cell : r.cells()) {
      VecD<3> pts[2]{};
      for (auto& x : pts) {
        double w[4], total = 0;
        for (double& wi : w) total += (wi = e(rng));
        for (int j = 0; j < 4; ++j) {
          for (int k = 0; k < 3; ++k) x[k] += w[j] / total * r.vertices()[cell.vertex[j]][k];
        }
      }
      EXPECT_TRUE(covers<3>(r, pts[0], pts[1])) << d.label;
    }
  }
}

TEST(Property, RoutesReplay) {
  std::mt19937_64 rng(808);
  for (const auto& d : random_instances(808, 8)) {
    const auto r = make_region(d);
    const auto bs = beacon_points(d, place_all(d).beacons);
    for (int i = 0; i < 10; ++i) {
      const auto p = testkit::sample_point<3>(r, rng);
      const auto q = testkit::sample_point<3>(r, rng);
      const auto res = route<3>(r, p, q, bs);
      EXPECT_TRUE(res.routable) << d.label;
      if (res.routable) {
        EXPECT_TRUE(replay_chain<3>(r, p, q, bs, res.chain)) << d.label;
      }
    }
  }
}
