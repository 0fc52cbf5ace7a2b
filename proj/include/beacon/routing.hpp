#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "beacon/attraction.hpp"
#include "beacon/decomposition.hpp"

namespace beacon {

struct RouteResult {
  bool routable = false;
  std::vector<std::size_t> chain;  // indices into the beacon list, activated in order before q
};

/// Fewest-activation beacon chain moving p to q; q acts as the final beacon.
template <int Dim>
RouteResult route(const SimplicialRegion<Dim>& region, const std::type_identity_t<VecD<Dim>>& p,
                  const std::type_identity_t<VecD<Dim>>& q, const std::vector<VecD<Dim>>& beacons,
                  const TraceConfig& cfg = {});

/// Re-runs every link of `chain` with covers.
template <int Dim>
bool replay_chain(const SimplicialRegion<Dim>& region, const std::type_identity_t<VecD<Dim>>& p,
                  const std::type_identity_t<VecD<Dim>>& q, const std::vector<VecD<Dim>>& beacons,
                  const std::vector<std::size_t>& chain, const TraceConfig& cfg = {});

/// Vertices, then tetrahedron centroids, then `extra` uniform random points.
std::vector<FloatPoint3> default_samples(const TetDecomposition& d, std::size_t extra = 0, std::uint64_t seed = 0);

std::vector<FloatPoint3> beacon_points(const TetDecomposition& d, const std::vector<VertexId>& beacons);

template <int Dim>
struct PairFailure {
  std::size_t from = 0, to = 0;      // sample indices
  AttractionPath<Dim> direct;        // trace of `from` pulled straight toward `to`
};

template <int Dim>
struct VerifyReport {
  std::vector<VecD<Dim>> samples;
  std::size_t beacons = 0;
  std::size_t pairs_checked = 0;     // ordered pairs, so both directions
  std::vector<PairFailure<Dim>> failures;

  bool ok() const { return failures.empty(); }
};

/// Checks route(p, q) for every ordered pair of distinct samples.
template <int Dim>
VerifyReport<Dim> verify_all_pairs(const SimplicialRegion<Dim>& region, const std::vector<VecD<Dim>>& samples,
                                   const std::vector<VecD<Dim>>& beacons, const TraceConfig& cfg = {});

VerifyReport<3> verify_all_pairs(const TetDecomposition& d, const std::vector<VertexId>& beacons,
                                 std::size_t extra_samples = 0, std::uint64_t seed = 0, const TraceConfig& cfg = {});

/// Vertices plus the points with barycentric coordinates in (1/res) Z inside every
/// tetrahedron, without repeats.
std::vector<RationalPoint3> grid_candidates(const TetDecomposition& d, int resolution);

struct LowerBoundReport {
  int corners = 0;
  std::size_t budget = 0;
  int resolution = 0;
  std::size_t candidates = 0;
  std::uint64_t subsets_checked = 0;
  bool direct_route = false;                          // s -> t with no beacons
  std::optional<std::vector<RationalPoint3>> counterexample;  // a routing subset, if one exists
};

/// Searches every `budget`-subset of grid_candidates on the c-corner spiral polyhedron for
/// one routing s to t. Throws InputError when budget >= c or the candidate set exceeds `cap`.
LowerBoundReport falsify_lower_bound(int corners, std::size_t budget, int resolution, std::size_t cap = 2000,
                                     const TraceConfig& cfg = {});

}  // namespace beacon
