#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "beacon/decomposition.hpp"

namespace beacon {

/// floor((m + 1) / 3). Throws InputError for m = 0.
std::size_t budget(std::size_t m);

struct PlacementStep {
  std::vector<VertexId> beacons;
  std::vector<TetId> removed;       // ascending
  std::optional<TetId> anchor;      // unset when nothing remains afterwards
  std::string rule;                 // "base", "1a" .. "1e", "2"
};

struct BeaconPlacement {
  std::size_t m = 0;
  std::size_t budget = 0;
  std::vector<PlacementStep> steps;
  std::vector<VertexId> beacons;    // first-placement order, no repeats
};

/// One step that clears all of `g` (at most four tetrahedra, connected).
PlacementStep place_base_case(const TetDecomposition& d, const DualGraph& g);

/// Deepest non-root leaf whose parent has the most children; smallest index on ties.
TetId select_deepest_leaf(const SpanningTree& tree);

/// Conditions (a)..(e) of the first inductive step around `leaf`.
/// Returns nullopt for the two-chain shape handled by place_step2.
std::optional<PlacementStep> place_step1(const TetDecomposition& d, const DualGraph& g,
                                         const SpanningTree& tree, TetId leaf);

struct Dichotomy {
  enum class Kind { SharedVertex, VertexPlusEdge } kind = Kind::SharedVertex;
  VertexId v = 0;                   // common to sigma1..sigma5, or to the vertex-side set
  std::array<VertexId, 2> e{};      // edge of the other set (VertexPlusEdge only)
  bool mirrored = false;            // edge found on {s3,s4,s5,s6} instead of {s1,s2,s3,s6}
};

/// `s[0..5]` are sigma1..sigma6 wired as: s6 - s3, s3 - s2 - s1, s3 - s4 - s5.
/// Throws InvariantViolation when neither case can be certified.
Dichotomy dichotomy_5_over_6(const TetDecomposition& d, const std::array<TetId, 6>& s);

/// Verified search for k >= 2 beacons inside the subtree of `subroot`.
/// Throws InvariantViolation when no admissible placement exists.
PlacementStep place_step2(const TetDecomposition& d, const DualGraph& g, const SpanningTree& tree,
                          TetId subroot);

/// Runs the recursion to completion. `seed` selects the spanning tree of every round.
BeaconPlacement place_all(const TetDecomposition& d, std::uint64_t seed = 0);

/// Replays a placement against `d`; returns the list of broken invariants.
std::vector<std::string> check_certificate(const TetDecomposition& d, const BeaconPlacement& p);

/// Beacons adjacent when one tetrahedron of `d` contains both; true for 0 or 1 beacons.
bool beacons_connected(const TetDecomposition& d, const std::vector<VertexId>& beacons);

}  // namespace beacon
