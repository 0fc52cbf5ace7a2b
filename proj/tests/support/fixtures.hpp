#pragma once

#include <array>
#include <string>

#include "beacon/decomposition.hpp"

namespace beacon::testkit {

/// A decomposition plus the tetrahedron playing sigma_i at index i - 1.
struct Fixture {
  TetDecomposition d;
  std::array<TetId, 6> sigma{};
};

/// The unit corner tetrahedron {0,1,2,3}.
TetDecomposition unit_tetrahedron();

/// Leaf-rooted trees (root = tetrahedron 0) matching the local shapes of the
/// first inductive step: "a" .. "e", and "f" (two chains below sigma3, sigma6 the root).
Fixture step1_shape(char which);

/// Six tetrahedra wired sigma6 - sigma3 - sigma2 - sigma1 and sigma3 - sigma4 - sigma5,
/// sigma6 = tetrahedron 0:
///   "vertex": sigma1..sigma5 share vertex 4
///   "vertex_edge": sigma3..sigma6 share vertex 2 only, sigma1,sigma2,sigma3,sigma6 share edge {0,1}
///   "mirrored": sigma1,sigma2,sigma3,sigma6 share vertex 0 only, sigma3..sigma6 share edge {1,2}
///   "two_edges": both quadruples share an edge, the edges meet at vertex 1
Fixture six_chain(const std::string& which);

}  // namespace beacon::testkit
