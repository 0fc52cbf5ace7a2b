#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "beacon/decomposition.hpp"

namespace beacon {

struct SpiralParams {
  int corners = 1;
  Rational delta{2, 5};
};

/// Throws InputError unless corners >= 1 and 0 < delta < 1.
void check_params(const SpiralParams& p);

/// Vertices s, q1..qc, t, rc..r1, counter-clockwise.
Polygon spiral_polygon(const SpiralParams& p);

/// Vertex layout: 0 = s, 1 = t, then r_k, q_k, z_k at 2 + 3(k-1), 3 + 3(k-1), 4 + 3(k-1).
/// Tetrahedra are listed so the dual graph is the path 0..m-1.
TetDecomposition spiral_polyhedron(const SpiralParams& p);

/// Index helpers for the layout above (k is 1-based).
struct SpiralIndex {
  static constexpr VertexId s = 0;
  static constexpr VertexId t = 1;
  static VertexId r(int k) { return static_cast<VertexId>(2 + 3 * (k - 1)); }
  static VertexId q(int k) { return static_cast<VertexId>(3 + 3 * (k - 1)); }
  static VertexId z(int k) { return static_cast<VertexId>(4 + 3 * (k - 1)); }
};

/// Drops z and merges z_k into r_k. Throws InputError unless `d` has the
/// spiral layout.
Polygon project_to_plane(const TetDecomposition& d);

enum class FigureName { Star, Line, LineSharedEdge, Ring };

FigureName parse_figure_name(std::string_view name);
const char* to_string(FigureName f);

/// Four-tetrahedron fixtures. Ring is the edge fan closed into a 4-cycle.
TetDecomposition figure_configuration(FigureName name);

/// Attaches a tetrahedron on facet {a, b, c} of tetrahedron `host`, with the apex
/// `height` units beyond the facet centroid along its outward normal. The apex is
/// rounded to multiples of 1/4096. Returns the new tetrahedron's index.
TetId add_bud(TetDecomposition& d, TetId host, VertexId a, VertexId b, VertexId c, double height);

struct StackedParams {
  std::uint64_t seed = 1;
  int prisms = 4;
  int buds = 4;
};

/// A bent chain of triangular prisms, each split into three tetrahedra, with
/// random buds glued onto boundary facets. m = 3 * prisms + buds.
TetDecomposition stacked_hallways(const StackedParams& p);

/// Parameters of the i-th corpus instance (i = 0..19).
StackedParams stacked_corpus_params(int i);

}  // namespace beacon
