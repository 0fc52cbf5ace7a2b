#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <stdexcept>
#include <vector>

#include "beacon/exact.hpp"

namespace beacon {

using VertexId = std::size_t;
using TetId = std::size_t;

/// Raised for malformed or geometrically invalid input.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a guarantee that valid inputs always satisfy is observed broken.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct Tetrahedron {
  std::array<VertexId, 4> v{};

  bool contains(VertexId id) const { return v[0] == id || v[1] == id || v[2] == id || v[3] == id; }
  bool has_distinct_indices() const;
  friend bool operator==(const Tetrahedron&, const Tetrahedron&) = default;
};

/// Triangle given by three vertex indices, stored sorted.
struct TriFacet {
  std::array<VertexId, 3> v{};

  static TriFacet of(VertexId a, VertexId b, VertexId c);
  friend auto operator<=>(const TriFacet&, const TriFacet&) = default;
};

/// The four facets of t; facet i omits vertex t.v[i].
std::array<TriFacet, 4> facets_of(const Tetrahedron& t);

enum class Containment { Interior, Boundary, Outside };

Containment point_in_tetrahedron(const RationalPoint3& p, const Tetrahedron& t,
                                 std::span<const RationalPoint3> vertices);

enum class FeatureKind { None, Vertex, Edge, Facet };

/// Common vertex indices of a set of tetrahedra, classified by count.
/// A single common vertex is a Vertex, two an Edge, three a Facet.
struct SharedFeature {
  FeatureKind kind = FeatureKind::None;
  std::vector<VertexId> vertices;  // ascending

  friend bool operator==(const SharedFeature&, const SharedFeature&) = default;
};

SharedFeature classify_shared(std::vector<VertexId> common);
SharedFeature shared_feature(const Tetrahedron& a, const Tetrahedron& b);

/// Signed orientation of t's vertices; zero means degenerate.
int tet_orientation(const Tetrahedron& t, std::span<const RationalPoint3> vertices);

/// True iff the interiors of the two (non-degenerate) tetrahedra intersect.
/// Exact separating-axis test over facet normals and edge-pair cross products.
bool interiors_overlap(const Tetrahedron& a, const Tetrahedron& b,
                       std::span<const RationalPoint3> vertices);

/// True iff the closed tetrahedra are disjoint (strictly separated).
bool strictly_separated(const Tetrahedron& a, const Tetrahedron& b,
                        std::span<const RationalPoint3> vertices);

/// Ear-clipping triangulation of a simple polygon, counter-clockwise input.
/// Returns index triples into the polygon's vertex list, each ccw.
std::vector<std::array<std::size_t, 3>> triangulate_polygon(std::span<const RationalPoint2> polygon);

}  // namespace beacon

namespace beacon {

/// Simple polygon with exact vertices in counter-clockwise order.
struct Polygon {
  std::vector<RationalPoint2> vertices;
  std::string label;
};

}  // namespace beacon
