#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <type_traits>
#include <vector>

#include "beacon/decomposition.hpp"

namespace beacon {

inline constexpr std::size_t kNoFeature = std::numeric_limits<std::size_t>::max();

/// One simplex of a region with its facet planes in floating point.
/// Facet i is opposite vertex i; inside means dot(normal[i], x) <= offset[i].
template <int Dim>
struct Cell {
  std::array<std::size_t, Dim + 1> vertex{};
  std::array<VecD<Dim>, Dim + 1> normal{};       // unit, outward
  std::array<double, Dim + 1> offset{};
  std::array<std::size_t, Dim + 1> boundary{};   // boundary facet id or kNoFeature
};

/// A closed region given as a face-to-face union of simplices (triangles in 2D,
/// tetrahedra in 3D), in floating point.
template <int Dim>
class SimplicialRegion {
 public:
  using Point = VecD<Dim>;
  using Facet = std::array<std::size_t, Dim>;

  SimplicialRegion(std::vector<Point> vertices, const std::vector<std::array<std::size_t, Dim + 1>>& cells);

  const std::vector<Point>& vertices() const { return vertices_; }
  const std::vector<Cell<Dim>>& cells() const { return cells_; }
  /// Boundary facets (polygon edges in 2D), sorted; the index is the facet id.
  const std::vector<Facet>& boundary_facets() const { return boundary_; }
  /// Edges of boundary facets in 3D, sorted; the index is the edge id. Empty in 2D.
  const std::vector<std::array<std::size_t, 2>>& boundary_edges() const { return edges_; }
  double diagonal() const { return diagonal_; }

  /// Cells whose closed simplex contains x up to `tol`.
  std::vector<std::size_t> cells_near(const Point& x, double tol) const;
  bool contains(const Point& x, double tol) const { return !cells_near(x, tol).empty(); }
  /// Signed distance from x to the planes of cell c: max over facets, <= 0 inside.
  double excess(std::size_t c, const Point& x) const;
  /// Cells sharing a vertex with cell c (c included), ascending.
  const std::vector<std::size_t>& vertex_neighbourhood(std::size_t c) const { return star_[c]; }

  std::size_t edge_id(std::size_t a, std::size_t b) const;

 private:
  std::vector<Point> vertices_;
  std::vector<Cell<Dim>> cells_;
  std::vector<Facet> boundary_;
  std::vector<std::array<std::size_t, 2>> edges_;
  std::vector<std::vector<std::size_t>> star_;
  double diagonal_ = 0;
};

using Region2 = SimplicialRegion<2>;
using Region3 = SimplicialRegion<3>;

Region3 make_region(const TetDecomposition& d);
/// Triangulates the polygon first.
Region2 make_region(const Polygon& p);

struct TraceConfig {
  std::optional<double> reach_tolerance;   // default 1e-9 * diagonal
  std::optional<std::size_t> max_events;   // default 10 m + 64
  double descent_tolerance = 1e-12;
};

enum class SegmentKind { Free, OnFacet, OnEdge };

struct PathSegment {
  SegmentKind kind = SegmentKind::Free;
  std::size_t feature = kNoFeature;

  friend bool operator==(const PathSegment&, const PathSegment&) = default;
};

enum class Terminal { Reached, Stuck };

template <int Dim>
struct AttractionPath {
  std::vector<VecD<Dim>> waypoints;  // segments.size() + 1 points
  std::vector<PathSegment> segments;
  Terminal terminal = Terminal::Reached;
  VecD<Dim> end{};                   // the beacon, or the dead point
  std::vector<std::size_t> ties;     // waypoint indices where equally steep departures differed
};

/// Raised when a trace exceeds its event budget.
class NonTermination : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <int Dim>
AttractionPath<Dim> attract(const SimplicialRegion<Dim>& region, const std::type_identity_t<VecD<Dim>>& p,
                            const std::type_identity_t<VecD<Dim>>& b, const TraceConfig& cfg = {});

template <int Dim>
bool covers(const SimplicialRegion<Dim>& region, const std::type_identity_t<VecD<Dim>>& b,
            const std::type_identity_t<VecD<Dim>>& p, const TraceConfig& cfg = {}) {
  return attract<Dim>(region, p, b, cfg).terminal == Terminal::Reached;
}

template <std::size_t N>
double distance(const std::array<double, N>& a, const std::array<double, N>& b) {
  double s = 0;
  for (std::size_t k = 0; k < N; ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
  return std::sqrt(s);
}

}  // namespace beacon
