#include "beacon/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace beacon {

bool Tetrahedron::has_distinct_indices() const {
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      if (v[i] == v[j]) return false;
    }
  }
  return true;
}

TriFacet TriFacet::of(VertexId a, VertexId b, VertexId c) {
  TriFacet f{{a, b, c}};
  std::sort(f.v.begin(), f.v.end());
  return f;
}

std::array<TriFacet, 4> facets_of(const Tetrahedron& t) {
  return {TriFacet::of(t.v[1], t.v[2], t.v[3]), TriFacet::of(t.v[0], t.v[2], t.v[3]),
          TriFacet::of(t.v[0], t.v[1], t.v[3]), TriFacet::of(t.v[0], t.v[1], t.v[2])};
}

int tet_orientation(const Tetrahedron& t, std::span<const RationalPoint3> vertices) {
  if (!t.has_distinct_indices()) return 0;
  return orient3d(vertices[t.v[0]], vertices[t.v[1]], vertices[t.v[2]], vertices[t.v[3]]);
}

Containment point_in_tetrahedron(const RationalPoint3& p, const Tetrahedron& t,
                                 std::span<const RationalPoint3> vertices) {
  const int s = tet_orientation(t, vertices);
  if (s == 0) throw InputError("point_in_tetrahedron: degenerate tetrahedron");
  bool on_facet = false;
  for (int i = 0; i < 4; ++i) {
    std::array<RationalPoint3, 4> q{vertices[t.v[0]], vertices[t.v[1]], vertices[t.v[2]],
                                    vertices[t.v[3]]};
    q[i] = p;
    const int si = orient3d(q[0], q[1], q[2], q[3]) * s;
    if (si < 0) return Containment::Outside;
    if (si == 0) on_facet = true;
  }
  return on_facet ? Containment::Boundary : Containment::Interior;
}

SharedFeature classify_shared(std::vector<VertexId> common) {
  std::sort(common.begin(), common.end());
  common.erase(std::unique(common.begin(), common.end()), common.end());
  SharedFeature f;
  switch (common.size()) {
    case 0: f.kind = FeatureKind::None; break;
    case 1: f.kind = FeatureKind::Vertex; break;
    case 2: f.kind = FeatureKind::Edge; break;
    default: f.kind = FeatureKind::Facet; break;
  }
  f.vertices = std::move(common);
  return f;
}

SharedFeature shared_feature(const Tetrahedron& a, const Tetrahedron& b) {
  std::vector<VertexId> common;
  for (VertexId x : a.v) {
    if (b.contains(x)) common.push_back(x);
  }
  return classify_shared(std::move(common));
}

namespace {

struct Interval {
  QSqrt3 lo, hi;
};

Interval project(const RationalPoint3& axis, const std::array<const RationalPoint3*, 4>& pts) {
  Interval r{dot(axis, *pts[0]), dot(axis, *pts[0])};
  for (int i = 1; i < 4; ++i) {
    QSqrt3 d = dot(axis, *pts[i]);
    if (d < r.lo) r.lo = d;
    if (d > r.hi) r.hi = d;
  }
  return r;
}

using FVec = std::array<double, 3>;

FVec fsub(const FVec& a, const FVec& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
FVec fcross(const FVec& a, const FVec& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
double fdot(const FVec& a, const FVec& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

// Candidate separating axes: 4 + 4 facet normals, then 36 edge cross products.
struct AxisSet {
  std::vector<RationalPoint3> exact;
  std::vector<FVec> approx;
};

constexpr std::array<std::array<int, 2>, 6> kEdges{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
constexpr std::array<std::array<int, 3>, 4> kFaces{{{1, 2, 3}, {0, 2, 3}, {0, 1, 3}, {0, 1, 2}}};

// Returns +1 if some axis separates (strictly when `strict`), 0 otherwise.
bool separated(const Tetrahedron& a, const Tetrahedron& b, std::span<const RationalPoint3> vertices,
               bool strict) {
  std::array<const RationalPoint3*, 4> pa{}, pb{};
  std::array<FVec, 4> fa{}, fb{};
  double scale = 1.0;
  for (int i = 0; i < 4; ++i) {
    pa[i] = &vertices[a.v[i]];
    pb[i] = &vertices[b.v[i]];
    fa[i] = to_float(*pa[i]);
    fb[i] = to_float(*pb[i]);
    for (int k = 0; k < 3; ++k) scale = std::max({scale, std::abs(fa[i][k]), std::abs(fb[i][k])});
  }
  const double margin = 1e-9 * scale * scale * scale;

  auto check_axis = [&](const RationalPoint3* exact_axis, const FVec& faxis,
                        auto&& make_exact) -> bool {
    double alo = fdot(faxis, fa[0]), ahi = alo, blo = fdot(faxis, fb[0]), bhi = blo;
    for (int i = 1; i < 4; ++i) {
      const double da = fdot(faxis, fa[i]);
      const double db = fdot(faxis, fb[i]);
      alo = std::min(alo, da);
      ahi = std::max(ahi, da);
      blo = std::min(blo, db);
      bhi = std::max(bhi, db);
    }
    if (ahi + margin < blo || bhi + margin < alo) return true;
    // Float result inconclusive; decide exactly unless clearly overlapping.
    if (ahi > blo + margin && bhi > alo + margin) return false;
    RationalPoint3 axis = exact_axis ? *exact_axis : make_exact();
    if (axis.x.is_zero() && axis.y.is_zero() && axis.z.is_zero()) return false;
    const Interval ia = project(axis, pa);
    const Interval ib = project(axis, pb);
    if (strict) return ia.hi < ib.lo || ib.hi < ia.lo;
    return ia.hi <= ib.lo || ib.hi <= ia.lo;
  };

  auto face_axes = [&](const std::array<const RationalPoint3*, 4>& p,
                       const std::array<FVec, 4>& f) {
    for (const auto& face : kFaces) {
      const FVec fn = fcross(fsub(f[face[1]], f[face[0]]), fsub(f[face[2]], f[face[0]]));
      auto mk = [&] { return cross(*p[face[1]] - *p[face[0]], *p[face[2]] - *p[face[0]]); };
      if (check_axis(nullptr, fn, mk)) return true;
    }
    return false;
  };
  if (face_axes(pa, fa) || face_axes(pb, fb)) return true;

  for (const auto& ea : kEdges) {
    const FVec da = fsub(fa[ea[1]], fa[ea[0]]);
    for (const auto& eb : kEdges) {
      const FVec db = fsub(fb[eb[1]], fb[eb[0]]);
      const FVec fn = fcross(da, db);
      auto mk = [&] { return cross(*pa[ea[1]] - *pa[ea[0]], *pb[eb[1]] - *pb[eb[0]]); };
      if (check_axis(nullptr, fn, mk)) return true;
    }
  }
  return false;
}

}  // namespace

bool interiors_overlap(const Tetrahedron& a, const Tetrahedron& b,
                       std::span<const RationalPoint3> vertices) {
  return !separated(a, b, vertices, /*strict=*/false);
}

bool strictly_separated(const Tetrahedron& a, const Tetrahedron& b,
                        std::span<const RationalPoint3> vertices) {
  return separated(a, b, vertices, /*strict=*/true);
}

std::vector<std::array<std::size_t, 3>> triangulate_polygon(std::span<const RationalPoint2> polygon) {
  const std::size_t n = polygon.size();
  if (n < 3) throw InputError("polygon needs at least 3 vertices");
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<std::array<std::size_t, 3>> out;
  out.reserve(n - 2);

  auto inside_closed = [&](const RationalPoint2& p, const RationalPoint2& a, const RationalPoint2& b,
                           const RationalPoint2& c) {
    return orient2d(a, b, p) >= 0 && orient2d(b, c, p) >= 0 && orient2d(c, a, p) >= 0;
  };

  while (idx.size() > 3) {
    bool clipped = false;
    const std::size_t k = idx.size();
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t ip = idx[(i + k - 1) % k], ic = idx[i], in = idx[(i + 1) % k];
      if (orient2d(polygon[ip], polygon[ic], polygon[in]) <= 0) continue;
      bool blocked = false;
      for (std::size_t j : idx) {
        if (j == ip || j == ic || j == in) continue;
        if (polygon[j] == polygon[ip] || polygon[j] == polygon[ic] || polygon[j] == polygon[in]) continue;
        if (inside_closed(polygon[j], polygon[ip], polygon[ic], polygon[in])) {
          blocked = true;
          break;
        }
      }
      if (blocked) continue;
      out.push_back({ip, ic, in});
      idx.erase(idx.begin() + static_cast<std::ptrdiff_t>(i));
      clipped = true;
      break;
    }
    if (!clipped) throw InputError("polygon is not simple or not counter-clockwise");
  }
  if (orient2d(polygon[idx[0]], polygon[idx[1]], polygon[idx[2]]) <= 0) {
    throw InputError("polygon is not simple or not counter-clockwise");
  }
  out.push_back({idx[0], idx[1], idx[2]});
  return out;
}

}  // namespace beacon
