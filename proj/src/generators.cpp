#include "beacon/generators.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace beacon {

namespace {

const Rational kHalf(1, 2);

// radius * (cos, sin) of angle k * 120 degrees; coordinates in Q(sqrt3).
RationalPoint2 polar120(const Rational& radius, int k) {
  switch (((k % 3) + 3) % 3) {
    case 0: return {QSqrt3(radius), QSqrt3(0)};
    case 1: return {QSqrt3(-radius * kHalf), QSqrt3(Rational(0), radius * kHalf)};
    default: return {QSqrt3(-radius * kHalf), QSqrt3(Rational(0), -radius * kHalf)};
  }
}

Rational outer_radius(int k, const Rational& delta) { return Rational(k / 3 + 1) + delta; }
Rational inner_radius(int k) { return Rational(k / 3 + 1); }

RationalPoint3 lift(const RationalPoint2& p, long z) { return {p.x, p.y, QSqrt3(z)}; }

}  // namespace

void check_params(const SpiralParams& p) {
  if (p.corners < 1) throw InputError("spiral needs at least one corner");
  if (p.delta <= 0 || p.delta >= 1) throw InputError("spiral delta must lie strictly between 0 and 1");
}

Polygon spiral_polygon(const SpiralParams& p) {
  check_params(p);
  const int c = p.corners;
  Polygon poly;
  poly.label = "spiral2d-c" + std::to_string(c);
  poly.vertices.push_back(polar120(Rational(1), 0));
  for (int k = 1; k <= c; ++k) poly.vertices.push_back(polar120(outer_radius(k, p.delta), k));
  poly.vertices.push_back(polar120(inner_radius(c + 1), c + 1));
  for (int k = c; k >= 1; --k) poly.vertices.push_back(polar120(inner_radius(k), k));
  return poly;
}

TetDecomposition spiral_polyhedron(const SpiralParams& p) {
  check_params(p);
  const int c = p.corners;
  using I = SpiralIndex;
  TetDecomposition d;
  d.label = "spiral3d-c" + std::to_string(c);
  d.vertices.resize(static_cast<std::size_t>(3 * c + 2));
  d.vertices[I::s] = lift(polar120(Rational(1), 0), 0);
  d.vertices[I::t] = lift(polar120(inner_radius(c + 1), c + 1), 0);
  for (int k = 1; k <= c; ++k) {
    d.vertices[I::r(k)] = lift(polar120(inner_radius(k), k), 0);
    d.vertices[I::q(k)] = lift(polar120(outer_radius(k, p.delta), k), 0);
    d.vertices[I::z(k)] = lift(polar120(inner_radius(k), k), 1);
  }
  d.tets.push_back({{I::r(1), I::q(1), I::z(1), I::s}});
  for (int k = 1; k < c; ++k) {
    d.tets.push_back({{I::r(k), I::q(k), I::z(k), I::r(k + 1)}});
    d.tets.push_back({{I::q(k), I::z(k), I::r(k + 1), I::z(k + 1)}});
    d.tets.push_back({{I::r(k + 1), I::q(k + 1), I::z(k + 1), I::q(k)}});
  }
  d.tets.push_back({{I::r(c), I::q(c), I::z(c), I::t}});
  return d;
}

Polygon project_to_plane(const TetDecomposition& d) {
  const std::size_t n = d.vertices.size();
  if (n < 5 || (n - 2) % 3 != 0) throw InputError("not a spiral polyhedron: vertex count");
  const int c = static_cast<int>((n - 2) / 3);
  using I = SpiralIndex;
  // Same combinatorics as the generator, checked tetrahedron by tetrahedron.
  SpiralParams shape{c, Rational(1, 2)};
  const auto ref = spiral_polyhedron(shape);
  if (ref.tets != d.tets) throw InputError("not a spiral polyhedron: tetrahedron layout");
  auto on_floor = [&](VertexId v) { return d.vertices[v].z.is_zero(); };
  if (!on_floor(I::s) || !on_floor(I::t)) throw InputError("not a spiral polyhedron: s or t off the plane");
  for (int k = 1; k <= c; ++k) {
    const auto& r = d.vertices[I::r(k)];
    const auto& z = d.vertices[I::z(k)];
    if (!on_floor(I::r(k)) || !on_floor(I::q(k)) || z.x != r.x || z.y != r.y || z.z != QSqrt3(1)) {
      throw InputError("not a spiral polyhedron: corner " + std::to_string(k));
    }
  }
  auto flat = [&](VertexId v) { return RationalPoint2{d.vertices[v].x, d.vertices[v].y}; };
  Polygon poly;
  poly.label = "spiral2d-c" + std::to_string(c);
  poly.vertices.push_back(flat(I::s));
  for (int k = 1; k <= c; ++k) poly.vertices.push_back(flat(I::q(k)));
  poly.vertices.push_back(flat(I::t));
  for (int k = c; k >= 1; --k) poly.vertices.push_back(flat(I::r(k)));
  return poly;
}

FigureName parse_figure_name(std::string_view name) {
  if (name == "star") return FigureName::Star;
  if (name == "line") return FigureName::Line;
  if (name == "lineSharedEdge") return FigureName::LineSharedEdge;
  if (name == "ring") return FigureName::Ring;
  throw InputError("unknown figure '" + std::string(name) + "'");
}

const char* to_string(FigureName f) {
  switch (f) {
    case FigureName::Star: return "star";
    case FigureName::Line: return "line";
    case FigureName::LineSharedEdge: return "lineSharedEdge";
    case FigureName::Ring: return "ring";
  }
  return "unknown";
}

namespace {

RationalPoint3 ipt(long x, long y, long z) { return {QSqrt3(x), QSqrt3(y), QSqrt3(z)}; }

TetDecomposition unit_tet() {
  TetDecomposition d;
  d.vertices = {ipt(0, 0, 0), ipt(1, 0, 0), ipt(0, 1, 0), ipt(0, 0, 1)};
  d.tets = {{{0, 1, 2, 3}}};
  return d;
}

// Fan of tetrahedra around the edge (0,0,0)-(0,0,1) through the given rim points.
TetDecomposition edge_fan(const std::vector<std::array<long, 2>>& rim, bool closed) {
  TetDecomposition d;
  d.vertices = {ipt(0, 0, 0), ipt(0, 0, 1)};
  for (auto [x, y] : rim) d.vertices.push_back(ipt(x, y, 0));
  const std::size_t k = rim.size();
  const std::size_t count = closed ? k : k - 1;
  for (std::size_t i = 0; i < count; ++i) {
    d.tets.push_back({{0, 1, 2 + i, 2 + (i + 1) % k}});
  }
  return d;
}

}  // namespace

TetDecomposition figure_configuration(FigureName name) {
  TetDecomposition d;
  switch (name) {
    case FigureName::Star:
      d = unit_tet();
      add_bud(d, 0, 0, 1, 2, 1.0);
      add_bud(d, 0, 0, 1, 3, 1.0);
      add_bud(d, 0, 0, 2, 3, 1.0);
      break;
    case FigureName::Line:
      d = unit_tet();
      add_bud(d, 0, 1, 2, 3, 1.0);  // {1,2,3,4}
      add_bud(d, 1, 2, 3, 4, 1.0);  // {2,3,4,5}
      add_bud(d, 2, 3, 4, 5, 1.0);  // {3,4,5,6}
      break;
    case FigureName::LineSharedEdge:
      d = edge_fan({{1, 0}, {1, 1}, {0, 1}, {-1, 1}, {-1, 0}}, false);
      break;
    case FigureName::Ring:
      d = edge_fan({{1, 0}, {0, 1}, {-1, 0}, {0, -1}}, true);
      break;
  }
  d.label = std::string("figure-") + to_string(name);
  return d;
}

TetId add_bud(TetDecomposition& d, TetId host, VertexId a, VertexId b, VertexId c, double height) {
  const Tetrahedron& h = d.tets.at(host);
  if (!h.contains(a) || !h.contains(b) || !h.contains(c)) throw InputError("bud facet not on host");
  VertexId opposite = h.v[0];
  for (VertexId v : h.v) {
    if (v != a && v != b && v != c) opposite = v;
  }
  const FloatPoint3 pa = to_float(d.vertices[a]), pb = to_float(d.vertices[b]),
                    pc = to_float(d.vertices[c]), po = to_float(d.vertices[opposite]);
  FloatPoint3 u{pb[0] - pa[0], pb[1] - pa[1], pb[2] - pa[2]};
  FloatPoint3 w{pc[0] - pa[0], pc[1] - pa[1], pc[2] - pa[2]};
  FloatPoint3 n{u[1] * w[2] - u[2] * w[1], u[2] * w[0] - u[0] * w[2], u[0] * w[1] - u[1] * w[0]};
  const double len = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
  double side = 0;
  for (int k = 0; k < 3; ++k) side += n[k] * (po[k] - pa[k]);
  const double s = (side > 0 ? -1.0 : 1.0) * height / len;
  RationalPoint3 apex;
  QSqrt3* coord[3] = {&apex.x, &apex.y, &apex.z};
  for (int k = 0; k < 3; ++k) {
    const double centroid = (pa[k] + pb[k] + pc[k]) / 3.0;
    *coord[k] = QSqrt3(quantize(centroid + s * n[k]));
  }
  d.vertices.push_back(apex);
  d.tets.push_back({{a, b, c, d.vertices.size() - 1}});
  return d.tets.size() - 1;
}

namespace {

// Accepts a bud only when it meets every other tetrahedron in a shared face at most.
bool bud_fits(const TetDecomposition& d, TetId bud) {
  const Tetrahedron& t = d.tets[bud];
  if (tet_orientation(t, d.vertices) == 0) return false;
  const VertexId apex = t.v[3];
  for (VertexId v = 0; v < apex; ++v) {
    if (d.vertices[v] == d.vertices[apex]) return false;
  }
  for (TetId o = 0; o < bud; ++o) {
    const auto common = shared_feature(d.tets[o], t);
    if (common.kind == FeatureKind::None) {
      if (!strictly_separated(d.tets[o], t, d.vertices)) return false;
    } else if (interiors_overlap(d.tets[o], t, d.vertices)) {
      return false;
    }
  }
  return true;
}

}  // namespace

TetDecomposition stacked_hallways(const StackedParams& p) {
  if (p.prisms < 1 || p.buds < 0) throw InputError("stacked hallways need at least one prism");
  std::mt19937_64 rng(p.seed);
  std::uniform_int_distribution<int> jitter(-400, 400);  // units of 1/4096
  std::uniform_int_distribution<int> turn(-1, 1);

  TetDecomposition d;
  d.label = "stacked-s" + std::to_string(p.seed);
  long oy = 0, oz = 0;  // slice offset in units of 1/4
  int dy = 0, dz = 0;
  for (int i = 0; i <= p.prisms; ++i) {
    auto jittered = [&](long quarters) {
      Rational r(4096 * quarters + jitter(rng), 4 * 4096);
      r.canonicalize();
      return r;
    };
    const Rational x = jittered(4L * i);
    auto coord = [&](long base_quarters, long offset_quarters) { return QSqrt3(jittered(base_quarters + offset_quarters)); };
    d.vertices.push_back({QSqrt3(x), coord(0, oy), coord(0, oz)});  // A_i
    d.vertices.push_back({QSqrt3(x), coord(4, oy), coord(0, oz)});  // B_i
    d.vertices.push_back({QSqrt3(x), coord(0, oy), coord(4, oz)});  // C_i
    if (i % 2 == 0) {
      dy = turn(rng);
      dz = turn(rng);
    }
    oy += dy;
    oz += dz;
  }
  for (int i = 0; i < p.prisms; ++i) {
    const VertexId a0 = 3 * i, b0 = a0 + 1, c0 = a0 + 2, a1 = a0 + 3, b1 = a0 + 4, c1 = a0 + 5;
    d.tets.push_back({{a0, b0, c0, a1}});
    d.tets.push_back({{b0, c0, a1, b1}});
    d.tets.push_back({{c0, a1, b1, c1}});
  }

  std::uniform_real_distribution<double> height(0.35, 0.9);
  int placed = 0, attempts = 0;
  while (placed < p.buds) {
    if (++attempts > 200 * (p.buds + 1)) throw InvariantViolation("stacked hallways: no room for buds");
    const auto boundary = boundary_facets(d);
    const TriFacet f = boundary[std::uniform_int_distribution<std::size_t>(0, boundary.size() - 1)(rng)];
    TetId host = 0;
    for (TetId t = 0; t < d.tets.size(); ++t) {
      if (d.tets[t].contains(f.v[0]) && d.tets[t].contains(f.v[1]) && d.tets[t].contains(f.v[2])) host = t;
    }
    const TetId bud = add_bud(d, host, f.v[0], f.v[1], f.v[2], height(rng));
    if (bud_fits(d, bud)) {
      ++placed;
    } else {
      d.tets.pop_back();
      d.vertices.pop_back();
    }
  }
  return d;
}

StackedParams stacked_corpus_params(int i) {
  StackedParams p;
  p.seed = 1000 + static_cast<std::uint64_t>(i);
  p.prisms = 2 + (i * 7) % 13;  // 2..14
  p.buds = (i * 5) % 9;         // 0..8
  return p;
}

}  // namespace beacon
