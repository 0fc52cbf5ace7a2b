#include "fixtures.hpp"

#include <stdexcept>

#include "beacon/generators.hpp"

namespace beacon::testkit {

TetDecomposition unit_tetrahedron() {
  TetDecomposition d;
  d.vertices = {{QSqrt3(0), QSqrt3(0), QSqrt3(0)},
                {QSqrt3(1), QSqrt3(0), QSqrt3(0)},
                {QSqrt3(0), QSqrt3(1), QSqrt3(0)},
                {QSqrt3(0), QSqrt3(0), QSqrt3(1)}};
  d.tets = {Tetrahedron{{0, 1, 2, 3}}};
  d.label = "unit";
  return d;
}

namespace {

// The facet of `host` opposite its vertex in position `skip`.
TetId bud_opposite(TetDecomposition& d, TetId host, int skip, double h) {
  std::array<VertexId, 3> f{};
  int j = 0;
  for (int i = 0; i < 4; ++i) {
    if (i != skip) f[j++] = d.tets[host].v[i];
  }
  return add_bud(d, host, f[0], f[1], f[2], h);
}

}  // namespace

Fixture step1_shape(char which) {
  Fixture fx;
  auto& d = fx.d;
  d = unit_tetrahedron();
  const double h = 0.6;
  switch (which) {
    case 'a': {  // 0 - s2 - {s1, s3, s4}
      const TetId s2 = bud_opposite(d, 0, 0, h);
      const TetId s1 = bud_opposite(d, s2, 0, h);
      const TetId s3 = bud_opposite(d, s2, 1, h);
      const TetId s4 = bud_opposite(d, s2, 2, h);
      fx.sigma = {s1, s2, s3, s4, 0, 0};
      break;
    }
    case 'b': {  // 0 - s4 - s2 - {s1, s3}
      const TetId s4 = bud_opposite(d, 0, 0, h);
      const TetId s2 = bud_opposite(d, s4, 0, h);
      const TetId s1 = bud_opposite(d, s2, 0, h);
      const TetId s3 = bud_opposite(d, s2, 1, h);
      fx.sigma = {s1, s2, s3, s4, 0, 0};
      break;
    }
    case 'c': {  // 0 - s4 - s3 - s2 - s1
      const TetId s4 = bud_opposite(d, 0, 0, h);
      const TetId s3 = bud_opposite(d, s4, 0, h);
      const TetId s2 = bud_opposite(d, s3, 0, h);
      const TetId s1 = bud_opposite(d, s2, 0, h);
      fx.sigma = {s1, s2, s3, s4, 0, 0};
      break;
    }
    case 'd': {  // 0 - s4 - s3 - {s2 - s1, leaf}
      const TetId s4 = bud_opposite(d, 0, 0, h);
      const TetId s3 = bud_opposite(d, s4, 0, h);
      const TetId s2 = bud_opposite(d, s3, 0, h);
      const TetId s1 = bud_opposite(d, s2, 0, h);
      const TetId leaf = bud_opposite(d, s3, 1, h);
      fx.sigma = {s1, s2, s3, s4, leaf, 0};
      break;
    }
    case 'e': {  // 0 - s3 - {s2 - s1, s4 - s5, x - y}
      const TetId s3 = bud_opposite(d, 0, 0, h);
      const TetId s2 = bud_opposite(d, s3, 0, h);
      const TetId s1 = bud_opposite(d, s2, 0, h);
      const TetId s4 = bud_opposite(d, s3, 1, h);
      const TetId s5 = bud_opposite(d, s4, 0, h);
      const TetId x = bud_opposite(d, s3, 2, h);
      bud_opposite(d, x, 0, h);
      fx.sigma = {s1, s2, s3, s4, s5, x};
      break;
    }
    case 'f': {  // s6 = 0 - s3 - {s2 - s1, s4 - s5}
      const TetId s3 = bud_opposite(d, 0, 0, h);
      const TetId s2 = bud_opposite(d, s3, 0, h);
      const TetId s1 = bud_opposite(d, s2, 0, h);
      const TetId s4 = bud_opposite(d, s3, 1, h);
      const TetId s5 = bud_opposite(d, s4, 0, h);
      fx.sigma = {s1, s2, s3, s4, s5, 0};
      break;
    }
    default:
      throw std::invalid_argument("unknown step shape");
  }
  d.label = std::string("fig2") + which;
  return fx;
}

Fixture six_chain(const std::string& which) {
  Fixture fx;
  auto& d = fx.d;
  d = unit_tetrahedron();
  const double h = 0.5;
  // apexes are numbered 4, 5, ... in creation order
  const TetId s3 = add_bud(d, 0, 0, 1, 2, h);   // {0,1,2,4}
  const TetId s2 = add_bud(d, s3, 0, 1, 4, h);  // {0,1,4,5}
  TetId s1 = 0, s5 = 0;
  if (which == "vertex" || which == "mirrored") {
    s1 = add_bud(d, s2, 0, 4, 5, h);            // {0,4,5,6}
  } else {
    s1 = add_bud(d, s2, 0, 1, 5, h);            // {0,1,5,6}
  }
  const TetId s4 = add_bud(d, s3, 1, 2, 4, h);  // {1,2,4,7}
  if (which == "vertex" || which == "vertex_edge") {
    s5 = add_bud(d, s4, 2, 4, 7, h);            // {2,4,7,8}
  } else if (which == "mirrored" || which == "two_edges") {
    s5 = add_bud(d, s4, 1, 2, 7, h);            // {1,2,7,8}
  } else {
    throw std::invalid_argument("unknown six-chain case");
  }
  fx.sigma = {s1, s2, s3, s4, s5, 0};
  d.label = "six-" + which;
  return fx;
}

}  // namespace beacon::testkit
