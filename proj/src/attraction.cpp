#include "beacon/attraction.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace beacon {

namespace {

template <int Dim>
double dotv(const VecD<Dim>& a, const VecD<Dim>& b) {
  double s = 0;
  for (int k = 0; k < Dim; ++k) s += a[k] * b[k];
  return s;
}

template <int Dim>
VecD<Dim> sub(const VecD<Dim>& a, const VecD<Dim>& b) {
  VecD<Dim> r;
  for (int k = 0; k < Dim; ++k) r[k] = a[k] - b[k];
  return r;
}

template <int Dim>
VecD<Dim> axpy(const VecD<Dim>& x, double s, const VecD<Dim>& u) {
  VecD<Dim> r;
  for (int k = 0; k < Dim; ++k) r[k] = x[k] + s * u[k];
  return r;
}

template <int Dim>
double norm(const VecD<Dim>& a) {
  return std::sqrt(dotv<Dim>(a, a));
}

// Unnormalised normal of the facet through `pts`, any orientation.
VecD<2> facet_normal(const std::array<VecD<2>, 2>& pts) {
  const auto e = sub<2>(pts[1], pts[0]);
  return {e[1], -e[0]};
}

VecD<3> facet_normal(const std::array<VecD<3>, 3>& pts) {
  const auto u = sub<3>(pts[1], pts[0]);
  const auto w = sub<3>(pts[2], pts[0]);
  return {u[1] * w[2] - u[2] * w[1], u[2] * w[0] - u[0] * w[2], u[0] * w[1] - u[1] * w[0]};
}

// Solves the n x n system in place; false when (nearly) singular.
template <int N>
bool solve(std::array<std::array<double, N>, N> a, std::array<double, N> b, int n, std::array<double, N>& x) {
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int r = c + 1; r < n; ++r) {
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    }
    if (std::abs(a[piv][c]) < 1e-12) return false;
    std::swap(a[c], a[piv]);
    std::swap(b[c], b[piv]);
    for (int r = c + 1; r < n; ++r) {
      const double f = a[r][c] / a[c][c];
      for (int k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  for (int r = n - 1; r >= 0; --r) {
    double s = b[r];
    for (int k = r + 1; k < n; ++k) s -= a[r][k] * x[k];
    x[r] = s / a[r][r];
  }
  return true;
}

// Projection of g onto the cone {d : n.d <= 0 for every active normal n}.
template <int Dim>
VecD<Dim> project_to_cone(const VecD<Dim>& g, const std::vector<VecD<Dim>>& active) {
  const double gl = norm<Dim>(g);
  const double eps = 1e-12 * std::max(gl, 1e-300);
  const std::size_t a = active.size();
  VecD<Dim> best{};
  double best_len = -1;
  for (unsigned mask = 0; mask < (1u << a); ++mask) {
    std::array<int, Dim + 1> pick{};
    int n = 0;
    for (std::size_t i = 0; i < a; ++i) {
      if (mask & (1u << i)) {
        if (n == Dim) {
          n = Dim + 1;
          break;
        }
        pick[n++] = static_cast<int>(i);
      }
    }
    if (n > Dim) continue;
    VecD<Dim> d = g;
    if (n > 0) {
      std::array<std::array<double, Dim>, Dim> gram{};
      std::array<double, Dim> rhs{}, lam{};
      for (int i = 0; i < n; ++i) {
        rhs[i] = dotv<Dim>(active[pick[i]], g);
        for (int j = 0; j < n; ++j) gram[i][j] = dotv<Dim>(active[pick[i]], active[pick[j]]);
      }
      if (!solve<Dim>(gram, rhs, n, lam)) continue;
      bool ok = true;
      for (int i = 0; i < n; ++i) ok = ok && lam[i] >= -eps;
      if (!ok) continue;
      for (int i = 0; i < n; ++i) d = axpy<Dim>(d, -lam[i], active[pick[i]]);
    }
    bool feasible = true;
    for (const auto& nrm : active) feasible = feasible && dotv<Dim>(nrm, d) <= 1e-10 * std::max(gl, 1e-300);
    if (!feasible) continue;
    const double len = norm<Dim>(d);
    if (len > best_len) {
      best_len = len;
      best = d;
    }
  }
  if (best_len < 0) return VecD<Dim>{};
  return best;
}

}  // namespace

template <int Dim>
SimplicialRegion<Dim>::SimplicialRegion(std::vector<Point> vertices,
                                        const std::vector<std::array<std::size_t, Dim + 1>>& cells)
    : vertices_(std::move(vertices)) {
  if (cells.empty()) throw InputError("region without cells");
  std::map<Facet, std::vector<std::size_t>> incidence;
  auto facet_of = [&](const std::array<std::size_t, Dim + 1>& c, int omit) {
    Facet f{};
    int k = 0;
    for (int i = 0; i <= Dim; ++i) {
      if (i != omit) f[k++] = c[i];
    }
    std::sort(f.begin(), f.end());
    return f;
  };
  for (std::size_t c = 0; c < cells.size(); ++c) {
    for (std::size_t v : cells[c]) {
      if (v >= vertices_.size()) throw InputError("cell references a missing vertex");
    }
    for (int i = 0; i <= Dim; ++i) incidence[facet_of(cells[c], i)].push_back(c);
  }
  for (const auto& [f, cs] : incidence) {
    if (cs.size() == 1) boundary_.push_back(f);
  }
  if constexpr (Dim == 3) {
    for (const auto& f : boundary_) {
      edges_.push_back({f[0], f[1]});
      edges_.push_back({f[0], f[2]});
      edges_.push_back({f[1], f[2]});
    }
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  }

  cells_.resize(cells.size());
  for (std::size_t c = 0; c < cells.size(); ++c) {
    Cell<Dim>& cell = cells_[c];
    cell.vertex = cells[c];
    for (int i = 0; i <= Dim; ++i) {
      std::array<Point, Dim> pts;
      int k = 0;
      for (int j = 0; j <= Dim; ++j) {
        if (j != i) pts[k++] = vertices_[cell.vertex[j]];
      }
      Point n = facet_normal(pts);
      const double len = norm<Dim>(n);
      if (len == 0) throw InputError("degenerate cell in region");
      for (auto& v : n) v /= len;
      if (dotv<Dim>(n, sub<Dim>(vertices_[cell.vertex[i]], pts[0])) > 0) {
        for (auto& v : n) v = -v;
      }
      cell.normal[i] = n;
      cell.offset[i] = dotv<Dim>(n, pts[0]);
      const Facet f = facet_of(cell.vertex, i);
      const auto it = std::lower_bound(boundary_.begin(), boundary_.end(), f);
      cell.boundary[i] = (it != boundary_.end() && *it == f)
                             ? static_cast<std::size_t>(it - boundary_.begin())
                             : kNoFeature;
    }
  }

  std::vector<std::vector<std::size_t>> by_vertex(vertices_.size());
  for (std::size_t c = 0; c < cells_.size(); ++c) {
    for (std::size_t v : cells_[c].vertex) by_vertex[v].push_back(c);
  }
  star_.resize(cells_.size());
  for (std::size_t c = 0; c < cells_.size(); ++c) {
    for (std::size_t v : cells_[c].vertex) star_[c].insert(star_[c].end(), by_vertex[v].begin(), by_vertex[v].end());
    std::sort(star_[c].begin(), star_[c].end());
    star_[c].erase(std::unique(star_[c].begin(), star_[c].end()), star_[c].end());
  }

  Point lo = vertices_.front(), hi = vertices_.front();
  for (const auto& p : vertices_) {
    for (int k = 0; k < Dim; ++k) {
      lo[k] = std::min(lo[k], p[k]);
      hi[k] = std::max(hi[k], p[k]);
    }
  }
  diagonal_ = norm<Dim>(sub<Dim>(hi, lo));
}

template <int Dim>
double SimplicialRegion<Dim>::excess(std::size_t c, const Point& x) const {
  const Cell<Dim>& cell = cells_[c];
  double e = -std::numeric_limits<double>::infinity();
  for (int i = 0; i <= Dim; ++i) e = std::max(e, dotv<Dim>(cell.normal[i], x) - cell.offset[i]);
  return e;
}

template <int Dim>
std::vector<std::size_t> SimplicialRegion<Dim>::cells_near(const Point& x, double tol) const {
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < cells_.size(); ++c) {
    if (excess(c, x) <= tol) out.push_back(c);
  }
  return out;
}

template <int Dim>
std::size_t SimplicialRegion<Dim>::edge_id(std::size_t a, std::size_t b) const {
  const std::array<std::size_t, 2> e{std::min(a, b), std::max(a, b)};
  const auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
  if (it == edges_.end() || *it != e) return kNoFeature;
  return static_cast<std::size_t>(it - edges_.begin());
}

Region3 make_region(const TetDecomposition& d) {
  std::vector<VecD<3>> v;
  v.reserve(d.vertices.size());
  for (const auto& p : d.vertices) v.push_back(to_float(p));
  std::vector<std::array<std::size_t, 4>> cells;
  for (const auto& t : d.tets) cells.push_back(t.v);
  return Region3(std::move(v), cells);
}

Region2 make_region(const Polygon& p) {
  std::vector<VecD<2>> v;
  for (const auto& q : p.vertices) v.push_back(to_float(q));
  return Region2(std::move(v), triangulate_polygon(p.vertices));
}

template <int Dim>
AttractionPath<Dim> attract(const SimplicialRegion<Dim>& region, const std::type_identity_t<VecD<Dim>>& p,
                            const std::type_identity_t<VecD<Dim>>& b, const TraceConfig& cfg) {
  const double diag = region.diagonal();
  const double touch = 1e-10 * diag;
  const double reach = cfg.reach_tolerance.value_or(1e-9 * diag);
  const std::size_t max_events = cfg.max_events.value_or(10 * region.cells().size() + 64);
  const std::size_t max_steps = 50 * max_events + 1000;
  if (!region.contains(p, 1e-9 * diag)) throw InputError("start point lies outside the region");
  if (!region.contains(b, 1e-9 * diag)) throw InputError("beacon lies outside the region");

  AttractionPath<Dim> path;
  path.waypoints.push_back(p);
  VecD<Dim> x = p;

  struct Option {
    std::size_t cell;
    VecD<Dim> dir;
    double rate;
  };

  for (std::size_t steps = 0;; ++steps) {
    const VecD<Dim> g = sub<Dim>(b, x);
    const double dist = norm<Dim>(g);
    if (dist <= reach) {
      path.terminal = Terminal::Reached;
      path.end = b;
      return path;
    }
    if (steps > max_steps) throw NonTermination("attraction trace exceeded its step budget");

    auto near = region.cells_near(x, touch);
    if (near.empty()) near = region.cells_near(x, 1e-9 * diag);
    if (near.empty()) throw InvariantViolation("attraction trace left the region");

    std::vector<Option> options;
    for (std::size_t c : near) {
      const Cell<Dim>& cell = region.cells()[c];
      std::vector<VecD<Dim>> active;
      for (int i = 0; i <= Dim; ++i) {
        if (dotv<Dim>(cell.normal[i], x) - cell.offset[i] >= -touch) active.push_back(cell.normal[i]);
      }
      const VecD<Dim> d = project_to_cone<Dim>(g, active);
      options.push_back({c, d, norm<Dim>(d)});
    }
    std::stable_sort(options.begin(), options.end(),
                     [](const Option& a, const Option& b) { return a.rate > b.rate; });
    const double best_rate = options.front().rate;
    if (best_rate <= cfg.descent_tolerance * dist) {
      path.terminal = Terminal::Stuck;
      path.end = x;
      return path;
    }
    // Equal rates form one group, ordered by cell id.
    const double tie = best_rate * (1 - 1e-9);
    std::size_t group = 0;
    while (group < options.size() && options[group].rate >= tie) ++group;
    std::sort(options.begin(), options.begin() + static_cast<std::ptrdiff_t>(group),
              [](const Option& a, const Option& b) { return a.cell < b.cell; });
    for (std::size_t i = 1; i < group; ++i) {
      const auto diff = sub<Dim>(options[i].dir, options[0].dir);
      if (norm<Dim>(diff) > 1e-9 * best_rate) {
        path.ties.push_back(path.waypoints.size() - 1);
        break;
      }
    }

    const Option* chosen = nullptr;
    VecD<Dim> u{};
    double s = 0;
    for (const Option& o : options) {
      if (o.rate <= cfg.descent_tolerance * dist) break;
      const Cell<Dim>& cell = region.cells()[o.cell];
      VecD<Dim> dir = o.dir;
      for (auto& v : dir) v /= o.rate;
      double len = dotv<Dim>(g, dir);
      for (int i = 0; i <= Dim; ++i) {
        const double along = dotv<Dim>(cell.normal[i], dir);
        const double gap = cell.offset[i] - dotv<Dim>(cell.normal[i], x);
        if (gap <= touch) {
          if (along > 1e-8) len = 0;
        } else if (along > 1e-15) {
          len = std::min(len, gap / along);
        }
      }
      if (len > 1e-13 * diag) {
        chosen = &o;
        u = dir;
        s = len;
        break;
      }
    }
    if (!chosen) {
      path.terminal = Terminal::Stuck;
      path.end = x;
      return path;
    }

    const Cell<Dim>& cell = region.cells()[chosen->cell];
    std::vector<int> along;
    for (int i = 0; i <= Dim; ++i) {
      const bool on = dotv<Dim>(cell.normal[i], x) - cell.offset[i] >= -touch;
      if (on && cell.boundary[i] != kNoFeature && std::abs(dotv<Dim>(cell.normal[i], u)) <= 1e-9) {
        along.push_back(i);
      }
    }
    PathSegment seg;
    if (along.size() == 1) {
      seg = {SegmentKind::OnFacet, cell.boundary[along[0]]};
    } else if (along.size() >= 2) {
      std::vector<std::size_t> ends;
      for (int j = 0; j <= Dim; ++j) {
        if (std::find(along.begin(), along.end(), j) == along.end()) ends.push_back(cell.vertex[j]);
      }
      seg.kind = SegmentKind::OnEdge;
      seg.feature = ends.size() == 2 ? region.edge_id(ends[0], ends[1]) : kNoFeature;
    }

    x = axpy<Dim>(x, s, u);
    if (!path.segments.empty() && path.segments.back() == seg) {
      path.waypoints.back() = x;
    } else {
      path.segments.push_back(seg);
      path.waypoints.push_back(x);
      if (path.segments.size() > max_events) throw NonTermination("attraction trace exceeded its event budget");
    }
  }
}

template class SimplicialRegion<2>;
template class SimplicialRegion<3>;
template AttractionPath<2> attract<2>(const Region2&, const VecD<2>&, const VecD<2>&, const TraceConfig&);
template AttractionPath<3> attract<3>(const Region3&, const VecD<3>&, const VecD<3>&, const TraceConfig&);

}  // namespace beacon
