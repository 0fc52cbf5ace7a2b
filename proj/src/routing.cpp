#include "beacon/routing.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <random>
#include <set>

#include "beacon/generators.hpp"
#include "beacon/kernels.hpp"

namespace beacon {

template <int Dim>
RouteResult route(const SimplicialRegion<Dim>& region, const std::type_identity_t<VecD<Dim>>& p,
                  const std::type_identity_t<VecD<Dim>>& q, const std::vector<VecD<Dim>>& beacons,
                  const TraceConfig& cfg) {
  const double tol = 1e-9 * region.diagonal();
  for (const auto& x : beacons) {
    if (!region.contains(x, tol)) throw InputError("beacon lies outside the region");
  }
  if (covers<Dim>(region, q, p, cfg)) return {true, {}};
  // node k < beacons.size() is a beacon; BFS from p in activation order
  const std::size_t k = beacons.size();
  std::vector<std::size_t> parent(k, k);
  std::vector<char> seen(k, 0);
  std::deque<std::size_t> queue;
  for (std::size_t j = 0; j < k; ++j) {
    if (covers<Dim>(region, beacons[j], p, cfg)) {
      seen[j] = 1;
      queue.push_back(j);
    }
  }
  while (!queue.empty()) {
    const std::size_t u = queue.front();
    queue.pop_front();
    if (covers<Dim>(region, q, beacons[u], cfg)) {
      RouteResult out{true, {}};
      for (std::size_t x = u; x != k; x = parent[x]) out.chain.push_back(x);
      std::reverse(out.chain.begin(), out.chain.end());
      return out;
    }
    for (std::size_t v = 0; v < k; ++v) {
      if (seen[v] || !covers<Dim>(region, beacons[v], beacons[u], cfg)) continue;
      seen[v] = 1;
      parent[v] = u;
      queue.push_back(v);
    }
  }
  return {};
}

template <int Dim>
bool replay_chain(const SimplicialRegion<Dim>& region, const std::type_identity_t<VecD<Dim>>& p,
                  const std::type_identity_t<VecD<Dim>>& q, const std::vector<VecD<Dim>>& beacons,
                  const std::vector<std::size_t>& chain, const TraceConfig& cfg) {
  VecD<Dim> at = p;
  for (std::size_t j : chain) {
    if (j >= beacons.size() || !covers<Dim>(region, beacons[j], at, cfg)) return false;
    at = beacons[j];
  }
  return covers<Dim>(region, q, at, cfg);
}

std::vector<FloatPoint3> default_samples(const TetDecomposition& d, std::size_t extra, std::uint64_t seed) {
  std::vector<FloatPoint3> out;
  for (const auto& v : d.vertices) out.push_back(to_float(v));
  for (const auto& t : d.tets) {
    FloatPoint3 c{};
    for (VertexId v : t.v) {
      for (int k = 0; k < 3; ++k) c[k] += out[v][k] / 4.0;
    }
    out.push_back(c);
  }
  if (extra == 0) return out;
  std::vector<double> volume;
  for (const auto& t : d.tets) {
    const FloatPoint3 &o = out[t.v[0]], &a = out[t.v[1]], &b = out[t.v[2]], &c = out[t.v[3]];
    const double u[3] = {a[0] - o[0], a[1] - o[1], a[2] - o[2]}, v[3] = {b[0] - o[0], b[1] - o[1], b[2] - o[2]},
                 w[3] = {c[0] - o[0], c[1] - o[1], c[2] - o[2]};
    volume.push_back(std::abs(u[0] * (v[1] * w[2] - v[2] * w[1]) - u[1] * (v[0] * w[2] - v[2] * w[0]) +
                              u[2] * (v[0] * w[1] - v[1] * w[0])));
  }
  std::mt19937_64 rng(seed);
  std::discrete_distribution<std::size_t> pick(volume.begin(), volume.end());
  std::exponential_distribution<double> expo(1.0);
  for (std::size_t i = 0; i < extra; ++i) {
    const auto& t = d.tets[pick(rng)];
    double w[4], sum = 0;
    for (double& x : w) sum += (x = expo(rng));
    FloatPoint3 p{};
    for (int j = 0; j < 4; ++j) {
      for (int k = 0; k < 3; ++k) p[k] += w[j] / sum * out[t.v[j]][k];
    }
    out.push_back(p);
  }
  return out;
}

std::vector<FloatPoint3> beacon_points(const TetDecomposition& d, const std::vector<VertexId>& beacons) {
  std::vector<FloatPoint3> out;
  for (VertexId v : beacons) {
    if (v >= d.vertices.size()) throw InputError("beacon vertex out of range");
    out.push_back(to_float(d.vertices[v]));
  }
  return out;
}

template <int Dim>
VerifyReport<Dim> verify_all_pairs(const SimplicialRegion<Dim>& region, const std::vector<VecD<Dim>>& samples,
                                   const std::vector<VecD<Dim>>& beacons, const TraceConfig& cfg) {
  VerifyReport<Dim> report;
  report.samples = samples;
  report.beacons = beacons.size();
  std::vector<VecD<Dim>> points = samples;
  points.insert(points.end(), beacons.begin(), beacons.end());
  const std::size_t n = points.size(), s = samples.size(), k = beacons.size();
  const auto cov = kernels::coverage_matrix_parallel<Dim>(region, points, cfg);
  auto covered = [&](std::size_t point, std::size_t beacon) { return cov[point * n + beacon] != 0; };
  for (std::size_t i = 0; i < s; ++i) {
    // beacons reachable from sample i
    std::vector<char> seen(k, 0);
    std::deque<std::size_t> queue;
    for (std::size_t j = 0; j < k; ++j) {
      if (covered(i, s + j)) {
        seen[j] = 1;
        queue.push_back(j);
      }
    }
    while (!queue.empty()) {
      const std::size_t u = queue.front();
      queue.pop_front();
      for (std::size_t v = 0; v < k; ++v) {
        if (!seen[v] && covered(s + u, s + v)) {
          seen[v] = 1;
          queue.push_back(v);
        }
      }
    }
    for (std::size_t q = 0; q < s; ++q) {
      if (q == i) continue;
      ++report.pairs_checked;
      bool ok = covered(i, q);
      for (std::size_t j = 0; j < k && !ok; ++j) ok = seen[j] && covered(s + j, q);
      if (!ok) report.failures.push_back({i, q, attract<Dim>(region, samples[i], samples[q], cfg)});
    }
  }
  return report;
}

VerifyReport<3> verify_all_pairs(const TetDecomposition& d, const std::vector<VertexId>& beacons,
                                 std::size_t extra_samples, std::uint64_t seed, const TraceConfig& cfg) {
  require_valid(d);
  const auto region = make_region(d);
  return verify_all_pairs<3>(region, default_samples(d, extra_samples, seed), beacon_points(d, beacons), cfg);
}

std::vector<RationalPoint3> grid_candidates(const TetDecomposition& d, int resolution) {
  if (resolution < 1) throw InputError("grid resolution must be positive");
  // key: vertex -> weight numerator over resolution, zero weights dropped
  std::set<std::vector<std::pair<VertexId, int>>> seen;
  std::vector<RationalPoint3> out;
  const int r = resolution;
  for (const auto& t : d.tets) {
    for (int a = 0; a <= r; ++a) {
      for (int b = 0; a + b <= r; ++b) {
        for (int c = 0; a + b + c <= r; ++c) {
          const int w[4] = {a, b, c, r - a - b - c};
          std::vector<std::pair<VertexId, int>> key;
          for (int j = 0; j < 4; ++j) {
            if (w[j] > 0) key.emplace_back(t.v[j], w[j]);
          }
          std::sort(key.begin(), key.end());
          if (!seen.insert(key).second) continue;
          RationalPoint3 p{QSqrt3(0), QSqrt3(0), QSqrt3(0)};
          for (auto [v, wv] : key) {
            Rational weight(wv, r);
            weight.canonicalize();
            p = p + QSqrt3(weight) * d.vertices[v];
          }
          out.push_back(p);
        }
      }
    }
  }
  // vertices first, in index order
  std::stable_partition(out.begin(), out.end(), [&](const RationalPoint3& p) {
    return std::find(d.vertices.begin(), d.vertices.end(), p) != d.vertices.end();
  });
  return out;
}

namespace {

bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
  const std::size_t k = idx.size();
  for (std::size_t i = k; i-- > 0;) {
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

LowerBoundReport falsify_lower_bound(int corners, std::size_t budget, int resolution, std::size_t cap,
                                     const TraceConfig& cfg) {
  if (budget >= static_cast<std::size_t>(std::max(corners, 0))) {
    throw InputError("the beacon budget must be below the corner count");
  }
  const auto d = spiral_polyhedron({corners});
  const auto region = make_region(d);
  const auto cand = grid_candidates(d, resolution);
  if (cand.size() > cap) {
    throw InputError("candidate set has " + std::to_string(cand.size()) + " points, above the cap of " +
                     std::to_string(cap));
  }
  LowerBoundReport rep;
  rep.corners = corners;
  rep.budget = budget;
  rep.resolution = resolution;
  rep.candidates = cand.size();
  // points: s, t, then candidates
  std::vector<FloatPoint3> points{to_float(d.vertices[SpiralIndex::s]), to_float(d.vertices[SpiralIndex::t])};
  for (const auto& p : cand) points.push_back(to_float(p));
  const std::size_t n = points.size();
  const auto cov = kernels::coverage_matrix_parallel<3>(region, points, cfg);
  auto covered = [&](std::size_t point, std::size_t beacon) { return cov[point * n + beacon] != 0; };
  rep.direct_route = covered(0, 1);
  if (rep.direct_route) {
    rep.counterexample = std::vector<RationalPoint3>{};
    return rep;
  }
  if (budget == 0) return rep;
  std::vector<std::size_t> idx(budget);
  for (std::size_t i = 0; i < budget; ++i) idx[i] = i;
  if (budget > cand.size()) return rep;
  do {
    ++rep.subsets_checked;
    std::vector<char> seen(budget, 0);
    std::deque<std::size_t> queue;
    for (std::size_t j = 0; j < budget; ++j) {
      if (covered(0, 2 + idx[j])) {
        seen[j] = 1;
        queue.push_back(j);
      }
    }
    bool routed = false;
    while (!queue.empty() && !routed) {
      const std::size_t u = queue.front();
      queue.pop_front();
      routed = covered(2 + idx[u], 1);
      for (std::size_t v = 0; v < budget; ++v) {
        if (!seen[v] && covered(2 + idx[u], 2 + idx[v])) {
          seen[v] = 1;
          queue.push_back(v);
        }
      }
    }
    if (routed) {
      std::vector<RationalPoint3> found;
      for (std::size_t j : idx) found.push_back(cand[j]);
      rep.counterexample = found;
      return rep;
    }
  } while (next_combination(idx, cand.size()));
  return rep;
}

template RouteResult route<2>(const Region2&, const VecD<2>&, const VecD<2>&, const std::vector<VecD<2>>&,
                              const TraceConfig&);
template RouteResult route<3>(const Region3&, const VecD<3>&, const VecD<3>&, const std::vector<VecD<3>>&,
                              const TraceConfig&);
template bool replay_chain<2>(const Region2&, const VecD<2>&, const VecD<2>&, const std::vector<VecD<2>>&,
                              const std::vector<std::size_t>&, const TraceConfig&);
template bool replay_chain<3>(const Region3&, const VecD<3>&, const VecD<3>&, const std::vector<VecD<3>>&,
                              const std::vector<std::size_t>&, const TraceConfig&);
template VerifyReport<2> verify_all_pairs<2>(const Region2&, const std::vector<VecD<2>>&,
                                             const std::vector<VecD<2>>&, const TraceConfig&);
template VerifyReport<3> verify_all_pairs<3>(const Region3&, const std::vector<VecD<3>>&,
                                             const std::vector<VecD<3>>&, const TraceConfig&);

}  // namespace beacon
