#include "beacon/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <exception>

namespace beacon::kernels {

namespace {

struct Box {
  FloatPoint3 lo, hi;
};

// Candidate pairs whose bounding boxes touch, in lexicographic order.
std::vector<std::pair<TetId, TetId>> box_candidates(const TetDecomposition& d,
                                                    const std::vector<char>& usable) {
  std::vector<FloatPoint3> f;
  f.reserve(d.vertices.size());
  for (const auto& p : d.vertices) f.push_back(to_float(p));
  const std::size_t m = d.tets.size();
  std::vector<Box> box(m);
  for (TetId t = 0; t < m; ++t) {
    if (!usable[t]) continue;
    box[t].lo = box[t].hi = f[d.tets[t].v[0]];
    for (VertexId v : d.tets[t].v) {
      for (int k = 0; k < 3; ++k) {
        box[t].lo[k] = std::min(box[t].lo[k], f[v][k]);
        box[t].hi[k] = std::max(box[t].hi[k], f[v][k]);
      }
    }
  }
  std::vector<std::pair<TetId, TetId>> out;
  for (TetId a = 0; a < m; ++a) {
    if (!usable[a]) continue;
    for (TetId b = a + 1; b < m; ++b) {
      if (!usable[b]) continue;
      bool apart = false;
      for (int k = 0; k < 3 && !apart; ++k) {
        const double slack = 1e-9 * (1.0 + std::abs(box[a].hi[k]) + std::abs(box[b].hi[k]));
        apart = box[a].hi[k] + slack < box[b].lo[k] || box[b].hi[k] + slack < box[a].lo[k];
      }
      if (!apart) out.emplace_back(a, b);
    }
  }
  return out;
}

}  // namespace

std::vector<std::pair<TetId, TetId>> overlapping_pairs_serial(const TetDecomposition& d,
                                                              const std::vector<char>& usable) {
  std::vector<std::pair<TetId, TetId>> out;
  for (auto [a, b] : box_candidates(d, usable)) {
    if (interiors_overlap(d.tets[a], d.tets[b], d.vertices)) out.emplace_back(a, b);
  }
  return out;
}

std::vector<std::pair<TetId, TetId>> overlapping_pairs_parallel(const TetDecomposition& d,
                                                                const std::vector<char>& usable) {
  const auto cand = box_candidates(d, usable);
  std::vector<char> hit(cand.size(), 0);
  const long n = static_cast<long>(cand.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (long i = 0; i < n; ++i) {
    const auto [a, b] = cand[static_cast<std::size_t>(i)];
    hit[static_cast<std::size_t>(i)] = interiors_overlap(d.tets[a], d.tets[b], d.vertices) ? 1 : 0;
  }
  std::vector<std::pair<TetId, TetId>> out;
  for (std::size_t i = 0; i < cand.size(); ++i) {
    if (hit[i]) out.push_back(cand[i]);
  }
  return out;
}

template <int Dim>
std::vector<char> coverage_matrix_serial(const SimplicialRegion<Dim>& region, const std::vector<VecD<Dim>>& points,
                                         const TraceConfig& cfg) {
  const std::size_t n = points.size();
  std::vector<char> out(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      out[i * n + j] = i == j || covers<Dim>(region, points[j], points[i], cfg) ? 1 : 0;
    }
  }
  return out;
}

template <int Dim>
std::vector<char> coverage_matrix_parallel(const SimplicialRegion<Dim>& region,
                                           const std::vector<VecD<Dim>>& points, const TraceConfig& cfg) {
  const std::size_t n = points.size();
  std::vector<char> out(n * n, 0);
  std::exception_ptr failure;
  const long cells = static_cast<long>(n * n);
#pragma omp parallel for schedule(dynamic, 8)
  for (long k = 0; k < cells; ++k) {
    const std::size_t i = static_cast<std::size_t>(k) / n, j = static_cast<std::size_t>(k) % n;
    try {
      out[static_cast<std::size_t>(k)] = i == j || covers<Dim>(region, points[j], points[i], cfg) ? 1 : 0;
    } catch (...) {
#pragma omp critical(coverage_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

template std::vector<char> coverage_matrix_serial<2>(const Region2&, const std::vector<VecD<2>>&, const TraceConfig&);
template std::vector<char> coverage_matrix_serial<3>(const Region3&, const std::vector<VecD<3>>&, const TraceConfig&);
template std::vector<char> coverage_matrix_parallel<2>(const Region2&, const std::vector<VecD<2>>&,
                                                       const TraceConfig&);
template std::vector<char> coverage_matrix_parallel<3>(const Region3&, const std::vector<VecD<3>>&,
                                                       const TraceConfig&);

}  // namespace beacon::kernels
