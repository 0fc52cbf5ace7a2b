#pragma once

#include <utility>
#include <vector>

#include "beacon/attraction.hpp"
#include "beacon/decomposition.hpp"

namespace beacon::kernels {

/// Pairs (a < b) of usable tetrahedra whose interiors intersect.
/// `usable[t] == 0` excludes t (degenerate or out of range).
std::vector<std::pair<TetId, TetId>> overlapping_pairs_serial(const TetDecomposition& d,
                                                              const std::vector<char>& usable);

/// OpenMP version; same result and order as the serial one.
std::vector<std::pair<TetId, TetId>> overlapping_pairs_parallel(const TetDecomposition& d,
                                                                const std::vector<char>& usable);

/// Row-major n x n matrix over `points`: entry (i, j) is 1 when a beacon at points[j]
/// covers points[i].
template <int Dim>
std::vector<char> coverage_matrix_serial(const SimplicialRegion<Dim>& region, const std::vector<VecD<Dim>>& points,
                                         const TraceConfig& cfg = {});

/// OpenMP version of coverage_matrix_serial. Exceptions from traces are rethrown after the loop.
template <int Dim>
std::vector<char> coverage_matrix_parallel(const SimplicialRegion<Dim>& region,
                                           const std::vector<VecD<Dim>>& points, const TraceConfig& cfg = {});

}  // namespace beacon::kernels
