#pragma once

#include <cstdint>
#include <random>

#include "beacon/attraction.hpp"

namespace beacon::testkit {

template <int Dim>
struct OracleResult {
  Terminal terminal = Terminal::Reached;
  VecD<Dim> end{};
  std::size_t steps = 0;
};

/// Small-step projected descent: repeatedly step h toward the beacon, project back
/// onto the region, rescale the projected move to length h and project again.
/// Stops when within h of the beacon or when the distance stops decreasing.
template <int Dim>
OracleResult<Dim> descend(const SimplicialRegion<Dim>& region, const std::type_identity_t<VecD<Dim>>& p,
                          const std::type_identity_t<VecD<Dim>>& b,
                          double step_fraction = 1e-6);

/// Nearest point of the closed simplex with the given corners.
template <int Dim>
VecD<Dim> closest_on_simplex(const VecD<Dim>& x, const std::vector<VecD<Dim>>& corners);

/// Uniform point in a random cell (cells weighted by volume).
template <int Dim>
VecD<Dim> sample_point(const SimplicialRegion<Dim>& region, std::mt19937_64& rng);

}  // namespace beacon::testkit
