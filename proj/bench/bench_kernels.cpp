#include <benchmark/benchmark.h>

#include <map>

#include "beacon/attraction.hpp"
#include "beacon/generators.hpp"
#include "beacon/kernels.hpp"
#include "beacon/routing.hpp"

using namespace beacon;

namespace {

const TetDecomposition& instance(int prisms) {
  static std::map<int, TetDecomposition> cache;
  auto it = cache.find(prisms);
  if (it == cache.end()) it = cache.emplace(prisms, stacked_hallways({17, prisms, prisms})).first;
  return it->second;
}

template <auto Kernel>
void overlap(benchmark::State& state) {
  const auto& d = instance(static_cast<int>(state.range(0)));
  const std::vector<char> usable(d.size(), 1);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(d, usable));
  state.counters["m"] = static_cast<double>(d.size());
}

template <auto Kernel>
void coverage(benchmark::State& state) {
  const auto d = spiral_polyhedron({static_cast<int>(state.range(0))});
  const auto region = make_region(d);
  const auto pts = default_samples(d, 40, 1);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(region, pts, {}));
  state.counters["points"] = static_cast<double>(pts.size());
}

}  // namespace

BENCHMARK(overlap<kernels::overlapping_pairs_serial>)->Name("overlap/serial")->Arg(4)->Arg(12)->Arg(24);
BENCHMARK(overlap<kernels::overlapping_pairs_parallel>)->Name("overlap/parallel")->Arg(4)->Arg(12)->Arg(24);
BENCHMARK(coverage<kernels::coverage_matrix_serial<3>>)->Name("coverage/serial")->Arg(2)->Arg(6);
BENCHMARK(coverage<kernels::coverage_matrix_parallel<3>>)->Name("coverage/parallel")->Arg(2)->Arg(6);

BENCHMARK_MAIN();
