// SPDX-License-Identifier: Apache-2.0
#include <sercm/constellation.hpp>
#include <sercm/geometry.hpp>

#include <benchmark/benchmark.h>

#include "bench_common.hpp"

static void DecomposeCube(benchmark::State& state) {
  auto red = sercm::reduce(sercm::new_constellation(bench::cube_points()));
  for (auto _ : state) {
    for (int i = 0; i < red.size(); ++i) {
      benchmark::DoNotOptimize(sercm::decompose_symbol(red, i).cones.size());
    }
  }
}
BENCHMARK(DecomposeCube);

static void DecomposeQam16(benchmark::State& state) {
  auto red = sercm::reduce(sercm::new_constellation(bench::qam16_points()));
  for (auto _ : state) {
    for (int i = 0; i < red.size(); ++i) {
      benchmark::DoNotOptimize(sercm::decompose_symbol(red, i).cones.size());
    }
  }
}
BENCHMARK(DecomposeQam16);

BENCHMARK_MAIN();
