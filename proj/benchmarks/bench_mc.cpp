// SPDX-License-Identifier: Apache-2.0
#include <sercm/constellation.hpp>
#include <sercm/noise.hpp>
#include <sercm/ser.hpp>

#include <benchmark/benchmark.h>

#include "bench_common.hpp"

static void McQam16(benchmark::State& state) {
  auto c = sercm::new_constellation(bench::qam16_points());
  const long n = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        sercm::ser_mc(c, sercm::NoiseModel::awgn(), 10.0, n, 1).value);
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(McQam16)->Arg(10000)->Arg(100000);

static void McCompoundLevy(benchmark::State& state) {
  auto c = sercm::new_constellation(bench::qam16_points());
  auto noise = sercm::NoiseModel::compound(sercm::MixingSpec::levy(1.0));
  const long n = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sercm::ser_mc(c, noise, 10.0, n, 1).value);
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(McCompoundLevy)->Arg(10000);
