// SPDX-License-Identifier: Apache-2.0
#include <sercm/constellation.hpp>
#include <sercm/ser.hpp>

#include <benchmark/benchmark.h>

#include "bench_common.hpp"

static void QuadratureQam16(benchmark::State& state) {
  auto c = sercm::new_constellation(bench::qam16_points());
  sercm::SerEngine eng = sercm::SerEngine::from_constellation(c);
  double tol = std::pow(10.0, -static_cast<double>(state.range(0)));
  eng.quadrature(10.0, tol);  // warm the decomposition cache
  for (auto _ : state) {
    benchmark::DoNotOptimize(eng.quadrature(10.0, tol).value);
  }
}
BENCHMARK(QuadratureQam16)->Arg(4)->Arg(6)->Arg(8);

static void QuadratureCube(benchmark::State& state) {
  auto c = sercm::new_constellation(bench::cube_points());
  sercm::SerEngine eng = sercm::SerEngine::from_constellation(c);
  double tol = std::pow(10.0, -static_cast<double>(state.range(0)));
  eng.quadrature(1.0, tol);
  for (auto _ : state) {
    benchmark::DoNotOptimize(eng.quadrature(1.0, tol).value);
  }
}
BENCHMARK(QuadratureCube)->Arg(4)->Arg(6);

static void SecondDerivativeCube(benchmark::State& state) {
  auto c = sercm::new_constellation(bench::cube_points());
  sercm::SerEngine eng = sercm::SerEngine::from_constellation(c);
  eng.derivative(2.0, 2, 1e-8);
  for (auto _ : state) {
    benchmark::DoNotOptimize(eng.derivative(2.0, 2, 1e-8));
  }
}
BENCHMARK(SecondDerivativeCube);
