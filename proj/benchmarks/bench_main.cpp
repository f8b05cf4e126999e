// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include "portsim/multi.hpp"
#include "portsim/pgm.hpp"
#include "portsim/schur.hpp"

namespace {

void BM_BuildPgm(benchmark::State& state) {
  const int ports = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(portsim::pgm::build_pgm(ports));
  }
}
BENCHMARK(BM_BuildPgm)->Arg(4)->Arg(6)->Arg(8);

void BM_ExactFidelity(benchmark::State& state) {
  const int ports = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(portsim::pgm::exact_protocol_fidelity(ports));
  }
}
BENCHMARK(BM_ExactFidelity)->Arg(4)->Arg(6)->Arg(7);

void BM_TracePi1ExactSum(benchmark::State& state) {
  const int ports = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(portsim::schur::trace_pi1_exact_sum(ports));
  }
}
BENCHMARK(BM_TracePi1ExactSum)->Arg(101)->Arg(501)->Arg(1001);

void BM_SigmaSqrtSum(benchmark::State& state) {
  const int ports = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(portsim::schur::trace_sigma_sqrtpi1_sum(ports));
  }
}
BENCHMARK(BM_SigmaSqrtSum)->Arg(101)->Arg(501)->Arg(1001);

void BM_PairwiseOverlapDense(benchmark::State& state) {
  const portsim::multi::PortInjection g(6, {1, 2});
  const portsim::multi::PortInjection h(6, {2, 3});
  const int d = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(portsim::multi::pairwise_overlap_dense(g, h, d));
  }
}
BENCHMARK(BM_PairwiseOverlapDense)->Arg(2)->Arg(3);

}  // namespace

BENCHMARK_MAIN();
