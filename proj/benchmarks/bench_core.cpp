// Copyright 2026 The deloc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "deloc/controlled.hpp"
#include "deloc/entangling.hpp"
#include "deloc/gates.hpp"
#include "deloc/locc.hpp"
#include "deloc/schmidt.hpp"

namespace deloc {
namespace {

void bm_operator_schmidt_rank(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const BipartiteUnitary u = random_bipartite(d, d, 1);
  for (auto _ : state) benchmark::DoNotOptimize(operator_schmidt_rank(u));
}
BENCHMARK(bm_operator_schmidt_rank)->DenseRange(2, 4);

void bm_classify_controlled(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const BipartiteUnitary u = controlled_random(d, d, d, 1).gate;
  for (auto _ : state) benchmark::DoNotOptimize(classify(u));
}
BENCHMARK(bm_classify_controlled)->DenseRange(2, 4);

void bm_classify_haar(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const BipartiteUnitary u = random_bipartite(d, d, 1);
  for (auto _ : state) benchmark::DoNotOptimize(classify(u));
}
BENCHMARK(bm_classify_haar)->DenseRange(2, 4);

void bm_execute_protocol(benchmark::State& state) {
  const LoccProtocol p = random_protocol(3, 3, static_cast<int>(state.range(0)), 1);
  const ComplexVector psi = random_state(9, 2);
  for (auto _ : state) benchmark::DoNotOptimize(execute_protocol(p, psi));
}
BENCHMARK(bm_execute_protocol)->Arg(2)->Arg(4)->Arg(6);

void bm_verify_cnot(benchmark::State& state) {
  const LoccProtocol p =
      synthesize_relocalization_protocol(*detect_controlled(cnot(), Side::A));
  for (auto _ : state) {
    benchmark::DoNotOptimize(verify_one_piece_relocalization(cnot(), p, Side::B));
  }
}
BENCHMARK(bm_verify_cnot);

void bm_entangling_power(benchmark::State& state) {
  OptimizationConfig cfg;
  cfg.restarts = static_cast<int>(state.range(0));
  const BipartiteUnitary u = heisenberg(0.2);
  for (auto _ : state) benchmark::DoNotOptimize(entangling_power(u, cfg));
}
BENCHMARK(bm_entangling_power)->Arg(1)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace deloc

BENCHMARK_MAIN();
