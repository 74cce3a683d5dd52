// Copyright 2026 The convexmin Authors
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

#include "convexmin/bisect.hpp"
#include "convexmin/min_set.hpp"
#include "convexmin/process.hpp"

using namespace convexmin;

static void BM_MinSetRandomPwl(benchmark::State& state) {
  SeededRng rng(1);
  std::vector<PwlConvex> pool;
  for (int i = 0; i < 64; ++i) pool.push_back(random_compact_pwl(rng, 16));
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(min_set(pool[i++ & 63]));
  }
}
BENCHMARK(BM_MinSetRandomPwl);

static void BM_LadTrajectory(benchmark::State& state) {
  const ProcessModel model = ProcessModel::empirical_lad();
  const int n = static_cast<int>(state.range(0));
  std::uint64_t path = 0;
  for (auto _ : state) {
    SeededRng rng(derive_seed(7, 0, path++));
    benchmark::DoNotOptimize(min_set(sample_trajectory(model, n, rng)));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_LadTrajectory)->RangeMultiplier(4)->Range(64, 4096)->Complexity();

static void BM_BisectQuadratic(benchmark::State& state) {
  const ConvexOracle f([](double t) { return (t - 2) * (t - 2); },
                       std::make_pair(0.0, 10.0));
  BisectOptions opts;
  opts.tol = 1e-8;
  for (auto _ : state) {
    benchmark::DoNotOptimize(bisect_smallest(f, opts));
  }
}
BENCHMARK(BM_BisectQuadratic);

static void BM_EvalPwlDouble(benchmark::State& state) {
  SeededRng rng(3);
  const PwlConvex f = random_compact_pwl(rng, 64);
  double t = -4;
  for (auto _ : state) {
    benchmark::DoNotOptimize(f(t));
    t += 0.001;
    if (t > 4) t = -4;
  }
}
BENCHMARK(BM_EvalPwlDouble);

BENCHMARK_MAIN();
