/*
 * Copyright 2026 The mpgsmooth Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "mpg/brute_force.hpp"
#include "mpg/min_mean_cycle.hpp"
#include "mpg/policy_iteration.hpp"
#include "mpg/random_instances.hpp"
#include "mpg/weight_oracle.hpp"

namespace {

mpg::Game bipartite(int half, std::uint64_t seed) {
  const auto skeleton = mpg::gen_graph(mpg::GraphSpec::complete_bipartite(half, half), seed);
  return mpg::sample_weights(skeleton, mpg::DistributionSpec::gaussian(0.0, 0.2), seed + 1);
}

void BM_SolveMpgExact(benchmark::State& state) {
  const auto g = bipartite(static_cast<int>(state.range(0)), 11);
  for (auto _ : state) benchmark::DoNotOptimize(mpg::solve_mpg(g));
}
BENCHMARK(BM_SolveMpgExact)->Arg(2)->Arg(3)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_SolveMpgFloat(benchmark::State& state) {
  const auto g = bipartite(static_cast<int>(state.range(0)), 11);
  mpg::SolverConfig cfg;
  cfg.mode = mpg::ArithmeticMode::Float;
  for (auto _ : state) benchmark::DoNotOptimize(mpg::solve_mpg(g, cfg));
}
BENCHMARK(BM_SolveMpgFloat)->Arg(2)->Arg(3)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_SolveDiscounted(benchmark::State& state) {
  const auto g = bipartite(static_cast<int>(state.range(0)), 12);
  const mpg::Rational gamma_bar(9, 10);
  for (auto _ : state) benchmark::DoNotOptimize(mpg::solve_discounted(g, gamma_bar));
}
BENCHMARK(BM_SolveDiscounted)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_SolveMpgOracle(benchmark::State& state) {
  const auto g = bipartite(static_cast<int>(state.range(0)), 13);
  for (auto _ : state) {
    mpg::WeightOracle oracle(g.weights());
    benchmark::DoNotOptimize(mpg::solve_mpg_truncated(oracle, g));
  }
}
BENCHMARK(BM_SolveMpgOracle)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_KarpMinMeanCycle(benchmark::State& state) {
  const auto two_player = bipartite(static_cast<int>(state.range(0)), 14);
  const mpg::Game g(two_player.num_vertices(),
                    std::vector<mpg::Player>(static_cast<std::size_t>(two_player.num_vertices()), mpg::Player::Min),
                    two_player.edges());
  for (auto _ : state) benchmark::DoNotOptimize(mpg::karp_min_mean_cycle(g));
}
BENCHMARK(BM_KarpMinMeanCycle)->Arg(4)->Arg(8)->Arg(16);

void BM_BruteForce(benchmark::State& state) {
  const auto g = bipartite(static_cast<int>(state.range(0)), 15);
  for (auto _ : state) benchmark::DoNotOptimize(mpg::brute_force_solve(g));
}
BENCHMARK(BM_BruteForce)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
