// Copyright 2026 The orbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "orbench/grader.hpp"

namespace {

void BM_PassAtK(benchmark::State& state) {
  const long long n = state.range(0);
  for (auto _ : state) {
    double acc = 0.0;
    for (long long c = 0; c <= n; ++c) {
      for (long long k = 1; k <= n; ++k) acc += orbench::pass_at_k(n, c, k);
    }
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * (n + 1) * n);
}
BENCHMARK(BM_PassAtK)->Arg(12)->Arg(200);

void BM_Compare(benchmark::State& state) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> d(-1e4, 1e4);
  std::vector<std::pair<std::string, std::string>> cases;
  for (int i = 0; i < 1024; ++i) {
    cases.emplace_back(std::to_string(d(rng)), std::to_string(d(rng)));
  }
  cases.emplace_back("No Best Solution", "No Best Solution");
  cases.emplace_back("garbage", "12");
  std::size_t matched = 0;
  for (auto _ : state) {
    for (const auto& [p, g] : cases) matched += orbench::compare(p, g);
  }
  benchmark::DoNotOptimize(matched);
  state.SetItemsProcessed(state.iterations() * cases.size());
}
BENCHMARK(BM_Compare);

void BM_MajorityVote(benchmark::State& state) {
  std::vector<std::string> votes;
  for (int i = 0; i < state.range(0); ++i) votes.push_back(std::to_string(i % 7));
  for (auto _ : state) benchmark::DoNotOptimize(orbench::majority_vote(votes));
}
BENCHMARK(BM_MajorityVote)->Arg(8)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
