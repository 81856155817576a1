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

#include <filesystem>
#include <random>
#include <string>

#include "orbench/oracle_solver.hpp"

namespace {

orbench::LinearProgram bundled(const std::string& id) {
  return orbench::load_verified_models(
             std::filesystem::path(ORBENCH_DATA_DIR) / "models")
      .at(id);
}

void BM_SimplexPrinter(benchmark::State& state) {
  const auto lp = bundled("printer");
  for (auto _ : state) benchmark::DoNotOptimize(orbench::solve_lp(lp).objective);
}
BENCHMARK(BM_SimplexPrinter);

// Random dense knapsack-style MILPs of growing width.
void BM_BranchAndBound(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> coef(1, 9);
  orbench::LinearProgram lp;
  lp.sense = orbench::Sense::Maximize;
  for (std::size_t j = 0; j < n; ++j) lp.c.push_back(coef(rng));
  for (int r = 0; r < 3; ++r) {
    std::vector<double> a;
    for (std::size_t j = 0; j < n; ++j) a.push_back(coef(rng));
    lp.add_row(std::move(a), orbench::Relation::LessEqual, 4.5 * n);
  }
  lp.lower.assign(n, 0);
  lp.upper.assign(n, 3);
  lp.kinds.assign(n, orbench::VarKind::Integer);
  std::size_t nodes = 0;
  for (auto _ : state) {
    const auto s = orbench::solve_milp(lp);
    nodes = s.nodes;
    benchmark::DoNotOptimize(s.objective);
  }
  state.counters["nodes"] = static_cast<double>(nodes);
}
BENCHMARK(BM_BranchAndBound)->DenseRange(2, 6, 2);

void BM_FamilyTrip(benchmark::State& state) {
  const auto models = orbench::load_verified_models(
      std::filesystem::path(ORBENCH_DATA_DIR) / "models");
  const auto& lp = models.at("family-trip");
  for (auto _ : state) benchmark::DoNotOptimize(orbench::solve(lp).objective);
}
BENCHMARK(BM_FamilyTrip);

}  // namespace
