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
#include <string>

#include "orbench/execution_sandbox.hpp"
#include "orbench/tool_index.hpp"

namespace {

std::string reply_with_code(std::size_t body_lines) {
  std::string s = "Here is the model.\n\n```python\nimport coptpy as cp\n";
  for (std::size_t i = 0; i < body_lines; ++i) {
    s += "x" + std::to_string(i) + " = model.addVar(lb=0)\n";
  }
  return s + "model.solve()\n```\nThat is all.";
}

void BM_ExtractCode(benchmark::State& state) {
  const auto text = reply_with_code(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(orbench::prepare_script(text));
  state.SetBytesProcessed(state.iterations() * text.size());
}
BENCHMARK(BM_ExtractCode)->Arg(10)->Arg(1000);

void BM_ToolLookup(benchmark::State& state) {
  const std::filesystem::path stub =
      std::filesystem::path(ORBENCH_DATA_DIR) / "stubs" / "coptpy.pyi";
  const auto index = orbench::SignatureIndex::build({&stub, 1});
  const char* names[] = {"Model.addVar", "addVariable", "quicksum", "objVal",
                         "update"};
  for (auto _ : state) {
    for (const char* n : names) benchmark::DoNotOptimize(index.lookup(n));
  }
}
BENCHMARK(BM_ToolLookup);

}  // namespace
