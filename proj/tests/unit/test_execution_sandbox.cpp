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
#include <gtest/gtest.h>

#include <chrono>
#include <cstdlib>
#include <thread>

#include "orbench/execution_sandbox.hpp"
#include "orbench/text_util.hpp"
#include "test_env.hpp"

namespace orbench {
namespace {

using Clock = std::chrono::steady_clock;

SandboxConfig quick_config(const testing::TempDir& dir) {
  SandboxConfig c;
  c.timeout = std::chrono::seconds(2);
  c.workdir = dir.path() / "work";
  return c;
}

std::string fixture_script(const std::string& name) {
  return append_sentinel(read_text_file(testing::fixture("sandbox/" + name)));
}

TEST(ExtractCode, TakesFirstPythonFence) {
  EXPECT_EQ(extract_code("intro\n```python\n\n\nx = 1\n  y = 2\n```\n```python\nz\n```"),
            "x = 1\n  y = 2");
  EXPECT_EQ(extract_code("```python\nx = 1\n"), "x = 1");  // unterminated
  EXPECT_FALSE(extract_code("```\nx = 1\n```"));
  EXPECT_FALSE(extract_code("no code"));
  EXPECT_FALSE(extract_code("```python\n   \n```"));
}

TEST(ExtractCode, SentinelIsAppendedVerbatim) {
  const auto s = prepare_script("```python\nx = 1\n```");
  ASSERT_TRUE(s);
  EXPECT_EQ(*s,
            "x = 1\nif model.status == COPT.OPTIMAL:\n"
            "    print(f\"Just print the best solution: {model.objval}\")\n"
            "else:\n    print(\"No Best Solution\")");
}

TEST(ExecutionState, RenderParseRoundTrip) {
  const std::vector<ExecutionState> states = {
      ExecutionState::of(ExecutionStatus::BestSolutionFound),
      ExecutionState::of(ExecutionStatus::NoBestSolutionFound),
      ExecutionState::of(ExecutionStatus::OutOfExpectation),
      ExecutionState::of(ExecutionStatus::Timeout),
      ExecutionState::of(ExecutionStatus::NoCode),
      ExecutionState::failed("\nTraceback ...\nValueError: x\n")};
  for (const auto& s : states) {
    EXPECT_EQ(ExecutionState::parse(s.render()), s) << s.render();
    EXPECT_EQ(ExecutionState::parse(s.render(true)), s) << s.render(true);
  }
  EXPECT_EQ(ExecutionState::of(ExecutionStatus::OutOfExpectation).render(true),
            "Execution Suceessful but Out of Expectation");
  EXPECT_EQ(ExecutionState::of(ExecutionStatus::OutOfExpectation).render(),
            "Execution Successful but Out of Expectation");
  EXPECT_FALSE(ExecutionState::parse("Running"));
}

TEST(ClassifyCleanExit, MarkerNoSolutionAndNeither) {
  ExecutionRecord r;
  r.raw_output = "log\nJust print the best solution: 3050.0\nmore\n";
  classify_clean_exit(r);
  EXPECT_EQ(r.state.status, ExecutionStatus::BestSolutionFound);
  EXPECT_EQ(r.best_solution, "3050.0");

  r.raw_output = "Just print the best solution: None\n";
  classify_clean_exit(r);
  EXPECT_EQ(r.state.status, ExecutionStatus::OutOfExpectation);
  EXPECT_FALSE(r.best_solution);

  r.raw_output = "No Best Solution\n";
  classify_clean_exit(r);
  EXPECT_EQ(r.state.status, ExecutionStatus::NoBestSolutionFound);
  EXPECT_EQ(r.best_solution, "No Best Solution");

  r.raw_output = "";
  classify_clean_exit(r);
  EXPECT_EQ(r.state.status, ExecutionStatus::OutOfExpectation);
}

TEST(Sandbox, SentinelSuccess) {
  testing::TempDir dir;
  const auto r = execute(fixture_script("sentinel_success.py"), quick_config(dir));
  EXPECT_EQ(r.state.render(), "Execution Successful and Best Solution Found");
  EXPECT_EQ(r.best_solution, "5050.0");
}

TEST(Sandbox, NoSolution) {
  testing::TempDir dir;
  const auto r = execute(fixture_script("no_solution.py"), quick_config(dir));
  EXPECT_EQ(r.state.render(), "Execution Successful but No Best Solution Found");
  EXPECT_EQ(r.best_solution, "No Best Solution");
}

TEST(Sandbox, OutOfExpectation) {
  testing::TempDir dir;
  const auto r = execute(fixture_script("out_of_expectation.py"), quick_config(dir));
  EXPECT_EQ(r.state.status, ExecutionStatus::OutOfExpectation);
}

TEST(Sandbox, TimeoutIsEnforced) {
  testing::TempDir dir;
  const auto t0 = Clock::now();
  const auto r = execute(fixture_script("timeout_loop.py"), quick_config(dir));
  const auto elapsed = Clock::now() - t0;
  EXPECT_EQ(r.state.render(), "Execution Failed: Timeout");
  EXPECT_FALSE(r.best_solution);
  EXPECT_GE(elapsed, std::chrono::milliseconds(1900));
  EXPECT_LT(elapsed, std::chrono::seconds(4));
}

TEST(Sandbox, TimeoutKillsTheWholeProcessGroup) {
  testing::TempDir dir;
  const auto t0 = Clock::now();
  const auto r = execute(fixture_script("noisy_child.py"), quick_config(dir));
  EXPECT_EQ(r.state.status, ExecutionStatus::Timeout);
  // A surviving grandchild would hold the pipes open for a minute.
  EXPECT_LT(Clock::now() - t0, std::chrono::seconds(4));
}

TEST(Sandbox, SyntaxErrorCarriesStdoutAndStderr) {
  testing::TempDir dir;
  const auto r = execute(fixture_script("syntax_error.py"), quick_config(dir));
  ASSERT_EQ(r.state.status, ExecutionStatus::Failed);
  EXPECT_TRUE(r.state.render().starts_with("Execution Failed: \n"));
  EXPECT_NE(r.state.message.find("SyntaxError"), std::string::npos);
  EXPECT_NE(r.state.message.find("script.py"), std::string::npos);
  EXPECT_EQ(r.state.message.find("/tmp"), std::string::npos);
}

TEST(Sandbox, AttributeError) {
  testing::TempDir dir;
  const auto r = execute(fixture_script("attribute_error.py"), quick_config(dir));
  ASSERT_EQ(r.state.status, ExecutionStatus::Failed);
  EXPECT_NE(r.state.message.find("Invalid attribute name 'update'"),
            std::string::npos);
}

TEST(Sandbox, ScratchFilesAreRemoved) {
  testing::TempDir dir;
  const auto cfg = quick_config(dir);
  execute(fixture_script("sentinel_success.py"), cfg);
  execute(fixture_script("syntax_error.py"), cfg);
  ASSERT_TRUE(std::filesystem::exists(cfg.workdir));
  EXPECT_TRUE(std::filesystem::is_empty(cfg.workdir));
}

TEST(Sandbox, MinimalEnvironmentAndModulePath) {
  testing::TempDir dir;
  std::filesystem::create_directories(dir / "mods");
  write_text_file(dir / "mods" / "helper_mod.py", "VALUE = 41\n");
  auto cfg = quick_config(dir);
  cfg.module_search_path.push_back(dir / "mods");
  ::setenv("ORBENCH_TEST_SECRET", "leak", 1);
  const auto r = execute(
      "import os, helper_mod\n"
      "print('secret' if 'ORBENCH_TEST_SECRET' in os.environ else 'clean')\n"
      "print('Just print the best solution:', helper_mod.VALUE + 1)\n",
      cfg);
  ::unsetenv("ORBENCH_TEST_SECRET");
  EXPECT_EQ(r.best_solution, "42");
  EXPECT_NE(r.raw_output.find("clean"), std::string::npos);
}

TEST(Sandbox, BadInterpreterIsSetupError) {
  testing::TempDir dir;
  auto cfg = quick_config(dir);
  cfg.interpreter = "definitely-not-a-python";
  EXPECT_THROW(resolve_interpreter(cfg.interpreter), SandboxSetupError);
  EXPECT_THROW(execute("print(1)", cfg), SandboxSetupError);
}

TEST(Batch, OrderNoCodeAndSinkThread) {
  testing::TempDir dir;
  std::vector<BatchItem> items = {
      {"a", fixture_script("sentinel_success.py")},
      {"b", std::nullopt},
      {"c", fixture_script("no_solution.py")},
      {"d", fixture_script("syntax_error.py")}};
  std::vector<std::size_t> order;
  const auto caller = std::this_thread::get_id();
  bool same_thread = true;
  run_batch(items, quick_config(dir), 3,
            [&](std::size_t i, const ExecutionRecord&) {
              order.push_back(i);
              same_thread &= std::this_thread::get_id() == caller;
            });
  EXPECT_TRUE(same_thread);
  ASSERT_EQ(order.size(), 4u);
  EXPECT_EQ(order.front(), 1u);  // no-code rows are reported first

  const auto recs = run_batch(items, quick_config(dir), 2);
  EXPECT_EQ(recs[0].state.status, ExecutionStatus::BestSolutionFound);
  EXPECT_EQ(recs[1].state.render(), "Execution Failed: No code");
  EXPECT_EQ(recs[2].state.status, ExecutionStatus::NoBestSolutionFound);
  EXPECT_EQ(recs[3].state.status, ExecutionStatus::Failed);
}

TEST(Batch, ExecutionFieldsShape) {
  ExecutionRecord r;
  r.state = ExecutionState::of(ExecutionStatus::NoCode);
  auto j = execution_fields(r);
  EXPECT_EQ(j.dump(),
            R"({"execution_result":"Execution Failed: No code","execution_best_solution":null,"execution_state":"Execution Failed: No code"})");
  r.state = ExecutionState::of(ExecutionStatus::BestSolutionFound);
  r.raw_output = "out";
  r.best_solution = "1";
  r.duration_seconds = 0.5;
  j = execution_fields(r, false, true);
  EXPECT_EQ(j["execution_duration_seconds"], 0.5);
  EXPECT_EQ(j["execution_result"], "out");
}

}  // namespace
}  // namespace orbench
