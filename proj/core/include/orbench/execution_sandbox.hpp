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
#ifndef ORBENCH_EXECUTION_SANDBOX_HPP_
#define ORBENCH_EXECUTION_SANDBOX_HPP_

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "orbench/errors.hpp"

namespace orbench {

inline constexpr std::string_view kSolutionMarker =
    "Just print the best solution:";
inline constexpr std::string_view kSentinelFooter =
    "\nif model.status == COPT.OPTIMAL:\n"
    "    print(f\"Just print the best solution: {model.objval}\")\n"
    "else:\n"
    "    print(\"No Best Solution\")";

enum class ExecutionStatus {
  BestSolutionFound,
  NoBestSolutionFound,
  OutOfExpectation,
  Timeout,
  Failed,  // non-zero exit; message carries stdout + "\n" + stderr
  NoCode,
};

struct ExecutionState {
  ExecutionStatus status = ExecutionStatus::NoCode;
  std::string message;  // Failed only

  static ExecutionState of(ExecutionStatus s) { return {s, {}}; }
  static ExecutionState failed(std::string message) {
    return {ExecutionStatus::Failed, std::move(message)};
  }

  bool succeeded() const;
  // Verbatim state string. legacy_spelling reproduces the historical
  // "Suceessful" misspelling of the out-of-expectation state.
  std::string render(bool legacy_spelling = false) const;
  // Accepts either spelling; nullopt for strings outside the closed set.
  static std::optional<ExecutionState> parse(std::string_view s);

  friend bool operator==(const ExecutionState&,
                         const ExecutionState&) = default;
};

struct ExecutionRecord {
  std::string script;
  ExecutionState state;
  std::string raw_output;    // captured stdout
  std::string error_output;  // captured stderr
  std::optional<std::string> best_solution;
  double duration_seconds = 0.0;
};

// execution_result / execution_best_solution / execution_state, plus
// execution_duration_seconds when include_timing is set.
nlohmann::ordered_json execution_fields(const ExecutionRecord& r,
                                        bool legacy_spelling = false,
                                        bool include_timing = false);

// Text between the first "```python" and the next "```" (or the end of the
// content when unterminated), with leading blank lines and trailing
// whitespace removed. nullopt when there is no opener or the block is blank.
std::optional<std::string> extract_code(std::string_view content);

std::string append_sentinel(std::string_view script);

// extract_code followed by append_sentinel.
std::optional<std::string> prepare_script(std::string_view content);

// Interprets captured stdout of a cleanly exited run.
void classify_clean_exit(ExecutionRecord& r);

class SandboxSetupError : public Error {
 public:
  using Error::Error;
};

struct SandboxConfig {
  std::string interpreter = "python3";
  std::chrono::milliseconds timeout{600'000};
  std::filesystem::path workdir = "eval_execute";
  // Joined into PYTHONPATH for the child.
  std::vector<std::filesystem::path> module_search_path;
  // Per-stream capture limit; excess output is dropped.
  std::size_t max_output_bytes = 8u << 20;
};

// Resolves a bare interpreter name against PATH. Throws SandboxSetupError.
std::filesystem::path resolve_interpreter(const std::string& interpreter);

// Runs one script in a child process. The script goes to a fresh temp file
// under workdir and the child runs in an empty scratch directory; both are
// removed before returning. Occurrences of the temp path in captured output
// are replaced by "script.py".
ExecutionRecord execute(const std::string& script, const SandboxConfig& config);

struct BatchItem {
  std::string id;
  std::optional<std::string> script;  // nullopt: no code was extracted
};

using BatchSink =
    std::function<void(std::size_t index, const ExecutionRecord& record)>;

// NoCode items are delivered first, then executed items as they complete,
// with at most max_workers children alive. The sink is only called from the
// calling thread. A setup failure becomes a Failed record, never an abort.
void run_batch(const std::vector<BatchItem>& items,
               const SandboxConfig& config, std::size_t max_workers,
               const BatchSink& sink);

// Convenience wrapper returning records in input order.
std::vector<ExecutionRecord> run_batch(const std::vector<BatchItem>& items,
                                       const SandboxConfig& config,
                                       std::size_t max_workers);

}  // namespace orbench

#endif  // ORBENCH_EXECUTION_SANDBOX_HPP_
