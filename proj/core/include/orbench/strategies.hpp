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
#ifndef ORBENCH_STRATEGIES_HPP_
#define ORBENCH_STRATEGIES_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "orbench/benchmark_store.hpp"
#include "orbench/execution_sandbox.hpp"
#include "orbench/grader.hpp"
#include "orbench/llm_gateway.hpp"
#include "orbench/prompt_engine.hpp"
#include "orbench/taxonomy.hpp"
#include "orbench/tool_index.hpp"

namespace orbench {

enum class Strategy { Baseline, Judge, JudgePlusFSL, ToolCalling, MultiAgent };

// baseline, judge, judge_fsl, tool_calling, multi_agent
std::string_view to_string(Strategy s);
std::optional<Strategy> parse_strategy(std::string_view s);

enum class FslBase { OnBaseline, OnJudge };

// Generation-record tags for each pipeline stage.
namespace stage {
inline constexpr std::string_view kBaseline = "baseline";
inline constexpr std::string_view kPrior = "judge_prior";
inline constexpr std::string_view kJudge = "judge";
inline constexpr std::string_view kFewShot = "few_shot";
inline constexpr std::string_view kMathematician = "mathematician";
inline constexpr std::string_view kCoder = "coder";
inline constexpr std::string_view kToolCalling = "tool_calling";
}  // namespace stage

// Shared, read-only collaborators and knobs for every pipeline.
struct PipelineContext {
  const PromptEngine* prompts = nullptr;
  const LlmGateway* gateway = nullptr;
  const SignatureIndex* index = nullptr;  // tool calling only
  std::vector<Exemplar> exemplars;
  SandboxConfig sandbox;
  CompareOptions compare;
  int judge_rounds = 1;
  FslBase fsl_base = FslBase::OnJudge;
  // Forward the mathematician's reasoning channel to the coder as well.
  bool pass_reasoning = false;
  int max_tool_calls = 8;
  LookupOptions lookup;
  // Prior answers for the judge keyed by instance id; the instance's
  // reference solution is used when absent.
  std::map<std::string, std::string> judge_priors;
  bool legacy_spelling = false;
  bool include_timing = false;

  // Throws ConfigError when a collaborator needed by s is missing.
  void validate_for(Strategy s) const;
};

// Model output for one instance, before execution.
struct GenerationOutcome {
  std::vector<GenerationRecord> generations;
  std::string final_content;
  bool empty_math_model = false;
};

struct PipelineRecord {
  std::string id;
  Benchmark benchmark = Benchmark::NL4OPT;
  Strategy strategy = Strategy::Baseline;
  std::size_t repetition = 0;
  std::vector<GenerationRecord> generations;
  std::string final_content;
  bool empty_math_model = false;
  ExecutionRecord execution;
  GradeRecord grade;
  TaxonomyLabel label = TaxonomyLabel::LogicalError;

  // The instance's own fields followed by pipeline output: prompt,
  // q2mc_en_prompt/judge when a judge ran, reasoning_content,
  // generated_coptpy_code, to_run_script, the execution triplet, grading,
  // label and the full generation list.
  nlohmann::ordered_json to_json(const BenchmarkInstance& instance,
                                 const FieldNames& fields,
                                 const PipelineContext& ctx) const;
};

// Request that converts gateway retry exhaustion into a failed record.
// ReplayMissError propagates.
GenerationRecord safe_complete(const LlmGateway& gateway,
                               const std::string& prompt,
                               const std::string& system_text,
                               std::string_view stage);

GenerationOutcome generate_baseline(const BenchmarkInstance& inst,
                                    const PipelineContext& ctx);
// prior overrides judge_priors and the reference solution.
GenerationOutcome generate_judge(const BenchmarkInstance& inst,
                                 const PipelineContext& ctx,
                                 const std::optional<std::string>& prior = {});
GenerationOutcome generate_fsl(const BenchmarkInstance& inst,
                               const PipelineContext& ctx, FslBase base);
GenerationOutcome generate_multi_agent(const BenchmarkInstance& inst,
                                       const PipelineContext& ctx);
GenerationOutcome generate_tool_calling(const BenchmarkInstance& inst,
                                        const PipelineContext& ctx);
GenerationOutcome generate(Strategy s, const BenchmarkInstance& inst,
                           const PipelineContext& ctx);

// Grades and labels an executed outcome.
PipelineRecord finalize(const BenchmarkInstance& inst, Strategy s,
                        GenerationOutcome outcome, ExecutionRecord execution,
                        const PipelineContext& ctx);

// Full single-instance pipelines: generate, execute, grade, classify.
PipelineRecord run_baseline(const BenchmarkInstance& inst,
                            const PipelineContext& ctx);
PipelineRecord run_judge(const BenchmarkInstance& inst,
                         const PipelineContext& ctx,
                         const std::optional<std::string>& prior = {});
PipelineRecord run_fsl(const BenchmarkInstance& inst,
                       const PipelineContext& ctx, FslBase base);
PipelineRecord run_multi_agent(const BenchmarkInstance& inst,
                               const PipelineContext& ctx);
PipelineRecord run_tool_calling(const BenchmarkInstance& inst,
                                const PipelineContext& ctx);
PipelineRecord run_strategy(Strategy s, const BenchmarkInstance& inst,
                            const PipelineContext& ctx);

struct CampaignResult {
  // Repetition-major, subset order within a repetition.
  std::vector<PipelineRecord> records;
  std::vector<Metrics> per_repetition;
  double mean_pass_at_1 = 0.0;
  DistributionReport report;

  // {"pass@1": mean}
  Metrics summary_metrics() const;
  nlohmann::ordered_json summary_json(Strategy s) const;
};

// Samples plan.repetitions subsets, generates with up to max_workers
// concurrent requests, executes through run_batch and grades each subset.
CampaignResult run_campaign(std::span<const BenchmarkInstance> instances,
                            const SamplePlan& plan, Strategy strategy,
                            const PipelineContext& ctx,
                            std::size_t max_workers);

}  // namespace orbench

#endif  // ORBENCH_STRATEGIES_HPP_
