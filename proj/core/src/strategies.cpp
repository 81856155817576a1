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
#include "orbench/strategies.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "orbench/text_util.hpp"

namespace orbench {
namespace {

// Runs fn(i) for i in [0, n) on up to workers threads. The first exception
// stops new work and is rethrown after all threads join.
template <typename Fn>
void parallel_for(std::size_t n, std::size_t workers, Fn fn) {
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex mu;
  auto loop = [&] {
    while (true) {
      {
        std::lock_guard lock(mu);
        if (failure) return;
      }
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(mu);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };
  const std::size_t count = std::max<std::size_t>(1, std::min(workers, n));
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 1; t < count; ++t) pool.emplace_back(loop);
    loop();
  }
  if (failure) std::rethrow_exception(failure);
}

GenerationRecord prior_record(std::string content) {
  GenerationRecord r;
  r.content = std::move(content);
  r.model_id = "reference";
  r.strategy = std::string(stage::kPrior);
  r.attempt_count = 0;
  return r;
}

// Judge rounds over a prior; appends the records and returns the last
// answer.
std::string judge_rounds(const BenchmarkInstance& inst,
                         const PipelineContext& ctx, std::string latest,
                         std::vector<GenerationRecord>& out) {
  const auto& sys = ctx.prompts->system_text(TemplateName::Judge);
  for (int r = 0; r < ctx.judge_rounds; ++r) {
    GenerationRecord rec = safe_complete(
        *ctx.gateway, ctx.prompts->render_judge(inst.question, latest), sys,
        stage::kJudge);
    latest = rec.content;
    const bool failed = rec.error.has_value();
    out.push_back(std::move(rec));
    if (failed) break;
  }
  return latest;
}

std::optional<std::string> prior_for(const BenchmarkInstance& inst,
                                     const PipelineContext& ctx) {
  if (auto it = ctx.judge_priors.find(inst.id); it != ctx.judge_priors.end()) {
    return it->second;
  }
  return inst.reference_solution;
}

ExecutionRecord execute_content(const std::string& content,
                                const PipelineContext& ctx) {
  auto script = prepare_script(content);
  ExecutionRecord rec;
  if (!script) {
    rec.state = ExecutionState::of(ExecutionStatus::NoCode);
    rec.raw_output = ExecutionState::of(ExecutionStatus::NoCode).render();
    return rec;
  }
  try {
    return execute(*script, ctx.sandbox);
  } catch (const SandboxSetupError& e) {
    rec.script = *script;
    rec.state = ExecutionState::failed(std::string("sandbox setup: ") + e.what());
    return rec;
  }
}

}  // namespace

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::Baseline:
      return "baseline";
    case Strategy::Judge:
      return "judge";
    case Strategy::JudgePlusFSL:
      return "judge_fsl";
    case Strategy::ToolCalling:
      return "tool_calling";
    case Strategy::MultiAgent:
      return "multi_agent";
  }
  return "?";
}

std::optional<Strategy> parse_strategy(std::string_view s) {
  for (auto v : {Strategy::Baseline, Strategy::Judge, Strategy::JudgePlusFSL,
                 Strategy::ToolCalling, Strategy::MultiAgent}) {
    if (s == to_string(v)) return v;
  }
  if (s == "fsl" || s == "judge+fsl") return Strategy::JudgePlusFSL;
  if (s == "multi-agent" || s == "multiagent") return Strategy::MultiAgent;
  if (s == "tool-calling" || s == "tools") return Strategy::ToolCalling;
  return std::nullopt;
}

void PipelineContext::validate_for(Strategy s) const {
  if (prompts == nullptr) throw ConfigError("prompt engine not configured");
  if (gateway == nullptr) throw ConfigError("gateway not configured");
  if (s == Strategy::ToolCalling && index == nullptr) {
    throw ConfigError("tool calling needs a signature index");
  }
  if (judge_rounds < 0) throw ConfigError("judge rounds must be >= 0");
  if (max_tool_calls < 0) throw ConfigError("max tool calls must be >= 0");
  compare.validate();
}

GenerationRecord safe_complete(const LlmGateway& gateway,
                               const std::string& prompt,
                               const std::string& system_text,
                               std::string_view stage) {
  try {
    return gateway.complete(prompt, system_text, std::string(stage));
  } catch (const RetriesExhaustedError& e) {
    GenerationRecord r;
    r.prompt = prompt;
    r.system_text = system_text;
    r.model_id = gateway.config().model_id;
    r.strategy = std::string(stage);
    r.attempt_count = e.attempts();
    r.error = e.what();
    return r;
  }
}

GenerationOutcome generate_baseline(const BenchmarkInstance& inst,
                                    const PipelineContext& ctx) {
  GenerationOutcome out;
  out.generations.push_back(safe_complete(
      *ctx.gateway, ctx.prompts->render_baseline(inst.question),
      ctx.prompts->system_text(TemplateName::Baseline), stage::kBaseline));
  out.final_content = out.generations.back().content;
  return out;
}

GenerationOutcome generate_judge(const BenchmarkInstance& inst,
                                 const PipelineContext& ctx,
                                 const std::optional<std::string>& prior) {
  GenerationOutcome out;
  std::optional<std::string> p = prior ? prior : prior_for(inst, ctx);
  if (p) {
    out.generations.push_back(prior_record(*p));
  } else {
    // No stored answer: a fresh baseline generation is judged instead.
    GenerationRecord base = safe_complete(
        *ctx.gateway, ctx.prompts->render_baseline(inst.question),
        ctx.prompts->system_text(TemplateName::Baseline), stage::kPrior);
    p = base.content;
    out.generations.push_back(std::move(base));
  }
  out.final_content = judge_rounds(inst, ctx, *p, out.generations);
  return out;
}

GenerationOutcome generate_fsl(const BenchmarkInstance& inst,
                               const PipelineContext& ctx, FslBase base) {
  const auto& sys = ctx.prompts->system_text(TemplateName::FewShot);
  if (base == FslBase::OnBaseline) {
    GenerationOutcome out;
    out.generations.push_back(safe_complete(
        *ctx.gateway, ctx.prompts->render_fsl(ctx.exemplars, inst.question),
        sys, stage::kFewShot));
    out.final_content = out.generations.back().content;
    return out;
  }
  GenerationOutcome out = generate_judge(inst, ctx);
  out.generations.push_back(safe_complete(
      *ctx.gateway,
      ctx.prompts->render_fsl_judge(ctx.exemplars, inst.question,
                                    out.final_content),
      sys, stage::kFewShot));
  out.final_content = out.generations.back().content;
  return out;
}

GenerationOutcome generate_multi_agent(const BenchmarkInstance& inst,
                                       const PipelineContext& ctx) {
  GenerationOutcome out;
  GenerationRecord math = safe_complete(
      *ctx.gateway, ctx.prompts->render_mathematician(inst.question),
      ctx.prompts->system_text(TemplateName::Mathematician),
      stage::kMathematician);
  std::string payload = math.content;
  out.empty_math_model = trim(payload).empty();
  if (ctx.pass_reasoning && math.reasoning && !math.reasoning->empty()) {
    payload = *math.reasoning + "\n\n" + payload;
  }
  out.generations.push_back(std::move(math));
  out.generations.push_back(safe_complete(
      *ctx.gateway, ctx.prompts->render_coder(payload),
      ctx.prompts->system_text(TemplateName::Coder), stage::kCoder));
  out.final_content = out.generations.back().content;
  return out;
}

GenerationOutcome generate_tool_calling(const BenchmarkInstance& inst,
                                        const PipelineContext& ctx) {
  if (ctx.index == nullptr) {
    throw ConfigError("tool calling needs a signature index");
  }
  const std::string prompt = ctx.prompts->render_tool_calling(inst.question) +
                             "\n\n" + std::string(kToolProtocolHint);
  const std::string& sys = ctx.prompts->system_text(TemplateName::ToolCalling);
  const SignatureIndex& index = *ctx.index;
  const LookupOptions lookup = ctx.lookup;
  GenerationOutcome out;
  try {
    out.generations.push_back(ctx.gateway->complete_with_tools(
        prompt, sys,
        [&index, lookup](const ToolQuery& q) {
          return index.lookup(q.name, lookup);
        },
        ctx.max_tool_calls, std::string(stage::kToolCalling)));
  } catch (const RetriesExhaustedError& e) {
    GenerationRecord r;
    r.prompt = prompt;
    r.system_text = sys;
    r.model_id = ctx.gateway->config().model_id;
    r.strategy = std::string(stage::kToolCalling);
    r.attempt_count = e.attempts();
    r.error = e.what();
    out.generations.push_back(std::move(r));
  }
  out.final_content = out.generations.back().content;
  return out;
}

GenerationOutcome generate(Strategy s, const BenchmarkInstance& inst,
                           const PipelineContext& ctx) {
  switch (s) {
    case Strategy::Baseline:
      return generate_baseline(inst, ctx);
    case Strategy::Judge:
      return generate_judge(inst, ctx);
    case Strategy::JudgePlusFSL:
      return generate_fsl(inst, ctx, ctx.fsl_base);
    case Strategy::ToolCalling:
      return generate_tool_calling(inst, ctx);
    case Strategy::MultiAgent:
      return generate_multi_agent(inst, ctx);
  }
  throw ConfigError("unknown strategy");
}

PipelineRecord finalize(const BenchmarkInstance& inst, Strategy s,
                        GenerationOutcome outcome, ExecutionRecord execution,
                        const PipelineContext& ctx) {
  PipelineRecord rec;
  rec.id = inst.id;
  rec.benchmark = inst.benchmark;
  rec.strategy = s;
  rec.generations = std::move(outcome.generations);
  rec.final_content = std::move(outcome.final_content);
  rec.empty_math_model = outcome.empty_math_model;
  rec.execution = std::move(execution);
  rec.grade = grade(inst.id, {rec.execution.best_solution},
                    inst.ground_truth.token(), ctx.compare);
  rec.label = classify(rec.execution, rec.grade.matched);
  return rec;
}

PipelineRecord run_strategy(Strategy s, const BenchmarkInstance& inst,
                            const PipelineContext& ctx) {
  GenerationOutcome out = generate(s, inst, ctx);
  ExecutionRecord exec = execute_content(out.final_content, ctx);
  return finalize(inst, s, std::move(out), std::move(exec), ctx);
}

PipelineRecord run_baseline(const BenchmarkInstance& inst,
                            const PipelineContext& ctx) {
  return run_strategy(Strategy::Baseline, inst, ctx);
}

PipelineRecord run_judge(const BenchmarkInstance& inst,
                         const PipelineContext& ctx,
                         const std::optional<std::string>& prior) {
  GenerationOutcome out = generate_judge(inst, ctx, prior);
  ExecutionRecord exec = execute_content(out.final_content, ctx);
  return finalize(inst, Strategy::Judge, std::move(out), std::move(exec), ctx);
}

PipelineRecord run_fsl(const BenchmarkInstance& inst,
                       const PipelineContext& ctx, FslBase base) {
  GenerationOutcome out = generate_fsl(inst, ctx, base);
  ExecutionRecord exec = execute_content(out.final_content, ctx);
  return finalize(inst, Strategy::JudgePlusFSL, std::move(out),
                  std::move(exec), ctx);
}

PipelineRecord run_multi_agent(const BenchmarkInstance& inst,
                               const PipelineContext& ctx) {
  return run_strategy(Strategy::MultiAgent, inst, ctx);
}

PipelineRecord run_tool_calling(const BenchmarkInstance& inst,
                                const PipelineContext& ctx) {
  return run_strategy(Strategy::ToolCalling, inst, ctx);
}

nlohmann::ordered_json PipelineRecord::to_json(
    const BenchmarkInstance& instance, const FieldNames& fields,
    const PipelineContext& ctx) const {
  nlohmann::ordered_json j = instance_to_json(instance, fields);
  j["id"] = id;
  j["benchmark"] = std::string(orbench::to_string(benchmark));
  j["strategy"] = std::string(orbench::to_string(strategy));
  j["repetition"] = repetition;
  if (!generations.empty()) {
    j["prompt"] = generations.back().prompt;
  }
  for (auto it = generations.rbegin(); it != generations.rend(); ++it) {
    if (it->strategy == stage::kJudge) {
      j["q2mc_en_prompt"] = it->prompt;
      j["judge"] = it->content;
      break;
    }
  }
  if (!generations.empty() && generations.back().reasoning) {
    j["reasoning_content"] = *generations.back().reasoning;
  } else {
    j["reasoning_content"] = nullptr;
  }
  j["generated_coptpy_code"] = final_content;
  if (execution.state.status != ExecutionStatus::NoCode) {
    j["to_run_script"] = execution.script;
  }
  const auto exec_fields =
      execution_fields(execution, ctx.legacy_spelling, ctx.include_timing);
  for (const auto& [k, v] : exec_fields.items()) j[k] = v;
  j["matched"] = grade.matched;
  j["taxonomy_label"] = std::string(orbench::to_string(label));
  if (strategy == Strategy::MultiAgent) j["empty_math_model"] = empty_math_model;
  nlohmann::ordered_json gens = nlohmann::ordered_json::array();
  for (const auto& g : generations) {
    auto gj = orbench::to_json(g);
    if (!ctx.include_timing) gj.erase("wall_time_ms");
    gens.push_back(std::move(gj));
  }
  j["generations"] = std::move(gens);
  return j;
}

Metrics CampaignResult::summary_metrics() const {
  Metrics m;
  m.k = 1;
  m.instances = records.size();
  m.pass_at_k = mean_pass_at_1;
  return m;
}

nlohmann::ordered_json CampaignResult::summary_json(Strategy s) const {
  nlohmann::ordered_json j;
  j["strategy"] = std::string(to_string(s));
  j["repetitions"] = per_repetition.size();
  j["mean_pass@1"] = mean_pass_at_1;
  nlohmann::ordered_json reps = nlohmann::ordered_json::array();
  for (const auto& m : per_repetition) {
    nlohmann::ordered_json r = m.to_json();
    r["instances"] = m.instances;
    nlohmann::ordered_json states;
    for (const auto& [k, v] : m.state_counts) states[k] = v;
    r["execution_states"] = std::move(states);
    reps.push_back(std::move(r));
  }
  j["per_repetition"] = std::move(reps);
  j["labels"] = report.to_json();
  return j;
}

CampaignResult run_campaign(std::span<const BenchmarkInstance> instances,
                            const SamplePlan& plan, Strategy strategy,
                            const PipelineContext& ctx,
                            std::size_t max_workers) {
  ctx.validate_for(strategy);
  plan.validate();
  if (max_workers == 0) throw ConfigError("max_workers must be >= 1");
  const auto subsets = sample_subset_indices(instances.size(), plan);

  CampaignResult result;
  std::vector<LabeledOutcome> labels;
  for (std::size_t rep = 0; rep < subsets.size(); ++rep) {
    const auto& subset = subsets[rep];
    std::vector<GenerationOutcome> outcomes(subset.size());
    parallel_for(subset.size(), max_workers, [&](std::size_t i) {
      outcomes[i] = generate(strategy, instances[subset[i]], ctx);
    });

    std::vector<BatchItem> items;
    items.reserve(subset.size());
    for (std::size_t i = 0; i < subset.size(); ++i) {
      items.push_back({instances[subset[i]].id,
                       prepare_script(outcomes[i].final_content)});
    }
    std::vector<ExecutionRecord> executions =
        run_batch(items, ctx.sandbox, max_workers);

    std::vector<GradeRecord> grades;
    Metrics metrics;
    for (std::size_t i = 0; i < subset.size(); ++i) {
      const BenchmarkInstance& inst = instances[subset[i]];
      PipelineRecord rec = finalize(inst, strategy, std::move(outcomes[i]),
                                    std::move(executions[i]), ctx);
      rec.repetition = rep;
      grades.push_back(rec.grade);
      ++metrics.state_counts[rec.execution.state.status ==
                                     ExecutionStatus::Failed
                                 ? std::string("Execution Failed")
                                 : rec.execution.state.render(
                                       ctx.legacy_spelling)];
      labels.push_back(
          {rec.id, std::string(to_string(rec.benchmark)), rec.label, {}, {}});
      result.records.push_back(std::move(rec));
    }
    const Metrics graded = compute_metrics(grades, false);
    metrics.k = graded.k;
    metrics.instances = graded.instances;
    metrics.pass_at_k = graded.pass_at_k;
    result.per_repetition.push_back(std::move(metrics));
  }
  double sum = 0.0;
  for (const auto& m : result.per_repetition) sum += m.pass_at_k;
  result.mean_pass_at_1 =
      sum / static_cast<double>(result.per_repetition.size());
  result.report = report_distribution(labels, true);
  return result;
}

}  // namespace orbench
