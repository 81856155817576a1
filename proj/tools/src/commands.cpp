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
#include "orbench/cli/commands.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <thread>
#include <atomic>

#include "orbench/benchmark_store.hpp"
#include "orbench/execution_sandbox.hpp"
#include "orbench/grader.hpp"
#include "orbench/oracle_solver.hpp"
#include "orbench/prompt_engine.hpp"
#include "orbench/strategies.hpp"
#include "orbench/taxonomy.hpp"
#include "orbench/text_util.hpp"
#include "orbench/tool_index.hpp"

#ifndef ORBENCH_DEFAULT_DATA_DIR
#define ORBENCH_DEFAULT_DATA_DIR "data"
#endif

namespace orbench::cli {
namespace fs = std::filesystem;

std::string default_data_dir() {
  if (const char* d = std::getenv("ORBENCH_DATA_DIR"); d && *d) return d;
  return ORBENCH_DEFAULT_DATA_DIR;
}

namespace {

struct Streams {
  std::ostream& out;
  std::ostream& err;
};

// ---------------------------------------------------------------------------
// Option groups shared by several subcommands.

struct FieldOptions {
  std::string question = "en_question";
  std::string answer = "en_answer";
  std::string reference = "en_math_model_coptpy_code";

  FieldNames names() const { return {question, answer, reference}; }
};

struct GatewayOptions {
  std::string endpoint = GatewayConfig{}.base_url;
  std::string api_key_env = "DEEPSEEK_API_KEY";
  std::string model = GatewayConfig{}.model_id;
  int max_retries = 8;
  int retry_delay_ms = 10000;
  int request_timeout = 600;
  std::string cassette;
  std::string cassette_mode;  // default: replay with a cassette
};

struct PipelineOptions {
  std::string benchmark = "NL4OPT";
  std::string strategy = "baseline";
  std::string fsl_base = "on_judge";
  int judge_rounds = 1;
  std::string exemplars;
  std::vector<std::string> stubs;
  std::string sidecar_docs;
  std::string templates;
  bool pass_reasoning = false;
  int max_tool_calls = 8;
  std::size_t max_workers = 16;
};

struct SandboxOptions {
  int timeout = 600;
  std::string interpreter = "python3";
  std::string workdir = "eval_execute";
  std::vector<std::string> module_paths;
  bool legacy_spelling = false;
  bool timings = false;
};

struct GradeOptions {
  double tolerance = 0.05;
  bool strict = false;
  bool majority_voting = false;

  CompareOptions compare() const {
    CompareOptions c{tolerance, strict};
    c.validate();
    return c;
  }
};

void add_field_options(CLI::App* cmd, FieldOptions& o) {
  cmd->add_option("--question_field", o.question, "Question key")
      ->capture_default_str();
  cmd->add_option("--answer_field", o.answer, "Ground-truth key")
      ->capture_default_str();
  cmd->add_option("--reference_field", o.reference,
                  "Reference solution key")
      ->capture_default_str();
}

void add_gateway_options(CLI::App* cmd, GatewayOptions& o) {
  cmd->add_option("--endpoint", o.endpoint, "Chat-completions base URL")
      ->capture_default_str();
  cmd->add_option("--api_key_env", o.api_key_env,
                  "Environment variable holding the API key")
      ->capture_default_str();
  cmd->add_option("--model", o.model, "Model id")->capture_default_str();
  cmd->add_option("--max_retries", o.max_retries, "Retries per request")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--retry_delay_ms", o.retry_delay_ms,
                  "Pause between retries")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--request_timeout", o.request_timeout,
                  "Per-request timeout in seconds")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--cassette", o.cassette, "Cassette JSONL path");
  cmd->add_option("--cassette_mode", o.cassette_mode,
                  "record, replay or passthrough (replay when a cassette "
                  "is given)")
      ->check(CLI::IsMember({"record", "replay", "passthrough"}));
}

void add_pipeline_options(CLI::App* cmd, PipelineOptions& o) {
  cmd->add_option("--benchmark", o.benchmark,
                  "IndustryOR, EasyLP, ComplexOR or NL4OPT")
      ->capture_default_str();
  cmd->add_option("--strategy", o.strategy,
                  "baseline, judge, judge_fsl, tool_calling or multi_agent")
      ->capture_default_str();
  cmd->add_option("--fsl_base", o.fsl_base,
                  "Flow the few-shot prompt builds on: on_judge or "
                  "on_baseline")
      ->capture_default_str()
      ->check(CLI::IsMember({"on_judge", "on_baseline"}));
  cmd->add_option("--judge_rounds", o.judge_rounds, "Judge iterations")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--exemplars", o.exemplars,
                  "Exemplar pack JSONL (default: bundled diet example)");
  cmd->add_option("--stubs", o.stubs, "Interface stub files for tool lookup");
  cmd->add_option("--sidecar_docs", o.sidecar_docs,
                  "JSON object of extra docs keyed by qualified name");
  cmd->add_option("--templates", o.templates,
                  "Directory of <template>.txt overrides");
  cmd->add_flag("--pass_reasoning", o.pass_reasoning,
                "Forward the mathematician's reasoning to the coder");
  cmd->add_option("--max_tool_calls", o.max_tool_calls,
                  "Tool lookups allowed per instance")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--max_workers", o.max_workers, "Concurrent workers")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
}

void add_sandbox_options(CLI::App* cmd, SandboxOptions& o) {
  cmd->add_option("--timeout", o.timeout, "Per-script timeout in seconds")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--interpreter", o.interpreter, "Python interpreter")
      ->capture_default_str();
  cmd->add_option("--workdir", o.workdir, "Scratch directory for scripts")
      ->capture_default_str();
  cmd->add_option("--module_path", o.module_paths,
                  "Extra PYTHONPATH entry (repeatable)");
  cmd->add_flag("--legacy_spelling", o.legacy_spelling,
                "Emit the historical 'Suceessful' state spelling");
  cmd->add_flag("--timings", o.timings,
                "Include execution and request durations in records");
}

void add_grade_options(CLI::App* cmd, GradeOptions& o) {
  cmd->add_option("--numerical_err_tolerance", o.tolerance,
                  "Relative tolerance")
      ->capture_default_str();
  cmd->add_flag("--strict", o.strict, "Compare without integer rounding");
  cmd->add_flag("--majority_voting", o.majority_voting,
                "Also report majority-vote accuracy");
}

// ---------------------------------------------------------------------------
// Builders.

Benchmark benchmark_of(const std::string& name) {
  auto b = parse_benchmark(name);
  if (!b) throw ConfigError("unknown benchmark '" + name + "'");
  return *b;
}

Strategy strategy_of(const std::string& name) {
  auto s = parse_strategy(name);
  if (!s) throw ConfigError("unknown strategy '" + name + "'");
  return *s;
}

std::shared_ptr<LlmGateway> make_gateway(const GatewayOptions& o,
                                         const CliEnv& env) {
  GatewayConfig cfg;
  cfg.base_url = o.endpoint;
  cfg.model_id = o.model;
  cfg.max_retries = o.max_retries;
  cfg.retry_delay = std::chrono::milliseconds(o.retry_delay_ms);
  cfg.request_timeout = std::chrono::seconds(o.request_timeout);
  if (const char* key = std::getenv(o.api_key_env.c_str())) cfg.api_key = key;

  CassetteMode mode = CassetteMode::Passthrough;
  std::shared_ptr<Cassette> cassette;
  if (!o.cassette.empty()) {
    mode = o.cassette_mode.empty() ? CassetteMode::Replay
                                   : *parse_cassette_mode(o.cassette_mode);
    cassette = std::make_shared<Cassette>(o.cassette, mode);
  } else if (!o.cassette_mode.empty() && o.cassette_mode != "passthrough") {
    throw ConfigError("--cassette_mode " + o.cassette_mode +
                      " needs --cassette");
  }
  std::shared_ptr<Transport> transport;
  if (mode == CassetteMode::Replay) {
    transport = std::make_shared<PanickingTransport>();
  } else {
    transport = env.transport ? env.transport
                              : std::make_shared<HttpTransport>();
  }
  return std::make_shared<LlmGateway>(cfg, transport, cassette);
}

struct Pipeline {
  std::shared_ptr<LlmGateway> gateway;
  std::unique_ptr<PromptEngine> prompts;
  std::unique_ptr<SignatureIndex> index;
  PipelineContext ctx;
  Strategy strategy = Strategy::Baseline;
};

std::unique_ptr<Pipeline> make_pipeline(const PipelineOptions& p,
                                        const GatewayOptions& g,
                                        const SandboxOptions& s,
                                        const GradeOptions& gr,
                                        const CliEnv& env) {
  auto pl = std::make_unique<Pipeline>();
  pl->strategy = strategy_of(p.strategy);
  pl->gateway = make_gateway(g, env);
  pl->prompts = std::make_unique<PromptEngine>(
      p.templates.empty() ? PromptEngine() : PromptEngine::from_directory(p.templates));
  if (pl->strategy == Strategy::ToolCalling) {
    std::vector<fs::path> stubs(p.stubs.begin(), p.stubs.end());
    if (stubs.empty()) {
      stubs.push_back(fs::path(default_data_dir()) / "stubs" / "coptpy.pyi");
    }
    for (const auto& st : stubs) {
      if (!fs::exists(st)) {
        throw UpstreamFileError("stub file not found: " + st.string());
      }
    }
    std::optional<fs::path> sidecar;
    if (!p.sidecar_docs.empty()) sidecar = p.sidecar_docs;
    pl->index = std::make_unique<SignatureIndex>(
        SignatureIndex::build(stubs, sidecar));
  }
  auto& ctx = pl->ctx;
  ctx.prompts = pl->prompts.get();
  ctx.gateway = pl->gateway.get();
  ctx.index = pl->index.get();
  if (p.exemplars.empty()) {
    ctx.exemplars = {diet_exemplar()};
  } else {
    ctx.exemplars = load_exemplar_pack(p.exemplars);
  }
  ctx.judge_rounds = p.judge_rounds;
  ctx.fsl_base = p.fsl_base == "on_baseline" ? FslBase::OnBaseline
                                             : FslBase::OnJudge;
  ctx.pass_reasoning = p.pass_reasoning;
  ctx.max_tool_calls = p.max_tool_calls;
  ctx.sandbox.interpreter = s.interpreter;
  ctx.sandbox.timeout = std::chrono::seconds(s.timeout);
  ctx.sandbox.workdir = s.workdir;
  for (const auto& m : s.module_paths) ctx.sandbox.module_search_path.push_back(m);
  ctx.legacy_spelling = s.legacy_spelling;
  ctx.include_timing = s.timings;
  ctx.compare = gr.compare();
  ctx.validate_for(pl->strategy);
  return pl;
}

SandboxConfig sandbox_config(const SandboxOptions& s) {
  SandboxConfig cfg;
  cfg.interpreter = s.interpreter;
  cfg.timeout = std::chrono::seconds(s.timeout);
  cfg.workdir = s.workdir;
  for (const auto& m : s.module_paths) cfg.module_search_path.push_back(m);
  return cfg;
}

std::vector<nlohmann::ordered_json> read_rows(const std::string& path) {
  if (!fs::exists(path)) throw UpstreamFileError("input not found: " + path);
  return read_jsonl(path);
}

std::string text_of(const nlohmann::ordered_json& v) {
  return v.is_string() ? v.get<std::string>() : v.dump();
}

// ---------------------------------------------------------------------------
// generate

struct GenerateArgs {
  std::string input_file, output_file;
  bool verbose = false;
  FieldOptions fields;
  GatewayOptions gateway;
  PipelineOptions pipeline;
  SandboxOptions sandbox;
  GradeOptions grade;
};

nlohmann::ordered_json generation_row(const BenchmarkInstance& inst,
                                      const FieldNames& fields,
                                      const GenerationOutcome& out,
                                      Strategy s, bool timings) {
  nlohmann::ordered_json j = instance_to_json(inst, fields);
  j["id"] = inst.id;
  j["strategy"] = std::string(to_string(s));
  if (!out.generations.empty()) j["prompt"] = out.generations.back().prompt;
  for (auto it = out.generations.rbegin(); it != out.generations.rend(); ++it) {
    if (it->strategy == stage::kJudge) {
      j["q2mc_en_prompt"] = it->prompt;
      j["judge"] = it->content;
      break;
    }
  }
  const auto& last = out.generations.back();
  j["reasoning_content"] = last.reasoning ? nlohmann::ordered_json(*last.reasoning)
                                          : nlohmann::ordered_json(nullptr);
  j["generated_coptpy_code"] = out.final_content;
  if (s == Strategy::MultiAgent) j["empty_math_model"] = out.empty_math_model;
  nlohmann::ordered_json gens = nlohmann::ordered_json::array();
  for (const auto& g : out.generations) {
    auto gj = to_json(g);
    if (!timings) gj.erase("wall_time_ms");
    gens.push_back(std::move(gj));
  }
  j["generations"] = std::move(gens);
  return j;
}

int cmd_generate(const GenerateArgs& a, const CliEnv& env, Streams io) {
  auto pl = make_pipeline(a.pipeline, a.gateway, a.sandbox, a.grade, env);
  if (!fs::exists(a.input_file)) {
    throw UpstreamFileError("input not found: " + a.input_file);
  }
  const auto instances = load_benchmark(a.input_file,
                                        benchmark_of(a.pipeline.benchmark),
                                        a.fields.names());
  std::vector<GenerationOutcome> outcomes(instances.size());
  std::vector<std::exception_ptr> errors(instances.size());
  {
    std::atomic<std::size_t> next{0};
    auto work = [&] {
      for (std::size_t i; (i = next.fetch_add(1)) < instances.size();) {
        try {
          outcomes[i] = generate(pl->strategy, instances[i], pl->ctx);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    };
    std::vector<std::jthread> pool;
    const std::size_t n =
        std::min(a.pipeline.max_workers, std::max<std::size_t>(instances.size(), 1));
    for (std::size_t t = 0; t < n; ++t) pool.emplace_back(work);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::vector<nlohmann::ordered_json> rows;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    rows.push_back(generation_row(instances[i], a.fields.names(), outcomes[i],
                                  pl->strategy, a.sandbox.timings));
    if (a.verbose) {
      io.err << "[" << instances[i].id << "] "
             << (outcomes[i].generations.back().error
                     ? "request failed: " + *outcomes[i].generations.back().error
                     : std::string("ok"))
             << "\n";
    }
  }
  write_jsonl(a.output_file, rows);
  io.out << "generated " << rows.size() << " records -> " << a.output_file
         << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// execute

struct ExecuteArgs {
  std::string input_file, output_file;
  std::string code_field = "auto";
  bool verbose = false;
  std::size_t max_workers = 16;
  std::string question_field, answer_field;
  SandboxOptions sandbox;
  GradeOptions grade;
};

std::optional<std::string> resolve_code_field(const nlohmann::ordered_json& row,
                                              const std::string& requested) {
  if (requested != "auto") {
    if (row.contains(requested)) return requested;
    return std::nullopt;
  }
  if (row.contains("generated_coptpy_code")) return "generated_coptpy_code";
  for (const auto& [k, _] : row.items()) {
    if (k.find("coptpy_code") != std::string::npos) return k;
  }
  return std::nullopt;
}

Metrics grade_and_write(const std::vector<nlohmann::ordered_json>& rows,
                        const std::string& question_field,
                        const std::string& answer_field,
                        const GradeOptions& g, const fs::path& metrics_path,
                        bool verbose, Streams io) {
  GradeFileOptions opts;
  opts.question_field = question_field;
  opts.answer_field = answer_field;
  opts.compare = g.compare();
  const auto grades = grade_rows(rows, opts);
  if (verbose) {
    for (const auto& gr : grades) {
      io.err << "[" << gr.id << "] gt=" << gr.ground_truth << " preds=[";
      for (std::size_t i = 0; i < gr.predictions.size(); ++i) {
        io.err << (i ? ", " : "") << gr.predictions[i].value_or("None");
      }
      io.err << "] match=" << (gr.matched ? "true" : "false") << "\n";
    }
  }
  Metrics m = compute_metrics(grades, g.majority_voting);
  write_metrics_file(metrics_path, m);
  io.out << m.to_json().dump(4) << "\n";
  return m;
}

int cmd_execute(const ExecuteArgs& a, Streams io) {
  a.grade.compare();
  const auto rows = read_rows(a.input_file);
  std::vector<BatchItem> items;
  items.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    auto field = resolve_code_field(rows[i], a.code_field);
    if (!field) {
      throw MissingFieldError(i + 1, a.code_field == "auto"
                                         ? std::string("*coptpy_code")
                                         : a.code_field);
    }
    const auto& v = rows[i][*field];
    std::optional<std::string> script;
    if (v.is_string()) script = prepare_script(v.get<std::string>());
    items.push_back({text_of(rows[i].value("id", nlohmann::ordered_json(i + 1))),
                     std::move(script)});
  }
  const SandboxConfig cfg = sandbox_config(a.sandbox);
  resolve_interpreter(cfg.interpreter);  // fail fast on a bad interpreter
  const auto records = run_batch(items, cfg, a.max_workers);

  // Early failures first, then executed rows, each in input order.
  std::vector<nlohmann::ordered_json> out;
  out.reserve(rows.size());
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const bool no_code = !items[i].script.has_value();
      if ((pass == 0) != no_code) continue;
      nlohmann::ordered_json row = rows[i];
      if (!no_code) row["to_run_script"] = *items[i].script;
      const auto fields = execution_fields(records[i], a.sandbox.legacy_spelling,
                                           a.sandbox.timings);
      for (const auto& [k, v] : fields.items()) row[k] = v;
      if (a.verbose) {
        io.err << "[" << items[i].id << "] "
               << records[i].state.render(a.sandbox.legacy_spelling).substr(0, 200)
               << "\n";
      }
      out.push_back(std::move(row));
    }
  }
  write_jsonl(a.output_file, out);
  io.out << "Execution completed.\n";
  if (!a.question_field.empty() && !a.answer_field.empty()) {
    grade_and_write(out, a.question_field, a.answer_field, a.grade,
                    metrics_path_for(a.output_file), a.verbose, io);
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// grade

struct GradeArgs {
  std::string input_file, output_file;
  bool verbose = false;
  std::string question_field = "en_question";
  std::string answer_field = "en_answer";
  GradeOptions grade;
};

int cmd_grade(const GradeArgs& a, Streams io) {
  const auto rows = read_rows(a.input_file);
  const fs::path target = a.output_file.empty() ? fs::path(a.input_file)
                                                : fs::path(a.output_file);
  grade_and_write(rows, a.question_field, a.answer_field, a.grade,
                  metrics_path_for(target), a.verbose, io);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// classify

struct ClassifyArgs {
  std::vector<std::string> input_files;
  std::string output_file;
  std::string labels_file;
  std::string pie_file;
  std::string overrides;
  std::string benchmark;
  std::string answer_field = "en_answer";
  bool no_group = false;
  GradeOptions grade;
};

ExecutionRecord execution_from_row(const nlohmann::ordered_json& row,
                                   std::size_t line) {
  const auto st = row.find("execution_state");
  if (st == row.end() || !st->is_string()) {
    throw MissingFieldError(line, "execution_state");
  }
  auto state = ExecutionState::parse(st->get<std::string>());
  if (!state) {
    throw MalformedLineError(line, "unrecognized execution_state '" +
                                       st->get<std::string>() + "'");
  }
  ExecutionRecord r;
  r.state = std::move(*state);
  if (auto s = row.find("to_run_script"); s != row.end() && s->is_string()) {
    r.script = s->get<std::string>();
  }
  if (auto o = row.find("execution_result"); o != row.end() && o->is_string()) {
    r.raw_output = o->get<std::string>();
  }
  if (auto b = row.find("execution_best_solution");
      b != row.end() && !b->is_null()) {
    r.best_solution = text_of(*b);
  }
  return r;
}

int cmd_classify(const ClassifyArgs& a, Streams io) {
  const CompareOptions cmp = a.grade.compare();
  std::vector<LabeledOutcome> outcomes;
  for (const auto& file : a.input_files) {
    const auto rows = read_rows(file);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& row = rows[i];
      ExecutionRecord exec = execution_from_row(row, i + 1);
      std::string bench = a.benchmark;
      if (bench.empty()) {
        bench = row.contains("benchmark") ? text_of(row["benchmark"])
                                          : std::string("unknown");
      }
      if (auto b = parse_benchmark(bench)) bench = std::string(to_string(*b));
      std::string id = row.contains("id") ? text_of(row["id"])
                                          : bench + "-" + std::to_string(i + 1);
      const auto ans = row.find(a.answer_field);
      if (ans == row.end()) throw MissingFieldError(i + 1, a.answer_field);
      const bool matched = compare(exec.best_solution, text_of(*ans), cmp);
      outcomes.push_back({std::move(id), std::move(bench),
                          classify(exec, matched), std::nullopt, {}});
    }
  }
  if (!a.overrides.empty()) {
    if (!fs::exists(a.overrides)) {
      throw UpstreamFileError("overrides not found: " + a.overrides);
    }
    apply_overrides(outcomes, load_overrides(a.overrides));
  }
  const auto report = report_distribution(outcomes, !a.no_group);
  write_text_file(a.output_file, report.counts_csv());
  if (!a.pie_file.empty()) write_text_file(a.pie_file, report.pie_csv());
  if (!a.labels_file.empty()) {
    std::vector<nlohmann::ordered_json> rows;
    for (const auto& o : outcomes) {
      nlohmann::ordered_json j;
      j["id"] = o.id;
      j["benchmark"] = o.benchmark;
      j["label"] = std::string(to_string(o.label));
      if (o.computed) {
        j["computed_label"] = std::string(to_string(*o.computed));
        j["note"] = o.note;
      }
      rows.push_back(std::move(j));
    }
    write_jsonl(a.labels_file, rows);
  }
  io.out << report.render_table();
  return kExitOk;
}

// ---------------------------------------------------------------------------
// report

struct ReportArgs {
  std::vector<std::string> input_files;
  std::string output_file;
  bool json = false;
};

int cmd_report(const ReportArgs& a, Streams io) {
  DistributionReport report;
  for (const auto& f : a.input_files) {
    if (!fs::exists(f)) throw UpstreamFileError("counts file not found: " + f);
    report.merge(DistributionReport::from_counts_csv(read_text_file(f)));
  }
  const std::string text =
      a.json ? report.to_json().dump(2) + "\n" : report.render_table();
  if (!a.output_file.empty()) write_text_file(a.output_file, text);
  io.out << text;
  return kExitOk;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyArgs {
  std::string input_file, output_file;
  std::string models;
  std::string benchmark = "NL4OPT";
  FieldOptions fields;
  GradeOptions grade;
};

int cmd_verify(const VerifyArgs& a, Streams io) {
  const CompareOptions cmp = a.grade.compare();
  if (!fs::exists(a.input_file)) {
    throw UpstreamFileError("input not found: " + a.input_file);
  }
  const auto instances =
      load_benchmark(a.input_file, benchmark_of(a.benchmark), a.fields.names());
  const fs::path dir =
      a.models.empty() ? fs::path(default_data_dir()) / "models" : fs::path(a.models);
  const auto models = load_verified_models(dir);
  std::vector<nlohmann::ordered_json> rows;
  std::map<VerdictKind, std::size_t> tally;
  for (const auto& inst : instances) {
    auto it = models.find(inst.id);
    const Verdict v = verify_ground_truth(
        inst, it == models.end() ? nullptr : &it->second, cmp);
    ++tally[v.kind];
    io.out << inst.id << ": " << to_string(v.kind);
    if (v.delta) io.out << " (delta " << nlohmann::json(*v.delta).dump() << ")";
    io.out << "\n";
    rows.push_back(v.to_json(inst.id));
  }
  if (!a.output_file.empty()) write_jsonl(a.output_file, rows);
  io.out << "confirmed " << tally[VerdictKind::Confirmed] << ", mismatch "
         << tally[VerdictKind::Mismatch] << ", not applicable "
         << tally[VerdictKind::NotApplicable] << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// campaign

struct CampaignArgs {
  std::string input_file;
  std::string output_dir = "runs";
  double fraction = 0.1;
  int repetitions = 5;
  std::uint64_t seed = 0;
  FieldOptions fields;
  GatewayOptions gateway;
  PipelineOptions pipeline;
  SandboxOptions sandbox;
  GradeOptions grade;
};

int cmd_campaign(const CampaignArgs& a, const CliEnv& env, Streams io) {
  auto pl = make_pipeline(a.pipeline, a.gateway, a.sandbox, a.grade, env);
  SamplePlan plan{a.fraction, a.repetitions, a.seed};
  plan.validate();
  if (!fs::exists(a.input_file)) {
    throw UpstreamFileError("input not found: " + a.input_file);
  }
  const Benchmark bench = benchmark_of(a.pipeline.benchmark);
  const auto instances = load_benchmark(a.input_file, bench, a.fields.names());
  if (instances.empty()) throw EmptyDatasetError();

  const CampaignResult result = run_campaign(instances, plan, pl->strategy,
                                             pl->ctx, a.pipeline.max_workers);

  std::map<std::string, const BenchmarkInstance*> by_id;
  for (const auto& inst : instances) by_id[inst.id] = &inst;
  const fs::path dir = a.output_dir;
  const std::string stem =
      std::string(to_string(bench)) + "." + std::string(to_string(pl->strategy));
  std::vector<nlohmann::ordered_json> rows;
  for (const auto& rec : result.records) {
    rows.push_back(rec.to_json(*by_id.at(rec.id), a.fields.names(), pl->ctx));
  }
  write_jsonl(dir / (stem + ".records.jsonl"), rows);
  write_metrics_file(dir / (stem + ".metrics.json"), result.summary_metrics());
  write_text_file(dir / (stem + ".summary.json"),
                  result.summary_json(pl->strategy).dump(2) + "\n");
  write_text_file(dir / (stem + ".counts.csv"), result.report.counts_csv());
  write_text_file(dir / (stem + ".pie.csv"), result.report.pie_csv());
  write_text_file(dir / (stem + ".report.txt"), result.report.render_table());

  io.out << result.summary_metrics().to_json().dump(4) << "\n"
         << result.report.render_table();
  return kExitOk;
}

// ---------------------------------------------------------------------------

int dispatch(const std::vector<std::string>& args, const CliEnv& env,
             Streams io) {
  CLI::App app{"Evaluate LLM-generated optimization models and code"};
  app.name("orbench");
  app.set_config("--config", "", "Config file (TOML/INI key = value)");
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "Query the model for each instance");
  g->add_option("--input_file", gen.input_file, "Benchmark JSONL")->required();
  g->add_option("--output_file", gen.output_file, "Generated JSONL")->required();
  g->add_flag("--verbose", gen.verbose);
  add_field_options(g, gen.fields);
  add_gateway_options(g, gen.gateway);
  add_pipeline_options(g, gen.pipeline);

  ExecuteArgs ex;
  auto* e = app.add_subcommand("execute", "Run generated code and grade it");
  e->add_option("--input_file", ex.input_file, "Generated JSONL")->required();
  e->add_option("--output_file", ex.output_file, "Executed JSONL")->required();
  e->add_option("--code_field", ex.code_field,
                "Key holding the model output (auto: generated_coptpy_code, "
                "else the first *coptpy_code key)")
      ->capture_default_str();
  e->add_option("--max_workers", ex.max_workers, "Concurrent executions")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  e->add_flag("--verbose", ex.verbose);
  e->add_option("--question_field", ex.question_field,
                "Group key for grading (grading runs when both fields are set)");
  e->add_option("--answer_field", ex.answer_field, "Ground-truth key");
  add_sandbox_options(e, ex.sandbox);
  add_grade_options(e, ex.grade);

  GradeArgs gr;
  auto* gc = app.add_subcommand("grade", "Compute pass@k from executed JSONL");
  gc->add_option("--input_file", gr.input_file, "Executed JSONL")->required();
  gc->add_option("--output_file", gr.output_file,
                 "Path the metrics file name derives from (default: input)");
  gc->add_flag("--verbose", gr.verbose);
  gc->add_option("--question_field", gr.question_field)->capture_default_str();
  gc->add_option("--answer_field", gr.answer_field)->capture_default_str();
  add_grade_options(gc, gr.grade);

  ClassifyArgs cl;
  auto* cc = app.add_subcommand("classify", "Label executed records by error type");
  cc->add_option("--input_file", cl.input_files, "Executed JSONL (repeatable)")
      ->required();
  cc->add_option("--output_file", cl.output_file, "Counts CSV")->required();
  cc->add_option("--labels_file", cl.labels_file, "Per-instance labels JSONL");
  cc->add_option("--pie_file", cl.pie_file, "Pie-chart CSV");
  cc->add_option("--overrides", cl.overrides, "Manual label overrides JSONL");
  cc->add_option("--benchmark", cl.benchmark,
                 "Benchmark name for rows without one");
  cc->add_option("--answer_field", cl.answer_field)->capture_default_str();
  cc->add_flag("--no_group", cl.no_group, "Single row across benchmarks");
  add_grade_options(cc, cl.grade);

  ReportArgs rp;
  auto* rc = app.add_subcommand("report", "Print label distributions");
  rc->add_option("--input_file", rp.input_files, "Counts CSV (repeatable)")
      ->required();
  rc->add_option("--output_file", rp.output_file, "Also write the report here");
  rc->add_flag("--json", rp.json, "JSON instead of a text table");

  VerifyArgs vf;
  auto* vc = app.add_subcommand("verify", "Check stored answers with the exact solver");
  vc->add_option("--input_file", vf.input_file, "Benchmark JSONL")->required();
  vc->add_option("--output_file", vf.output_file, "Verdicts JSONL");
  vc->add_option("--models", vf.models, "Verified models directory");
  vc->add_option("--benchmark", vf.benchmark)->capture_default_str();
  add_field_options(vc, vf.fields);
  add_grade_options(vc, vf.grade);

  CampaignArgs cp;
  auto* pc = app.add_subcommand("campaign",
                                "Sample, generate, execute, grade and classify");
  pc->add_option("--input_file", cp.input_file, "Benchmark JSONL")->required();
  pc->add_option("--output_dir", cp.output_dir)->capture_default_str();
  pc->add_option("--fraction", cp.fraction, "Subset fraction")
      ->capture_default_str();
  pc->add_option("--repetitions", cp.repetitions)->capture_default_str();
  pc->add_option("--seed", cp.seed)->capture_default_str();
  add_field_options(pc, cp.fields);
  add_gateway_options(pc, cp.gateway);
  add_pipeline_options(pc, cp.pipeline);
  add_sandbox_options(pc, cp.sandbox);
  add_grade_options(pc, cp.grade);

  std::vector<const char*> argv;
  for (const auto& s : args) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& err) {
    const int rc = app.exit(err, io.out, io.err);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  if (*g) return cmd_generate(gen, env, io);
  if (*e) return cmd_execute(ex, io);
  if (*gc) return cmd_grade(gr, io);
  if (*cc) return cmd_classify(cl, io);
  if (*rc) return cmd_report(rp, io);
  if (*vc) return cmd_verify(vf, io);
  if (*pc) return cmd_campaign(cp, env, io);
  return kExitConfig;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, const CliEnv& env) {
  Streams io{env.out ? *env.out : std::cout, env.err ? *env.err : std::cerr};
  try {
    return dispatch(args, env, io);
  } catch (const ReplayMissError& e) {
    io.err << "error: " << e.what() << "\n";
    return kExitReplayMiss;
  } catch (const UpstreamFileError& e) {
    io.err << "error: " << e.what() << "\n";
    return kExitUpstreamFile;
  } catch (const MissingFieldError& e) {
    io.err << "error: " << e.what() << "\n";
    return kExitUpstreamFile;
  } catch (const MalformedLineError& e) {
    io.err << "error: " << e.what() << "\n";
    return kExitUpstreamFile;
  } catch (const StubParseError& e) {
    io.err << "error: " << e.what() << "\n";
    return kExitUpstreamFile;
  } catch (const ConfigError& e) {
    io.err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const SandboxSetupError& e) {
    io.err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    io.err << "error: " << e.what() << "\n";
    return kExitInternal;
  }
}

int run_cli(int argc, char** argv) {
  return run_cli(std::vector<std::string>(argv, argv + argc));
}

}  // namespace orbench::cli
