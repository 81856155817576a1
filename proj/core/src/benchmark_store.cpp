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
#include "orbench/benchmark_store.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <random>

#include "orbench/text_util.hpp"

namespace orbench {
namespace {

using ojson = nlohmann::ordered_json;

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

// Uniform integer in [0, bound) by rejection on raw engine output; unlike
// std::uniform_int_distribution this is specified bit-for-bit.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t threshold = (0 - bound) % bound;
  while (true) {
    std::uint64_t x = rng();
    if (x >= threshold) return x % bound;
  }
}

std::optional<std::string> optional_string(const ojson& obj,
                                           const std::string& key,
                                           std::size_t line_no) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) {
    throw MalformedLineError(line_no, "field '" + key + "' must be a string");
  }
  return it->get<std::string>();
}

}  // namespace

std::string_view to_string(Benchmark b) {
  switch (b) {
    case Benchmark::IndustryOR:
      return "IndustryOR";
    case Benchmark::EasyLP:
      return "EasyLP";
    case Benchmark::ComplexOR:
      return "ComplexOR";
    case Benchmark::NL4OPT:
      return "NL4OPT";
  }
  return "?";
}

std::optional<Benchmark> parse_benchmark(std::string_view name) {
  const std::string n = lower(name);
  if (n == "industryor") return Benchmark::IndustryOR;
  if (n == "easylp" || n == "mamo-easylp") return Benchmark::EasyLP;
  if (n == "complexor" || n == "complexlp") return Benchmark::ComplexOR;
  if (n == "nl4opt") return Benchmark::NL4OPT;
  return std::nullopt;
}

std::optional<Answer> Answer::from_text(std::string_view text) {
  if (text == kNoBestSolution) return Answer(std::string(kNoBestSolution), {});
  auto v = parse_finite_real(text);
  if (!v) return std::nullopt;
  return Answer(std::string(text), v);
}

std::optional<Answer> Answer::from_json(const ojson& v) {
  if (v.is_string()) return from_text(v.get_ref<const std::string&>());
  if (v.is_number()) {
    double d = v.get<double>();
    if (!std::isfinite(d)) return std::nullopt;
    return Answer(v.dump(), d);
  }
  return std::nullopt;
}

BenchmarkInstance instance_from_json(const ojson& obj, std::size_t line_no,
                                     Benchmark benchmark,
                                     const FieldNames& fields) {
  if (!obj.is_object()) {
    throw MalformedLineError(line_no, "expected a JSON object");
  }
  BenchmarkInstance inst;
  inst.benchmark = benchmark;

  auto q = obj.find(fields.question);
  if (q == obj.end()) throw MissingFieldError(line_no, fields.question);
  if (!q->is_string()) {
    throw MalformedLineError(line_no, "question must be a string");
  }
  inst.question = q->get<std::string>();
  if (trim(inst.question).empty()) {
    throw MalformedLineError(line_no, "question is blank");
  }

  auto a = obj.find(fields.answer);
  if (a == obj.end()) throw MissingFieldError(line_no, fields.answer);
  auto answer = Answer::from_json(*a);
  if (!answer) {
    throw MalformedLineError(
        line_no, "answer must be a finite real or \"No Best Solution\"");
  }
  inst.ground_truth = *answer;
  inst.ground_truth_raw = *a;

  inst.reference_solution =
      optional_string(obj, fields.reference_solution, line_no);
  inst.reasoning_content = optional_string(obj, "reasoning_content", line_no);
  inst.prompt = optional_string(obj, "prompt", line_no);

  for (auto it = obj.begin(); it != obj.end(); ++it) {
    const std::string& key = it.key();
    if (key == fields.question || key == fields.answer ||
        key == fields.reference_solution || key == "reasoning_content" ||
        key == "prompt") {
      continue;
    }
    inst.extras[key] = it.value();
  }
  if (auto id = inst.extras.find("id"); id != inst.extras.end()) {
    inst.id = id->is_string() ? id->get<std::string>() : id->dump();
  } else {
    inst.id = std::string(to_string(benchmark)) + "-" + std::to_string(line_no);
  }
  return inst;
}

BenchmarkInstance parse_instance(std::string_view line, std::size_t line_no,
                                 Benchmark benchmark,
                                 const FieldNames& fields) {
  ojson obj;
  try {
    obj = ojson::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    throw MalformedLineError(line_no, e.what());
  }
  return instance_from_json(obj, line_no, benchmark, fields);
}

ojson instance_to_json(const BenchmarkInstance& inst,
                       const FieldNames& fields) {
  ojson out = ojson::object();
  out[fields.question] = inst.question;
  out[fields.answer] = inst.ground_truth_raw.is_null()
                           ? ojson(inst.ground_truth.token())
                           : inst.ground_truth_raw;
  if (inst.reference_solution) {
    out[fields.reference_solution] = *inst.reference_solution;
  }
  if (inst.reasoning_content) out["reasoning_content"] = *inst.reasoning_content;
  if (inst.prompt) out["prompt"] = *inst.prompt;
  for (auto it = inst.extras.begin(); it != inst.extras.end(); ++it) {
    out[it.key()] = it.value();
  }
  return out;
}

std::string serialize_instance(const BenchmarkInstance& inst,
                               const FieldNames& fields) {
  return dump_line(instance_to_json(inst, fields));
}

std::vector<BenchmarkInstance> load_benchmark(const std::filesystem::path& path,
                                              Benchmark benchmark,
                                              const FieldNames& fields) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UpstreamFileError("cannot open " + path.string());
  std::vector<BenchmarkInstance> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    out.push_back(parse_instance(line, line_no, benchmark, fields));
  }
  return out;
}

void SamplePlan::validate() const {
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    throw ConfigError("sample fraction must be in (0, 1]");
  }
  if (repetitions < 1) throw ConfigError("repetitions must be >= 1");
}

std::size_t subset_size(std::size_t n, double fraction) {
  const double raw = std::floor(fraction * static_cast<double>(n) + 0.5);
  const auto k = static_cast<std::size_t>(std::max(raw, 1.0));
  return std::min(k, n);
}

std::vector<std::vector<std::size_t>> sample_subset_indices(
    std::size_t n, const SamplePlan& plan) {
  plan.validate();
  if (n == 0) throw EmptyDatasetError();
  const std::size_t k = subset_size(n, plan.fraction);
  std::mt19937_64 rng(plan.seed);
  std::vector<std::vector<std::size_t>> out;
  out.reserve(static_cast<std::size_t>(plan.repetitions));
  std::vector<std::size_t> pool(n);
  for (int r = 0; r < plan.repetitions; ++r) {
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    // Partial Fisher-Yates: the first k slots become the sample.
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t j = i + uniform_below(rng, n - i);
      std::swap(pool[i], pool[j]);
    }
    std::vector<std::size_t> subset(pool.begin(), pool.begin() + k);
    std::sort(subset.begin(), subset.end());
    out.push_back(std::move(subset));
  }
  return out;
}

std::vector<std::vector<BenchmarkInstance>> sample_subsets(
    std::span<const BenchmarkInstance> instances, const SamplePlan& plan) {
  std::vector<std::vector<BenchmarkInstance>> out;
  for (const auto& idx : sample_subset_indices(instances.size(), plan)) {
    std::vector<BenchmarkInstance> subset;
    subset.reserve(idx.size());
    for (std::size_t i : idx) subset.push_back(instances[i]);
    out.push_back(std::move(subset));
  }
  return out;
}

BenchmarkManifest load_manifest(const std::filesystem::path& path) {
  const auto j = nlohmann::json::parse(read_text_file(path));
  BenchmarkManifest m;
  auto b = parse_benchmark(j.at("benchmark").get<std::string>());
  if (!b) throw ConfigError("unknown benchmark in " + path.string());
  m.benchmark = *b;
  m.instance_count = j.at("instance_count").get<std::size_t>();
  m.source = j.value("source", "");
  m.notes = j.value("notes", "");
  return m;
}

}  // namespace orbench
