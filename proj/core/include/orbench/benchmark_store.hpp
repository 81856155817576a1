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
#ifndef ORBENCH_BENCHMARK_STORE_HPP_
#define ORBENCH_BENCHMARK_STORE_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "orbench/errors.hpp"

namespace orbench {

enum class Benchmark { IndustryOR, EasyLP, ComplexOR, NL4OPT };

std::string_view to_string(Benchmark b);
// Case-insensitive; also accepts "ComplexLP" for ComplexOR.
std::optional<Benchmark> parse_benchmark(std::string_view name);

inline constexpr std::string_view kNoBestSolution = "No Best Solution";

// Ground-truth token: a finite real or the literal "No Best Solution".
class Answer {
 public:
  // Accepts a JSON number or a string. Returns nullopt when the value is
  // neither a finite real nor the no-solution token.
  static std::optional<Answer> from_json(const nlohmann::ordered_json& v);
  static std::optional<Answer> from_text(std::string_view text);

  bool is_no_best_solution() const { return !value_.has_value(); }
  std::optional<double> value() const { return value_; }
  // Token as graded: the original text for strings, the shortest
  // round-tripping decimal for JSON numbers.
  const std::string& token() const { return token_; }

  friend bool operator==(const Answer&, const Answer&) = default;

 private:
  Answer(std::string token, std::optional<double> value)
      : token_(std::move(token)), value_(value) {}
  std::string token_;
  std::optional<double> value_;
};

struct FieldNames {
  std::string question = "en_question";
  std::string answer = "en_answer";
  std::string reference_solution = "en_math_model_coptpy_code";
};

struct BenchmarkInstance {
  std::string id;
  Benchmark benchmark = Benchmark::NL4OPT;
  std::string question;
  Answer ground_truth = *Answer::from_text(kNoBestSolution);
  std::optional<std::string> reference_solution;
  std::optional<std::string> reasoning_content;
  std::optional<std::string> prompt;
  // Raw JSON of the answer field, kept so serialization reproduces the
  // input type (number vs string).
  nlohmann::ordered_json ground_truth_raw;
  // Every key not recognized above, in input order. An input "id" key
  // lives here too.
  nlohmann::ordered_json extras = nlohmann::ordered_json::object();
};

// Parses one JSONL line. line_no is 1-based and only used for errors.
BenchmarkInstance parse_instance(std::string_view line, std::size_t line_no,
                                 Benchmark benchmark,
                                 const FieldNames& fields = {});
BenchmarkInstance instance_from_json(const nlohmann::ordered_json& obj,
                                     std::size_t line_no, Benchmark benchmark,
                                     const FieldNames& fields = {});
nlohmann::ordered_json instance_to_json(const BenchmarkInstance& inst,
                                        const FieldNames& fields = {});
std::string serialize_instance(const BenchmarkInstance& inst,
                               const FieldNames& fields = {});

// Loads every non-blank line in file order. Instances without an "id" key
// get "<benchmark>-<line>".
std::vector<BenchmarkInstance> load_benchmark(const std::filesystem::path& path,
                                              Benchmark benchmark,
                                              const FieldNames& fields = {});

class EmptyDatasetError : public Error {
 public:
  EmptyDatasetError() : Error("cannot sample from an empty dataset") {}
};

struct SamplePlan {
  double fraction = 0.1;
  int repetitions = 5;
  std::uint64_t seed = 0;

  // Throws ConfigError unless fraction is in (0,1] and repetitions >= 1.
  void validate() const;
};

// round-half-up(fraction * n), floored at 1.
std::size_t subset_size(std::size_t n, double fraction);

// Index subsets, each sorted ascending and free of duplicates. One
// mt19937_64 stream seeded with plan.seed feeds all repetitions in order,
// so the result is identical on every platform.
std::vector<std::vector<std::size_t>> sample_subset_indices(
    std::size_t n, const SamplePlan& plan);

std::vector<std::vector<BenchmarkInstance>> sample_subsets(
    std::span<const BenchmarkInstance> instances, const SamplePlan& plan);

// Describes a bundled dataset: its declared size and provenance.
struct BenchmarkManifest {
  Benchmark benchmark = Benchmark::NL4OPT;
  std::size_t instance_count = 0;
  std::string source;
  std::string notes;
};

BenchmarkManifest load_manifest(const std::filesystem::path& path);

}  // namespace orbench

#endif  // ORBENCH_BENCHMARK_STORE_HPP_
