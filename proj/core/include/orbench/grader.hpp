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
#ifndef ORBENCH_GRADER_HPP_
#define ORBENCH_GRADER_HPP_

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "orbench/errors.hpp"

namespace orbench {

struct CompareOptions {
  double tolerance = 0.05;
  // Skip the round-to-integer step (for continuous optima).
  bool strict = false;

  // Throws ConfigError unless tolerance is in [0, 1).
  void validate() const;
};

// Whether a predicted token matches the ground truth. "No Best Solution"
// must match exactly; numbers are rounded half-to-even (unless strict) and
// compared by relative error, or by absolute value when the truth is 0.
// Absent or unparseable predictions never match.
bool compare(const std::optional<std::string>& pred, std::string_view gt,
             const CompareOptions& opts = {});

// Unbiased pass@k estimator 1 - C(n-c,k)/C(n,k) in product form.
// Throws DomainError unless 0 <= c <= n and 1 <= k <= n.
double pass_at_k(long long n, long long c, long long k);

// Most frequent value; ties go to the value seen first.
std::optional<std::string> majority_vote(std::span<const std::string> preds);

// Majority-vote input normalization: absent predictions are dropped and
// numeric ones replaced by their rounded integer text (shortest decimal
// text when strict).
std::vector<std::string> normalize_for_vote(
    std::span<const std::optional<std::string>> preds, bool strict = false);

struct GradeRecord {
  std::string id;
  std::vector<std::optional<std::string>> predictions;
  std::string ground_truth;
  double tolerance = 0.05;
  bool matched = false;  // any prediction matches
  std::optional<std::string> majority_answer;
  bool majority_matched = false;
};

GradeRecord grade(std::string id,
                  std::vector<std::optional<std::string>> predictions,
                  std::string ground_truth, const CompareOptions& opts = {});

class InconsistentArityError : public Error {
 public:
  InconsistentArityError(std::size_t expected, std::size_t got,
                         const std::string& id)
      : Error("instance " + id + " has " + std::to_string(got) +
              " generations, expected " + std::to_string(expected)) {}
};

struct Metrics {
  std::size_t k = 0;  // generations per instance
  std::size_t instances = 0;
  double pass_at_k = 0.0;
  std::optional<double> mj_at_k;
  // Execution-state histogram, filled by callers that have the states.
  std::map<std::string, std::size_t> state_counts;

  // {"pass@k": ..., "mj@k": ...} in that order.
  nlohmann::ordered_json to_json() const;
};

// Throws InconsistentArityError when generation counts differ and
// DomainError on an empty grade list.
Metrics compute_metrics(std::span<const GradeRecord> grades, bool majority);

// ".json" and ".jsonl" suffixes become ".metrics.json"; anything else gets
// ".metrics.json" appended.
std::filesystem::path metrics_path_for(const std::filesystem::path& output);

// Writes metrics.to_json() with 4-space indent and no trailing newline.
void write_metrics_file(const std::filesystem::path& path,
                        const Metrics& metrics);

struct GradeFileOptions {
  std::string question_field = "en_question";
  std::string answer_field = "en_answer";
  std::string prediction_field = "execution_best_solution";
  CompareOptions compare;
};

// Groups executed rows by question text (first-appearance order) and grades
// each group. Throws MissingFieldError for rows lacking the question or
// answer field and DomainError when one question carries two different
// ground truths.
std::vector<GradeRecord> grade_rows(
    std::span<const nlohmann::ordered_json> rows,
    const GradeFileOptions& opts = {});

}  // namespace orbench

#endif  // ORBENCH_GRADER_HPP_
