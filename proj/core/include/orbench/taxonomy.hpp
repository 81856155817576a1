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
#ifndef ORBENCH_TAXONOMY_HPP_
#define ORBENCH_TAXONOMY_HPP_

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "orbench/errors.hpp"
#include "orbench/execution_sandbox.hpp"

namespace orbench {

enum class TaxonomyLabel {
  AttributeError,
  SyntaxError,
  LogicalError,
  ResultsNotOptimal,
  OptimalSolution,
};

inline constexpr std::array<TaxonomyLabel, 5> kAllLabels = {
    TaxonomyLabel::AttributeError, TaxonomyLabel::SyntaxError,
    TaxonomyLabel::LogicalError, TaxonomyLabel::ResultsNotOptimal,
    TaxonomyLabel::OptimalSolution};

// Display name, e.g. "Attribute Error", "Results not Optimal".
std::string_view to_string(TaxonomyLabel label);
// Accepts display names and identifier forms ("AttributeError",
// "attribute_error"), case-insensitively.
std::optional<TaxonomyLabel> parse_label(std::string_view s);

// Attribute name from "has no attribute 'n'" or "Invalid attribute name
// 'n'", if the text carries one.
std::optional<std::string> missing_attribute_name(std::string_view error_text);

// True when code contains "<name>.<name>" as a standalone access, the shape
// of a result accessor borrowed from another variable (y.y after x.x).
bool has_self_named_access(std::string_view code, std::string_view name);

// Decision ladder: matched, successful-but-wrong, syntax, hallucinated
// result accessor (logical), missing solver member (attribute), anything
// else (logical).
TaxonomyLabel classify(const ExecutionRecord& exec, bool matched);

struct OverrideEntry {
  std::string id;
  TaxonomyLabel label = TaxonomyLabel::LogicalError;
  std::string note;
};

class UnknownInstanceIdError : public Error {
 public:
  explicit UnknownInstanceIdError(const std::string& id)
      : Error("override refers to unknown instance id '" + id + "'") {}
};

// JSONL of {"id", "label", "note"}. ConfigError on an unknown label.
std::vector<OverrideEntry> load_overrides(const std::filesystem::path& path);

struct LabeledOutcome {
  std::string id;
  std::string benchmark;
  TaxonomyLabel label = TaxonomyLabel::LogicalError;
  // Set when an override replaced the computed label.
  std::optional<TaxonomyLabel> computed;
  std::string note;
};

// Throws UnknownInstanceIdError before changing anything if an override id
// is absent from outcomes.
void apply_overrides(std::vector<LabeledOutcome>& outcomes,
                     std::span<const OverrideEntry> overrides);

struct DistributionRow {
  std::string benchmark;
  std::array<std::size_t, 5> counts{};  // indexed like kAllLabels
  std::size_t total = 0;
  // OptimalSolution / total; absent for an empty row.
  std::optional<double> accuracy() const;
};

struct DistributionReport {
  std::vector<DistributionRow> rows;  // sorted by benchmark name

  std::string render_table() const;
  // benchmark,label,count with every label listed.
  std::string counts_csv() const;
  // benchmark,label,count,percent; zero slices omitted.
  std::string pie_csv() const;
  nlohmann::ordered_json to_json() const;

  // Inverse of counts_csv; rows for the same benchmark are summed.
  // Throws ConfigError on a malformed line or unknown label.
  static DistributionReport from_counts_csv(std::string_view text);
  // Adds other's counts row by row.
  void merge(const DistributionReport& other);
};

// With group_by_benchmark false all outcomes fall into one row "all".
DistributionReport report_distribution(std::span<const LabeledOutcome> outcomes,
                                       bool group_by_benchmark = true);

}  // namespace orbench

#endif  // ORBENCH_TAXONOMY_HPP_
