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
#include "orbench/taxonomy.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <utility>

#include "orbench/text_util.hpp"

namespace orbench {
namespace {

bool is_word(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

bool contains(std::string_view hay, std::string_view needle) {
  return hay.find(needle) != std::string_view::npos;
}

std::string squash(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == ' ' || c == '_' || c == '-') continue;
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

// Object types and modules whose missing members count as API
// hallucinations rather than plain bugs.
constexpr std::string_view kSolverOwners[] = {
    "'Envr'",     "'Model'",     "'Var'",       "'VarArray'",
    "'Constraint'", "'ConstrArray'", "'LinExpr'", "'QuadExpr'",
    "'Column'",   "'tupledict'", "'tuplelist'", "'MVar'",
    "'MConstr'",  "'MLinExpr'",  "'PsdVar'",    "'GenConstr'",
    "'SOS'",      "'COPT'",      "'coptpy'",    "'coptpy.COPT'",
};

bool solver_member_missing(std::string_view text) {
  for (std::size_t pos = text.find("AttributeError"); pos != std::string_view::npos;
       pos = text.find("AttributeError", pos + 1)) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos
                                                 ? std::string_view::npos
                                                 : eol - pos);
    for (auto owner : kSolverOwners) {
      if (contains(line, owner)) return true;
    }
  }
  // A name that does not exist in the solver module.
  return contains(text, "cannot import name") && contains(text, "coptpy");
}

}  // namespace

std::string_view to_string(TaxonomyLabel label) {
  switch (label) {
    case TaxonomyLabel::AttributeError:
      return "Attribute Error";
    case TaxonomyLabel::SyntaxError:
      return "Syntax Error";
    case TaxonomyLabel::LogicalError:
      return "Logical Error";
    case TaxonomyLabel::ResultsNotOptimal:
      return "Results not Optimal";
    case TaxonomyLabel::OptimalSolution:
      return "Optimal Solution";
  }
  return "?";
}

std::optional<TaxonomyLabel> parse_label(std::string_view s) {
  const std::string key = squash(s);
  for (auto l : kAllLabels) {
    if (squash(to_string(l)) == key) return l;
  }
  return std::nullopt;
}

std::optional<std::string> missing_attribute_name(
    std::string_view error_text) {
  for (std::string_view lead : {std::string_view("has no attribute "),
                                std::string_view("Invalid attribute name ")}) {
    const std::size_t pos = error_text.find(lead);
    if (pos == std::string_view::npos) continue;
    std::size_t i = pos + lead.size();
    if (i >= error_text.size()) continue;
    const char quote = error_text[i];
    if (quote != '\'' && quote != '"') continue;
    const std::size_t end = error_text.find(quote, i + 1);
    if (end == std::string_view::npos) continue;
    return std::string(error_text.substr(i + 1, end - i - 1));
  }
  return std::nullopt;
}

bool has_self_named_access(std::string_view code, std::string_view name) {
  if (name.empty()) return false;
  std::string needle(name);
  needle += '.';
  needle += name;
  for (std::size_t pos = code.find(needle); pos != std::string_view::npos;
       pos = code.find(needle, pos + 1)) {
    const bool left_ok = pos == 0 || (!is_word(code[pos - 1]) &&
                                      code[pos - 1] != '.');
    const std::size_t after = pos + needle.size();
    const bool right_ok = after >= code.size() || !is_word(code[after]);
    if (left_ok && right_ok) return true;
  }
  return false;
}

TaxonomyLabel classify(const ExecutionRecord& exec, bool matched) {
  if (matched) return TaxonomyLabel::OptimalSolution;
  if (exec.state.succeeded()) return TaxonomyLabel::ResultsNotOptimal;
  const std::string_view text = exec.state.message;
  if (contains(text, "SyntaxError") || contains(text, "invalid syntax") ||
      contains(text, "IndentationError") || contains(text, "TabError")) {
    return TaxonomyLabel::SyntaxError;
  }
  if (auto name = missing_attribute_name(text)) {
    if (has_self_named_access(exec.script, *name) ||
        has_self_named_access(text, *name)) {
      return TaxonomyLabel::LogicalError;
    }
  }
  if (contains(text, "Invalid attribute name") || solver_member_missing(text)) {
    return TaxonomyLabel::AttributeError;
  }
  return TaxonomyLabel::LogicalError;
}

std::vector<OverrideEntry> load_overrides(const std::filesystem::path& path) {
  std::vector<OverrideEntry> out;
  std::size_t line = 0;
  for (const auto& row : read_jsonl(path)) {
    ++line;
    if (!row.contains("id")) throw MissingFieldError(line, "id");
    if (!row.contains("label")) throw MissingFieldError(line, "label");
    OverrideEntry e;
    const auto& id = row["id"];
    e.id = id.is_string() ? id.get<std::string>() : id.dump();
    const std::string label = row["label"].get<std::string>();
    auto parsed = parse_label(label);
    if (!parsed) {
      throw ConfigError("override line " + std::to_string(line) +
                        ": unknown label '" + label + "'");
    }
    e.label = *parsed;
    e.note = row.value("note", "");
    out.push_back(std::move(e));
  }
  return out;
}

void apply_overrides(std::vector<LabeledOutcome>& outcomes,
                     std::span<const OverrideEntry> overrides) {
  std::map<std::string, std::vector<std::size_t>> by_id;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    by_id[outcomes[i].id].push_back(i);
  }
  for (const auto& o : overrides) {
    if (!by_id.count(o.id)) throw UnknownInstanceIdError(o.id);
  }
  for (const auto& o : overrides) {
    for (std::size_t i : by_id[o.id]) {
      auto& out = outcomes[i];
      if (!out.computed) out.computed = out.label;
      out.label = o.label;
      out.note = o.note;
    }
  }
}

std::optional<double> DistributionRow::accuracy() const {
  if (total == 0) return std::nullopt;
  return static_cast<double>(counts[4]) / static_cast<double>(total);
}

DistributionReport report_distribution(std::span<const LabeledOutcome> outcomes,
                                       bool group_by_benchmark) {
  std::map<std::string, DistributionRow> rows;
  for (const auto& o : outcomes) {
    const std::string key = group_by_benchmark ? o.benchmark : "all";
    auto& row = rows[key];
    row.benchmark = key;
    ++row.counts[static_cast<std::size_t>(o.label)];
    ++row.total;
  }
  DistributionReport report;
  for (auto& [_, row] : rows) report.rows.push_back(std::move(row));
  return report;
}

std::string DistributionReport::render_table() const {
  if (rows.empty()) return "no outcomes\n";
  std::ostringstream out;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-12s", "benchmark");
  out << buf;
  for (auto l : kAllLabels) {
    std::snprintf(buf, sizeof buf, " %20s", std::string(to_string(l)).c_str());
    out << buf;
  }
  out << "  total  accuracy\n";
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%-12s", r.benchmark.c_str());
    out << buf;
    for (std::size_t i = 0; i < kAllLabels.size(); ++i) {
      std::snprintf(buf, sizeof buf, " %20zu", r.counts[i]);
      out << buf;
    }
    std::snprintf(buf, sizeof buf, " %6zu  %7.1f%%\n", r.total,
                  100.0 * r.accuracy().value_or(0.0));
    out << buf;
  }
  return out.str();
}

std::string DistributionReport::counts_csv() const {
  std::string out = "benchmark,label,count\n";
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < kAllLabels.size(); ++i) {
      out += r.benchmark + "," + std::string(to_string(kAllLabels[i])) + "," +
             std::to_string(r.counts[i]) + "\n";
    }
  }
  return out;
}

std::string DistributionReport::pie_csv() const {
  std::string out = "benchmark,label,count,percent\n";
  char pct[32];
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < kAllLabels.size(); ++i) {
      if (r.counts[i] == 0) continue;
      std::snprintf(pct, sizeof pct, "%.1f",
                    100.0 * static_cast<double>(r.counts[i]) /
                        static_cast<double>(r.total));
      out += r.benchmark + "," + std::string(to_string(kAllLabels[i])) + "," +
             std::to_string(r.counts[i]) + "," + pct + "\n";
    }
  }
  return out;
}

nlohmann::ordered_json DistributionReport::to_json() const {
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json row;
    row["benchmark"] = r.benchmark;
    nlohmann::ordered_json counts;
    for (std::size_t i = 0; i < kAllLabels.size(); ++i) {
      counts[std::string(to_string(kAllLabels[i]))] = r.counts[i];
    }
    row["counts"] = std::move(counts);
    row["total"] = r.total;
    auto acc = r.accuracy();
    row["accuracy"] =
        acc ? nlohmann::ordered_json(*acc) : nlohmann::ordered_json(nullptr);
    j.push_back(std::move(row));
  }
  return j;
}

DistributionReport DistributionReport::from_counts_csv(std::string_view text) {
  std::map<std::string, DistributionRow> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    if (line_no == 1 && line == "benchmark,label,count") continue;
    const std::size_t a = line.find(',');
    const std::size_t b = line.rfind(',');
    if (a == std::string::npos || a == b) {
      throw ConfigError("counts line " + std::to_string(line_no) +
                        ": expected benchmark,label,count");
    }
    const std::string bench = line.substr(0, a);
    const auto label = parse_label(line.substr(a + 1, b - a - 1));
    if (!label) {
      throw ConfigError("counts line " + std::to_string(line_no) +
                        ": unknown label");
    }
    const auto count = parse_finite_real(line.substr(b + 1));
    if (!count || *count < 0 || *count != std::floor(*count)) {
      throw ConfigError("counts line " + std::to_string(line_no) +
                        ": bad count");
    }
    auto& row = rows[bench];
    row.benchmark = bench;
    const auto n = static_cast<std::size_t>(*count);
    row.counts[static_cast<std::size_t>(*label)] += n;
    row.total += n;
  }
  DistributionReport report;
  for (auto& [_, row] : rows) report.rows.push_back(std::move(row));
  return report;
}

void DistributionReport::merge(const DistributionReport& other) {
  std::map<std::string, DistributionRow> merged;
  for (const std::vector<DistributionRow>* src : {&std::as_const(rows), &other.rows}) {
    for (const auto& r : *src) {
      auto& row = merged[r.benchmark];
      row.benchmark = r.benchmark;
      for (std::size_t i = 0; i < r.counts.size(); ++i) {
        row.counts[i] += r.counts[i];
      }
      row.total += r.total;
    }
  }
  rows.clear();
  for (auto& [_, row] : merged) rows.push_back(std::move(row));
}

}  // namespace orbench
