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
#include "orbench/grader.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <unordered_map>

#include "orbench/text_util.hpp"

namespace orbench {
namespace {

constexpr std::string_view kNoBest = "No Best Solution";

std::string integer_text(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.0f", v);
  std::string s = buf;
  return s == "-0" ? "0" : s;
}

// JSON value of a prediction or answer field as a token.
std::optional<std::string> token_of(const nlohmann::ordered_json& v) {
  if (v.is_null()) return std::nullopt;
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

}  // namespace

void CompareOptions::validate() const {
  if (!(tolerance >= 0.0 && tolerance < 1.0)) {
    throw ConfigError("numerical tolerance must be in [0, 1), got " +
                      std::to_string(tolerance));
  }
}

bool compare(const std::optional<std::string>& pred, std::string_view gt,
             const CompareOptions& opts) {
  if (gt == kNoBest) return pred && *pred == kNoBest;
  if (!pred || *pred == kNoBest) return false;
  const auto g_raw = parse_finite_real(gt);
  const auto p_raw = parse_finite_real(*pred);
  if (!g_raw || !p_raw) return false;
  const double g = opts.strict ? *g_raw : round_half_even(*g_raw);
  const double p = opts.strict ? *p_raw : round_half_even(*p_raw);
  if (g == 0.0) return std::fabs(p) <= opts.tolerance;
  return std::fabs((p - g) / g) <= opts.tolerance;
}

double pass_at_k(long long n, long long c, long long k) {
  if (n < 1 || c < 0 || c > n || k < 1 || k > n) {
    throw DomainError("pass@k requires 0 <= c <= n and 1 <= k <= n (n=" +
                      std::to_string(n) + ", c=" + std::to_string(c) +
                      ", k=" + std::to_string(k) + ")");
  }
  if (n - c < k) return 1.0;
  double miss = 1.0;
  for (long long i = n - c + 1; i <= n; ++i) {
    miss *= 1.0 - static_cast<double>(k) / static_cast<double>(i);
  }
  return 1.0 - miss;
}

std::optional<std::string> majority_vote(std::span<const std::string> preds) {
  std::unordered_map<std::string_view, std::size_t> counts;
  std::vector<std::string_view> order;
  for (const auto& p : preds) {
    if (counts[p]++ == 0) order.push_back(p);
  }
  std::optional<std::string> best;
  std::size_t best_count = 0;
  for (auto v : order) {
    if (counts[v] > best_count) {
      best_count = counts[v];
      best = std::string(v);
    }
  }
  return best;
}

std::vector<std::string> normalize_for_vote(
    std::span<const std::optional<std::string>> preds, bool strict) {
  std::vector<std::string> out;
  for (const auto& p : preds) {
    if (!p) continue;
    if (auto v = parse_finite_real(*p)) {
      out.push_back(strict ? nlohmann::json(*v).dump()
                           : integer_text(round_half_even(*v)));
    } else {
      out.push_back(*p);
    }
  }
  return out;
}

GradeRecord grade(std::string id,
                  std::vector<std::optional<std::string>> predictions,
                  std::string ground_truth, const CompareOptions& opts) {
  GradeRecord r;
  r.id = std::move(id);
  r.tolerance = opts.tolerance;
  for (const auto& p : predictions) {
    if (compare(p, ground_truth, opts)) {
      r.matched = true;
      break;
    }
  }
  const auto votes = normalize_for_vote(predictions, opts.strict);
  r.majority_answer = majority_vote(votes);
  r.majority_matched =
      r.majority_answer && compare(r.majority_answer, ground_truth, opts);
  r.predictions = std::move(predictions);
  r.ground_truth = std::move(ground_truth);
  return r;
}

nlohmann::ordered_json Metrics::to_json() const {
  nlohmann::ordered_json j;
  j["pass@" + std::to_string(k)] = pass_at_k;
  if (mj_at_k) j["mj@" + std::to_string(k)] = *mj_at_k;
  return j;
}

Metrics compute_metrics(std::span<const GradeRecord> grades, bool majority) {
  if (grades.empty()) throw DomainError("no graded instances");
  Metrics m;
  m.k = grades.front().predictions.size();
  m.instances = grades.size();
  std::size_t hits = 0, mj_hits = 0;
  for (const auto& g : grades) {
    if (g.predictions.size() != m.k) {
      throw InconsistentArityError(m.k, g.predictions.size(), g.id);
    }
    hits += g.matched;
    mj_hits += g.majority_matched;
  }
  const double n = static_cast<double>(grades.size());
  m.pass_at_k = static_cast<double>(hits) / n;
  if (majority) m.mj_at_k = static_cast<double>(mj_hits) / n;
  return m;
}

std::filesystem::path metrics_path_for(const std::filesystem::path& output) {
  std::string s = output.string();
  if (s.ends_with(".json")) {
    s.resize(s.size() - 5);
  } else if (s.ends_with(".jsonl")) {
    s.resize(s.size() - 6);
  }
  return s + ".metrics.json";
}

void write_metrics_file(const std::filesystem::path& path,
                        const Metrics& metrics) {
  write_text_file(path, metrics.to_json().dump(4));
}

std::vector<GradeRecord> grade_rows(
    std::span<const nlohmann::ordered_json> rows,
    const GradeFileOptions& opts) {
  struct Group {
    std::string id;
    std::string gt;
    std::vector<std::optional<std::string>> preds;
  };
  std::vector<Group> groups;
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& row = rows[i];
    const auto q = row.find(opts.question_field);
    if (q == row.end()) throw MissingFieldError(i + 1, opts.question_field);
    const auto a = row.find(opts.answer_field);
    if (a == row.end()) throw MissingFieldError(i + 1, opts.answer_field);
    const std::string question =
        q->is_string() ? q->get<std::string>() : q->dump();
    const std::string gt = token_of(*a).value_or("");
    std::optional<std::string> pred;
    if (auto p = row.find(opts.prediction_field); p != row.end()) {
      pred = token_of(*p);
    }
    auto [it, inserted] = index.try_emplace(question, groups.size());
    if (inserted) {
      std::string id;
      if (auto idv = row.find("id"); idv != row.end()) {
        id = idv->is_string() ? idv->get<std::string>() : idv->dump();
      } else {
        id = "q" + std::to_string(groups.size() + 1);
      }
      groups.push_back({std::move(id), gt, {}});
    } else if (groups[it->second].gt != gt) {
      throw DomainError("line " + std::to_string(i + 1) +
                        ": conflicting ground truths for one question");
    }
    groups[it->second].preds.push_back(std::move(pred));
  }
  std::vector<GradeRecord> out;
  out.reserve(groups.size());
  for (auto& g : groups) {
    out.push_back(grade(std::move(g.id), std::move(g.preds), std::move(g.gt),
                        opts.compare));
  }
  return out;
}

}  // namespace orbench
