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
#include <gtest/gtest.h>

#include <cstdio>
#include <memory>
#include <random>

#include "compare_cases.hpp"
#include "orbench/errors.hpp"
#include "orbench/grader.hpp"
#include "orbench/text_util.hpp"
#include "pass_at_k_enum.hpp"
#include "test_env.hpp"

namespace orbench {
namespace {

TEST(PassAtK, MatchesSubsetEnumerationForSmallN) {
  for (int n = 1; n <= 12; ++n) {
    for (int c = 0; c <= n; ++c) {
      for (int k = 1; k <= n; ++k) {
        EXPECT_NEAR(pass_at_k(n, c, k), oracle::pass_at_k_by_subsets(n, c, k),
                    1e-9)
            << "n=" << n << " c=" << c << " k=" << k;
      }
    }
  }
}

TEST(PassAtK, SpotValues) {
  EXPECT_NEAR(pass_at_k(5, 2, 1), 0.4, 1e-12);
  EXPECT_NEAR(pass_at_k(10, 3, 5), 11.0 / 12.0, 1e-12);
  EXPECT_EQ(pass_at_k(4, 0, 4), 0.0);
  EXPECT_EQ(pass_at_k(4, 4, 1), 1.0);
  EXPECT_EQ(pass_at_k(4, 1, 4), 1.0);  // n - c < k
}

TEST(PassAtK, KEqualsOneIsTheSuccessRate) {
  for (int n = 1; n <= 40; ++n) {
    for (int c = 0; c <= n; ++c) {
      EXPECT_NEAR(pass_at_k(n, c, 1), static_cast<double>(c) / n, 1e-12);
    }
  }
}

TEST(PassAtK, MonotoneInKAndC) {
  for (int n = 1; n <= 30; ++n) {
    for (int c = 0; c <= n; ++c) {
      for (int k = 1; k <= n; ++k) {
        const double v = pass_at_k(n, c, k);
        EXPECT_GE(v, 0.0);
        EXPECT_LE(v, 1.0);
        if (k < n) EXPECT_LE(v, pass_at_k(n, c, k + 1) + 1e-12);
        if (c < n) EXPECT_LE(v, pass_at_k(n, c + 1, k) + 1e-12);
      }
    }
  }
}

TEST(PassAtK, RejectsOutOfDomain) {
  EXPECT_THROW(pass_at_k(0, 0, 1), DomainError);
  EXPECT_THROW(pass_at_k(5, 6, 1), DomainError);
  EXPECT_THROW(pass_at_k(5, -1, 1), DomainError);
  EXPECT_THROW(pass_at_k(5, 2, 0), DomainError);
  EXPECT_THROW(pass_at_k(5, 2, 6), DomainError);
}

TEST(Compare, RuleTable) {
  for (const auto& tc : testing::kCompareCases) {
    std::optional<std::string> pred;
    if (tc.pred) pred = std::string(*tc.pred);
    CompareOptions opts{tc.tolerance, false};
    EXPECT_EQ(compare(pred, tc.gt, opts), tc.expected) << tc.what;
  }
}

// Runs the transcribed reference rule over the same table. Cases the
// reference cannot evaluate (it raises) must be non-matches here.
TEST(Compare, RuleTableAgreesWithReferenceScript) {
  nlohmann::json cases = nlohmann::json::array();
  for (const auto& tc : testing::kCompareCases) {
    nlohmann::json pred = tc.pred ? nlohmann::json(std::string(*tc.pred))
                                  : nlohmann::json(nullptr);
    cases.push_back({pred, std::string(tc.gt), tc.tolerance});
  }
  testing::TempDir dir;
  write_text_file(dir / "cases.json", cases.dump());
  const std::string cmd = std::string("python3 ") + ORBENCH_TEST_ORACLES +
                          "/compare_reference.py < " +
                          (dir / "cases.json").string();
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
  ASSERT_TRUE(pipe);
  std::string out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, pipe.get())) out.append(buf, n);
  const auto verdicts = nlohmann::json::parse(out);
  ASSERT_EQ(verdicts.size(), testing::kCompareCases.size());
  for (std::size_t i = 0; i < verdicts.size(); ++i) {
    const auto& tc = testing::kCompareCases[i];
    if (verdicts[i].is_string()) {
      EXPECT_FALSE(tc.expected) << tc.what;
    } else {
      EXPECT_EQ(verdicts[i].get<bool>(), tc.expected) << tc.what;
    }
  }
}

TEST(Compare, StrictSkipsRounding) {
  CompareOptions strict{0.0, true};
  EXPECT_FALSE(compare(std::string("150.4"), "150", strict));
  EXPECT_TRUE(compare(std::string("150.0"), "150", strict));
}

TEST(Compare, ToleranceValidation) {
  EXPECT_THROW((CompareOptions{-0.1, false}.validate()), ConfigError);
  EXPECT_THROW((CompareOptions{1.0, false}.validate()), ConfigError);
  EXPECT_NO_THROW((CompareOptions{0.0, false}.validate()));
}

// Numbers that round onto the truth always match; those off by more than the
// tolerance after rounding never do.
TEST(Compare, PropertyAgainstIntegerArithmetic) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> gt_dist(-5000, 5000);
  std::uniform_real_distribution<double> noise(-0.49, 0.49);
  std::uniform_int_distribution<int> off(-400, 400);
  for (int i = 0; i < 5000; ++i) {
    const int g = gt_dist(rng);
    const int p = g + off(rng);
    const double pred = p + noise(rng);
    const bool expect = g == 0 ? std::abs(p) <= 0.05
                               : std::abs(static_cast<double>(p - g) / g) <= 0.05;
    EXPECT_EQ(compare(nlohmann::json(pred).dump(), std::to_string(g)), expect)
        << pred << " vs " << g;
  }
}

TEST(MajorityVote, FirstMaximumWins) {
  const std::vector<std::string> a = {"1", "2", "2", "1"};
  EXPECT_EQ(majority_vote(a), "1");
  const std::vector<std::string> b = {"3", "2", "2"};
  EXPECT_EQ(majority_vote(b), "2");
  EXPECT_FALSE(majority_vote(std::vector<std::string>{}));
}

TEST(MajorityVote, NormalizationRoundsNumbersAndDropsMissing) {
  const std::vector<std::optional<std::string>> preds = {
      "99.6", std::nullopt, "100", "No Best Solution", "2.5"};
  EXPECT_EQ(normalize_for_vote(preds),
            (std::vector<std::string>{"100", "100", "No Best Solution", "2"}));
}

TEST(Grade, AnyMatchAndMajority) {
  const auto r = grade("q", {"99.0", "140.0", "140.0"}, "100");
  EXPECT_TRUE(r.matched);
  EXPECT_EQ(r.majority_answer, "140");
  EXPECT_FALSE(r.majority_matched);
}

TEST(GradeRows, SingleGenerationFixture) {
  const auto rows = read_jsonl(testing::fixture("grade/single.jsonl"));
  const auto grades = grade_rows(rows);
  ASSERT_EQ(grades.size(), 8u);
  const auto m = compute_metrics(grades, false);
  EXPECT_EQ(m.k, 1u);
  EXPECT_DOUBLE_EQ(m.pass_at_k, 5.0 / 8.0);
  EXPECT_EQ(m.to_json().dump(), "{\"pass@1\":0.625}");
  EXPECT_EQ(grades[0].id, "q1");
}

TEST(GradeRows, ThreeGenerationsWithMajority) {
  const auto rows = read_jsonl(testing::fixture("grade/triple.jsonl"));
  const auto grades = grade_rows(rows);
  ASSERT_EQ(grades.size(), 4u);
  const auto m = compute_metrics(grades, true);
  EXPECT_EQ(m.k, 3u);
  EXPECT_DOUBLE_EQ(m.pass_at_k, 0.75);
  ASSERT_TRUE(m.mj_at_k);
  EXPECT_DOUBLE_EQ(*m.mj_at_k, 0.5);
  EXPECT_EQ(m.to_json().dump(4), "{\n    \"pass@3\": 0.75,\n    \"mj@3\": 0.5\n}");
}

TEST(GradeRows, MissingFieldsAndConflicts) {
  std::vector<nlohmann::ordered_json> rows = {
      {{"en_question", "a"}, {"en_answer", 1}},
      {{"en_question", "a"}, {"en_answer", 2}}};
  EXPECT_THROW(grade_rows(rows), DomainError);
  rows = {{{"en_question", "a"}}};
  try {
    grade_rows(rows);
    FAIL();
  } catch (const MissingFieldError& e) {
    EXPECT_EQ(e.field(), "en_answer");
  }
}

TEST(ComputeMetrics, RejectsEmptyAndRaggedInput) {
  EXPECT_THROW(compute_metrics({}, false), DomainError);
  std::vector<GradeRecord> g = {grade("a", {"1"}, "1"), grade("b", {"1", "2"}, "1")};
  EXPECT_THROW(compute_metrics(g, false), InconsistentArityError);
}

TEST(MetricsPath, ReplacesOnlyTheSuffix) {
  EXPECT_EQ(metrics_path_for("out/run.jsonl"), "out/run.metrics.json");
  EXPECT_EQ(metrics_path_for("out/run.json"), "out/run.metrics.json");
  EXPECT_EQ(metrics_path_for("out/run.txt"), "out/run.txt.metrics.json");
  EXPECT_EQ(metrics_path_for("a.jsonl.d/run.jsonl"), "a.jsonl.d/run.metrics.json");
}

TEST(MetricsFile, IndentedWithoutTrailingNewline) {
  testing::TempDir dir;
  Metrics m;
  m.k = 1;
  m.pass_at_k = 0.5;
  write_metrics_file(dir / "m.metrics.json", m);
  EXPECT_EQ(read_text_file(dir / "m.metrics.json"), "{\n    \"pass@1\": 0.5\n}");
}

}  // namespace
}  // namespace orbench
