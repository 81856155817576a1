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

#include "orbench/errors.hpp"
#include "orbench/grader.hpp"
#include "orbench/taxonomy.hpp"
#include "orbench/text_util.hpp"
#include "taxonomy_corpus.hpp"
#include "test_env.hpp"

namespace orbench {
namespace {

ExecutionRecord failed_with(std::string message, std::string script = "") {
  ExecutionRecord r;
  r.state = ExecutionState::failed(std::move(message));
  r.script = std::move(script);
  return r;
}

using testing::load_corpus;

TEST(Labels, NamesRoundTripLoosely) {
  for (auto l : kAllLabels) EXPECT_EQ(parse_label(to_string(l)), l);
  EXPECT_EQ(parse_label("attribute_error"), TaxonomyLabel::AttributeError);
  EXPECT_EQ(parse_label("ResultsNotOptimal"), TaxonomyLabel::ResultsNotOptimal);
  EXPECT_EQ(parse_label("optimal solution"), TaxonomyLabel::OptimalSolution);
  EXPECT_FALSE(parse_label("runtime"));
}

TEST(Classify, TabledExemplars) {
  EXPECT_EQ(classify(failed_with("\ncoptcore.CoptError: Invalid attribute name 'update'\n"), false),
            TaxonomyLabel::AttributeError);
  EXPECT_EQ(classify(failed_with("\n  File \"script.py\", line 3\nSyntaxError: invalid syntax\n"), false),
            TaxonomyLabel::SyntaxError);
  EXPECT_EQ(classify(failed_with("\ncoptcore.CoptError: something failed\n"), false),
            TaxonomyLabel::LogicalError);
}

TEST(Classify, MatchedAndSuccessfulRuns) {
  ExecutionRecord r;
  r.state = ExecutionState::of(ExecutionStatus::BestSolutionFound);
  EXPECT_EQ(classify(r, true), TaxonomyLabel::OptimalSolution);
  EXPECT_EQ(classify(r, false), TaxonomyLabel::ResultsNotOptimal);
  r.state = ExecutionState::of(ExecutionStatus::NoBestSolutionFound);
  EXPECT_EQ(classify(r, false), TaxonomyLabel::ResultsNotOptimal);
  // A matched grade wins even over a failed state.
  EXPECT_EQ(classify(failed_with("SyntaxError"), true), TaxonomyLabel::OptimalSolution);
}

TEST(Classify, SelfNamedAccessorIsLogical) {
  EXPECT_EQ(missing_attribute_name("AttributeError: 'Var' object has no attribute 'y'"),
            "y");
  EXPECT_EQ(missing_attribute_name("Invalid attribute name 'update'"), "update");
  EXPECT_FALSE(missing_attribute_name("ValueError: bad"));
  EXPECT_TRUE(has_self_named_access("print(y.y)", "y"));
  EXPECT_FALSE(has_self_named_access("print(xy.y)", "y"));
  EXPECT_FALSE(has_self_named_access("print(y.yy)", "y"));
  EXPECT_EQ(classify(failed_with("AttributeError: 'Var' object has no attribute 'y'",
                                 "y = model.addVar()\nprint(y.y)"),
                     false),
            TaxonomyLabel::LogicalError);
}

TEST(Classify, NonSolverAttributeErrorsAreLogical) {
  EXPECT_EQ(classify(failed_with("AttributeError: 'dict' object has no attribute 'x'"), false),
            TaxonomyLabel::LogicalError);
  EXPECT_EQ(classify(failed_with("AttributeError: 'Model' object has no attribute 'optimize'"), false),
            TaxonomyLabel::AttributeError);
}

TEST(Classify, CorpusMatchesExpectedLabels) {
  const auto corpus = load_corpus();
  ASSERT_EQ(corpus.size(), 16u);
  for (const auto& row : corpus) {
    EXPECT_EQ(classify(row.exec, row.matched), row.expected) << row.id;
  }
}

TEST(Report, CountsSumAndAccuracyIsOptimalShare) {
  std::vector<LabeledOutcome> outcomes;
  for (const auto& row : load_corpus()) {
    outcomes.push_back({row.id, row.benchmark, classify(row.exec, row.matched), {}, {}});
  }
  const auto report = report_distribution(outcomes);
  std::size_t total = 0;
  for (const auto& r : report.rows) {
    std::size_t sum = 0;
    for (auto c : r.counts) sum += c;
    EXPECT_EQ(sum, r.total);
    total += r.total;
    ASSERT_TRUE(r.accuracy());
    EXPECT_DOUBLE_EQ(*r.accuracy(), static_cast<double>(r.counts[4]) / r.total);
  }
  EXPECT_EQ(total, outcomes.size());
  const auto all = report_distribution(outcomes, false);
  ASSERT_EQ(all.rows.size(), 1u);
  EXPECT_EQ(all.rows[0].benchmark, "all");
  EXPECT_DOUBLE_EQ(*all.rows[0].accuracy(), 1.0 / 16.0);
}

// Slice counts read off the per-benchmark pie charts.
TEST(Report, PieSliceCountsReproduce) {
  const std::string csv =
      "benchmark,label,count\n"
      "IndustryOR,Attribute Error,23\nIndustryOR,Syntax Error,2\n"
      "IndustryOR,Logical Error,2\nIndustryOR,Results not Optimal,7\n"
      "IndustryOR,Optimal Solution,66\n"
      "NL4OPT,Attribute Error,26\nNL4OPT,Syntax Error,0\nNL4OPT,Logical Error,36\n"
      "NL4OPT,Results not Optimal,15\nNL4OPT,Optimal Solution,168\n";
  const auto report = DistributionReport::from_counts_csv(csv);
  ASSERT_EQ(report.rows.size(), 2u);
  EXPECT_EQ(report.rows[0].benchmark, "IndustryOR");
  EXPECT_EQ(report.rows[0].total, 100u);
  EXPECT_DOUBLE_EQ(*report.rows[0].accuracy(), 0.66);
  EXPECT_EQ(report.rows[1].total, 245u);
  EXPECT_NEAR(*report.rows[1].accuracy(), 168.0 / 245.0, 1e-12);
  EXPECT_EQ(report.counts_csv(), csv);
  const std::string pie = report.pie_csv();
  EXPECT_NE(pie.find("IndustryOR,Attribute Error,23,23.0\n"), std::string::npos);
  EXPECT_NE(pie.find("NL4OPT,Optimal Solution,168,68.6\n"), std::string::npos);
  EXPECT_EQ(pie.find("NL4OPT,Syntax Error"), std::string::npos);
}

TEST(Report, EmptyAndMerge) {
  const auto empty = report_distribution({});
  EXPECT_TRUE(empty.rows.empty());
  EXPECT_EQ(empty.render_table(), "no outcomes\n");
  EXPECT_EQ(empty.counts_csv(), "benchmark,label,count\n");

  std::vector<LabeledOutcome> a = {{"1", "X", TaxonomyLabel::OptimalSolution, {}, {}}};
  std::vector<LabeledOutcome> b = {{"2", "X", TaxonomyLabel::SyntaxError, {}, {}},
                                   {"3", "Y", TaxonomyLabel::OptimalSolution, {}, {}}};
  auto ra = report_distribution(a);
  ra.merge(report_distribution(b));
  ASSERT_EQ(ra.rows.size(), 2u);
  EXPECT_EQ(ra.rows[0].total, 2u);
  EXPECT_DOUBLE_EQ(*ra.rows[0].accuracy(), 0.5);
  EXPECT_THROW(DistributionReport::from_counts_csv("X,Nope,1\n"), ConfigError);
  EXPECT_THROW(DistributionReport::from_counts_csv("X,Syntax Error,-1\n"), ConfigError);
}

TEST(Overrides, PointUpdateAndUnknownId) {
  std::vector<LabeledOutcome> outcomes = {
      {"id6", "X", TaxonomyLabel::AttributeError, {}, {}},
      {"id7", "X", TaxonomyLabel::AttributeError, {}, {}}};
  const std::vector<OverrideEntry> ov = {{"id7", TaxonomyLabel::LogicalError, "y.y"}};
  apply_overrides(outcomes, ov);
  EXPECT_EQ(outcomes[0].label, TaxonomyLabel::AttributeError);
  EXPECT_FALSE(outcomes[0].computed);
  EXPECT_EQ(outcomes[1].label, TaxonomyLabel::LogicalError);
  EXPECT_EQ(outcomes[1].computed, TaxonomyLabel::AttributeError);

  const auto before = outcomes;
  apply_overrides(outcomes, {});
  EXPECT_EQ(outcomes[1].label, before[1].label);

  const std::vector<OverrideEntry> bad = {{"id6", TaxonomyLabel::SyntaxError, ""},
                                          {"id9", TaxonomyLabel::SyntaxError, ""}};
  EXPECT_THROW(apply_overrides(outcomes, bad), UnknownInstanceIdError);
  EXPECT_EQ(outcomes[0].label, TaxonomyLabel::AttributeError);  // nothing applied
}

TEST(Overrides, FileLoading) {
  testing::TempDir dir;
  write_text_file(dir / "o.jsonl",
                  R"({"id":"a","label":"Logical Error","note":"n"})" "\n"
                  R"({"id":3,"label":"syntax_error"})" "\n");
  const auto ov = load_overrides(dir / "o.jsonl");
  ASSERT_EQ(ov.size(), 2u);
  EXPECT_EQ(ov[1].id, "3");
  EXPECT_EQ(ov[1].label, TaxonomyLabel::SyntaxError);
  write_text_file(dir / "bad.jsonl", R"({"id":"a","label":"Other"})" "\n");
  EXPECT_THROW(load_overrides(dir / "bad.jsonl"), ConfigError);
}

}  // namespace
}  // namespace orbench
