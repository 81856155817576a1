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
#include "orbench/prompt_engine.hpp"
#include "orbench/text_util.hpp"
#include "test_env.hpp"

namespace orbench {
namespace {

TEST(Templates, BuiltinsValidateAndNameRoundTrip) {
  for (auto t : {TemplateName::Baseline, TemplateName::Judge,
                 TemplateName::FewShot, TemplateName::Mathematician,
                 TemplateName::Coder, TemplateName::ToolCalling}) {
    EXPECT_NO_THROW(PromptTemplate::builtin(t).validate());
    EXPECT_EQ(parse_template_name(to_string(t)), t);
  }
  EXPECT_EQ(PromptTemplate::builtin(TemplateName::Coder).placeholder(),
            kMathModelPlaceholder);
  EXPECT_EQ(PromptTemplate::builtin(TemplateName::Baseline).placeholder(),
            kQuestionPlaceholder);
}

TEST(Templates, BaselineRenderIsTrimmedAndVerbatim) {
  PromptEngine engine;
  const std::string p = engine.render_baseline("How many chairs?");
  EXPECT_EQ(p,
            "Below is an operations research question. Build a mathematical "
            "model and corresponding python code using coptpy that "
            "appropriately addresses the question.\n# Question:\nHow many "
            "chairs?\n\n# Response:");
  EXPECT_EQ(engine.system_text(TemplateName::Baseline), kDefaultSystemText);
}

TEST(Templates, PayloadIsInsertedLiterally) {
  PromptEngine engine;
  const std::string p = engine.render_baseline("uses {MathModel} and {Question}");
  EXPECT_NE(p.find("uses {MathModel} and {Question}"), std::string::npos);
}

TEST(Templates, JudgeCarriesQuestionAndPriorAnswer) {
  PromptEngine engine;
  const std::string p = engine.render_judge("  Q text ", "\nprior code\n");
  EXPECT_NE(p.find("# Question:\nQ text prior code \n"), std::string::npos);
  EXPECT_NE(p.find("judge the correctness"), std::string::npos);
}

TEST(Templates, FewShotSplicesExemplarsBeforeQuestion) {
  PromptEngine engine;
  const std::vector<Exemplar> ex = {diet_exemplar()};
  const std::string p = engine.render_fsl(ex, "Q");
  const auto at_example = p.find("Mathematical Model:");
  const auto at_question = p.find("# Question:\nQ");
  ASSERT_NE(at_example, std::string::npos);
  ASSERT_NE(at_question, std::string::npos);
  EXPECT_LT(at_example, at_question);
  EXPECT_EQ(engine.render_fsl({}, "Q"), engine.render_baseline("Q"));

  const std::string j = engine.render_fsl_judge(ex, "Q", "A");
  EXPECT_LT(j.find("Code:\n```python"), j.find("# Question:\nQ A "));
}

TEST(Templates, RoleTemplatesHaveRoleSystemText) {
  PromptEngine engine;
  EXPECT_NE(engine.system_text(TemplateName::Mathematician).find("mathematician"),
            std::string::npos);
  EXPECT_NE(engine.render_coder("min x").find("# Mathematical Model:\nmin x"),
            std::string::npos);
  EXPECT_NE(engine.render_tool_calling("Q").find("Lookup the documentation"),
            std::string::npos);
}

TEST(Templates, PlaceholderCountIsEnforced) {
  PromptTemplate t = PromptTemplate::builtin(TemplateName::Baseline);
  t.body = "no placeholder";
  EXPECT_THROW(t.validate(), ConfigError);
  t.body = "{Question} twice {Question}";
  EXPECT_THROW(t.validate(), ConfigError);
  PromptEngine engine;
  EXPECT_THROW(engine.set(t), ConfigError);
}

TEST(Templates, DirectoryOverridesOnlyPresentFiles) {
  testing::TempDir dir;
  write_text_file(dir / "baseline.txt", "Solve: {Question}\n");
  const auto engine = PromptEngine::from_directory(dir.path());
  EXPECT_EQ(engine.render_baseline("x"), "Solve: x");
  EXPECT_EQ(engine.render_judge("q", "a"), PromptEngine().render_judge("q", "a"));

  write_text_file(dir / "coder.txt", "no slot here");
  EXPECT_THROW(PromptEngine::from_directory(dir.path()), ConfigError);
}

TEST(Exemplars, BundledPackMatchesBuiltinDiet) {
  const auto pack = load_exemplar_pack(testing::data_dir() / "exemplars" / "diet.jsonl");
  ASSERT_EQ(pack.size(), 1u);
  const auto d = diet_exemplar();
  EXPECT_EQ(pack[0].question, d.question);
  EXPECT_EQ(pack[0].math_model, d.math_model);
  EXPECT_EQ(pack[0].code, d.code);
}

TEST(Exemplars, BlankPartsRejected) {
  testing::TempDir dir;
  write_text_file(dir / "p.jsonl",
                  R"({"question":"q","math_model":" ","code":"c"})" "\n");
  EXPECT_THROW(load_exemplar_pack(dir / "p.jsonl"), ConfigError);
}

TEST(Exemplars, FormatIsStable) {
  const std::vector<Exemplar> ex = {{"Q1 ", "M1", "C1"}, {"Q2", "M2", "C2"}};
  EXPECT_EQ(format_exemplars(ex),
            "Question:\nQ1\n\nMathematical Model:\nM1\n\nCode:\n```python\nC1\n```\n\n"
            "Question:\nQ2\n\nMathematical Model:\nM2\n\nCode:\n```python\nC2\n```\n\n");
}

}  // namespace
}  // namespace orbench
