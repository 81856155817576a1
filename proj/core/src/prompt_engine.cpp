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
#include "orbench/prompt_engine.hpp"

#include <nlohmann/json.hpp>

#include "orbench/errors.hpp"
#include "orbench/text_util.hpp"

namespace orbench {
namespace {

constexpr std::string_view kBaselineBody = R"(
Below is an operations research question. Build a mathematical model and corresponding python code using coptpy that appropriately addresses the question.
# Question:
{Question}

# Response:
)";

constexpr std::string_view kToolCallingBody = R"(
Below is an operations research question. Build a mathematical model and corresponding python code using coptpy that appropriately addresses the question. Lookup the documentation and signatures for any coptpy functions you want to use via the provided tool.
# Question:
{Question}

# Response:
)";

constexpr std::string_view kJudgeBody = R"(
Below is an operations research question and answer generated. Evaluate the responses and judge the correctness of the response based on the context, Evaluate the correctness of the generated mathematical model and Python code and come up with corrected version if the formulation is incorrect.
# Question:
{Question}

# Response:
)";

constexpr std::string_view kMathematicianBody = R"(
Generates a mathematical model for the given operations research question. You are an expert mathematician specializing in operations research. Given the following question, formulate an appropriate mathematical model.
# Question:
{Question}
)";

constexpr std::string_view kCoderBody = R"(
Generates Python Coptpy code from the given mathematical model. You are a Python expert specializing in optimization using Coptpy. Convert the following mathematical model into Python code using Coptpy.
# Mathematical Model:
{MathModel}
)";

constexpr std::string_view kMathematicianSystem =
    "You are an expert mathematician specializing in operations research.";
constexpr std::string_view kCoderSystem =
    "You are a Python expert specializing in optimization using Coptpy.";

std::size_t count_occurrences(std::string_view hay, std::string_view needle) {
  std::size_t n = 0;
  for (std::size_t pos = hay.find(needle); pos != std::string_view::npos;
       pos = hay.find(needle, pos + needle.size())) {
    ++n;
  }
  return n;
}

// Inserts block before the question header of body (or at the front when
// the body has no header).
std::string splice_before_question(std::string_view body,
                                   std::string_view block) {
  std::size_t at = body.find(kQuestionHeader);
  if (at == std::string_view::npos) at = 0;
  std::string out(body.substr(0, at));
  out += block;
  out += body.substr(at);
  return out;
}

std::string judge_payload(std::string_view question,
                          std::string_view prior_answer) {
  std::string payload(trim(question));
  payload += ' ';
  payload += trim(prior_answer);
  payload += ' ';
  return payload;
}

}  // namespace

std::string_view to_string(TemplateName name) {
  switch (name) {
    case TemplateName::Baseline:
      return "baseline";
    case TemplateName::Judge:
      return "judge";
    case TemplateName::FewShot:
      return "few_shot";
    case TemplateName::Mathematician:
      return "mathematician";
    case TemplateName::Coder:
      return "coder";
    case TemplateName::ToolCalling:
      return "tool_calling";
  }
  return "?";
}

std::optional<TemplateName> parse_template_name(std::string_view name) {
  for (auto t : {TemplateName::Baseline, TemplateName::Judge,
                 TemplateName::FewShot, TemplateName::Mathematician,
                 TemplateName::Coder, TemplateName::ToolCalling}) {
    if (to_string(t) == name) return t;
  }
  return std::nullopt;
}

std::string_view PromptTemplate::placeholder() const {
  return name == TemplateName::Coder ? kMathModelPlaceholder
                                     : kQuestionPlaceholder;
}

PromptTemplate PromptTemplate::builtin(TemplateName name) {
  PromptTemplate t;
  t.name = name;
  t.system_text = std::string(kDefaultSystemText);
  switch (name) {
    case TemplateName::Baseline:
    case TemplateName::FewShot:
      t.body = std::string(kBaselineBody);
      break;
    case TemplateName::Judge:
      t.body = std::string(kJudgeBody);
      break;
    case TemplateName::ToolCalling:
      t.body = std::string(kToolCallingBody);
      break;
    case TemplateName::Mathematician:
      t.body = std::string(kMathematicianBody);
      t.system_text = std::string(kMathematicianSystem);
      break;
    case TemplateName::Coder:
      t.body = std::string(kCoderBody);
      t.system_text = std::string(kCoderSystem);
      break;
  }
  return t;
}

PromptTemplate PromptTemplate::from_file(TemplateName name,
                                         const std::filesystem::path& path) {
  PromptTemplate t = builtin(name);
  t.body = read_text_file(path);
  t.validate();
  return t;
}

void PromptTemplate::validate() const {
  if (count_occurrences(body, placeholder()) != 1) {
    throw ConfigError("template '" + std::string(to_string(name)) +
                      "' must contain exactly one " +
                      std::string(placeholder()));
  }
}

std::string PromptTemplate::render(std::string_view payload) const {
  const std::size_t at = body.find(placeholder());
  if (at == std::string::npos) return trim_copy(body);
  std::string out = body.substr(0, at);
  out += payload;
  out += std::string_view(body).substr(at + placeholder().size());
  return trim_copy(out);
}

std::vector<Exemplar> load_exemplar_pack(const std::filesystem::path& path) {
  std::vector<Exemplar> out;
  for (const auto& row : read_jsonl(path)) {
    Exemplar e{row.value("question", ""), row.value("math_model", ""),
               row.value("code", "")};
    if (trim(e.question).empty() || trim(e.math_model).empty() ||
        trim(e.code).empty()) {
      throw ConfigError("exemplar " + std::to_string(out.size() + 1) +
                        " in " + path.string() + " has a blank part");
    }
    out.push_back(std::move(e));
  }
  return out;
}

Exemplar diet_exemplar() {
  Exemplar e;
  e.question =
      "This is a integer Liner Programming problem. Imagine you're a college "
      "student aiming to balance your diet and budget. You have identified "
      "nine different food items from your local grocery store that you can "
      "include in your menu: Chicken, Rice, Apples, Steak, Lentils, Fish, "
      "Tofu, Cheese, and Bread. Each of these foods provides varying amounts "
      "of protein, carbohydrates, and calories, and each comes with its own "
      "price. Here is the detailed nutritional content and cost for each "
      "food item: Chicken: Gives you 15 grams of protein, 18 grams of "
      "carbohydrates, and 300 calories for $4.Rice: Offers 1 gram of "
      "protein, 25 grams of carbohydrates, and 267 calories for $2.Apples: "
      "Provide 1 gram of protein, 21 grams of carbohydrates, and 266 "
      "calories for $5. Steak: Contains 6 grams of protein, 3 grams of "
      "carbohydrates, and 119 calories for a higher cost of $10.Lentils: "
      "These give 3 grams of protein, 7 grams of carbohydrates, and 166 "
      "calories for just $2. Fish: Delivers 17 grams of protein, 13 grams of "
      "carbohydrates, and 129 calories for $8. Tofu: Offers a substantial 18 "
      "grams of protein, 27 grams of carbohydrates, and 216 calories for "
      "$10.Cheese: Gives 12 grams of protein, 17 grams of carbohydrates, and "
      "76 calories for $9.Bread: Provides 2 grams of protein, a massive 30 "
      "grams of carbohydrates, and 258 calories for $4. Your daily dietary "
      "goal is to consume at least 90 grams of protein, 105 grams of "
      "carbohydrates, and 1805 calories. Your challenge is to figure out how "
      "to meet these nutritional requirements from the food options "
      "mentioned above while spending the least amount of money. So, what is "
      "the least amount of money you need to spend to meet your daily "
      "dietary requirements? Please note that the response should be a "
      "single answer, asking for only the optimal value.";
  e.math_model = R"(Variables:
- x1..x9: integer quantities of Chicken, Rice, Apples, Steak, Lentils, Fish, Tofu, Cheese and Bread.
- Z: total cost.
Objective:
Minimize Z = 4x1 + 2x2 + 5x3 + 10x4 + 2x5 + 8x6 + 10x7 + 9x8 + 4x9
Subject to:
15x1 + 1x2 + 1x3 + 6x4 + 3x5 + 17x6 + 18x7 + 12x8 + 2x9 >= 90 (protein)
18x1 + 25x2 + 21x3 + 3x4 + 7x5 + 13x6 + 27x7 + 17x8 + 30x9 >= 105 (carbohydrates)
300x1 + 267x2 + 266x3 + 119x4 + 166x5 + 129x6 + 216x7 + 76x8 + 258x9 >= 1805 (calories)
x1..x9 >= 0 and integer)";
  e.code = R"py(import coptpy as cp
from coptpy import COPT
# Create environment and model
env = cp.Envr("DietProblem")
model = env.createModel("DietProblem")
# Food data
foods = ['Chicken', 'Rice', 'Apples', 'Steak', 'Lentils', 'Fish', 'Tofu', 'Cheese', 'Bread']
cost = [4, 2, 5, 10, 2, 8, 10, 9, 4]
protein = [15, 1, 1, 6, 3, 17, 18, 12, 2]
carbs = [18, 25, 21, 3, 7, 13, 27, 17, 30]
calories = [300, 267, 266, 119, 166, 129, 216, 76, 258]
# Decision variables
x = model.addVars(foods, lb=0.0, nameprefix="x",vtype=COPT.INTEGER)
# Objective: Minimize total cost
model.setObjective(sum(cost[i] * x[foods[i]] for i in range(len(foods))), COPT.MINIMIZE)
# Nutritional constraints
model.addConstr(sum(protein[i] * x[foods[i]] for i in range(len(foods))) >= 90, "protein_req")
model.addConstr(sum(carbs[i] * x[foods[i]] for i in range(len(foods))) >= 105, "carbs_req")
model.addConstr(sum(calories[i] * x[foods[i]] for i in range(len(foods))) >= 1805, "calories_req")
# Solve the model
model.solve()
# Output the result
if model.status == COPT.OPTIMAL:
    print(f"{model.objval:.2f}")
else:
    print("No optimal solution found."))py";
  return e;
}

std::string format_exemplars(std::span<const Exemplar> exemplars) {
  std::string out;
  for (const auto& e : exemplars) {
    out += "Question:\n";
    out += trim(e.question);
    out += "\n\nMathematical Model:\n";
    out += trim(e.math_model);
    out += "\n\nCode:\n```python\n";
    out += trim(e.code);
    out += "\n```\n\n";
  }
  return out;
}

PromptEngine::PromptEngine() {
  for (auto t : {TemplateName::Baseline, TemplateName::Judge,
                 TemplateName::FewShot, TemplateName::Mathematician,
                 TemplateName::Coder, TemplateName::ToolCalling}) {
    templates_.emplace(t, PromptTemplate::builtin(t));
  }
}

PromptEngine PromptEngine::from_directory(const std::filesystem::path& dir) {
  PromptEngine engine;
  for (auto t : {TemplateName::Baseline, TemplateName::Judge,
                 TemplateName::FewShot, TemplateName::Mathematician,
                 TemplateName::Coder, TemplateName::ToolCalling}) {
    const auto file = dir / (std::string(to_string(t)) + ".txt");
    if (std::filesystem::exists(file)) {
      engine.set(PromptTemplate::from_file(t, file));
    }
  }
  return engine;
}

const PromptTemplate& PromptEngine::get(TemplateName name) const {
  return templates_.at(name);
}

void PromptEngine::set(PromptTemplate tmpl) {
  tmpl.validate();
  templates_.insert_or_assign(tmpl.name, std::move(tmpl));
}

std::string PromptEngine::render_baseline(std::string_view question) const {
  return get(TemplateName::Baseline).render(question);
}

std::string PromptEngine::render_judge(std::string_view question,
                                       std::string_view prior_answer) const {
  return get(TemplateName::Judge).render(judge_payload(question, prior_answer));
}

std::string PromptEngine::render_fsl(std::span<const Exemplar> exemplars,
                                     std::string_view question) const {
  if (exemplars.empty()) return render_baseline(question);
  PromptTemplate t = get(TemplateName::FewShot);
  t.body = splice_before_question(t.body, format_exemplars(exemplars));
  return t.render(question);
}

std::string PromptEngine::render_fsl_judge(std::span<const Exemplar> exemplars,
                                           std::string_view question,
                                           std::string_view prior_answer) const {
  PromptTemplate t = get(TemplateName::Judge);
  t.body = splice_before_question(t.body, format_exemplars(exemplars));
  return t.render(judge_payload(question, prior_answer));
}

std::string PromptEngine::render_mathematician(
    std::string_view question) const {
  return get(TemplateName::Mathematician).render(question);
}

std::string PromptEngine::render_coder(std::string_view math_model) const {
  return get(TemplateName::Coder).render(math_model);
}

std::string PromptEngine::render_tool_calling(
    std::string_view question) const {
  return get(TemplateName::ToolCalling).render(question);
}

}  // namespace orbench
