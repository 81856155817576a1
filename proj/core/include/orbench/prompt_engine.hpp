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
#ifndef ORBENCH_PROMPT_ENGINE_HPP_
#define ORBENCH_PROMPT_ENGINE_HPP_

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace orbench {

enum class TemplateName {
  Baseline,
  Judge,
  FewShot,
  Mathematician,
  Coder,
  ToolCalling
};

std::string_view to_string(TemplateName name);
std::optional<TemplateName> parse_template_name(std::string_view name);

inline constexpr std::string_view kQuestionPlaceholder = "{Question}";
inline constexpr std::string_view kMathModelPlaceholder = "{MathModel}";
inline constexpr std::string_view kDefaultSystemText =
    "You are a helpful assistant";
// Line in framed templates before which few-shot exemplars are spliced.
inline constexpr std::string_view kQuestionHeader = "# Question:";

struct PromptTemplate {
  TemplateName name = TemplateName::Baseline;
  std::string body;
  std::string system_text;

  // The token this template substitutes ({MathModel} for Coder, otherwise
  // {Question}).
  std::string_view placeholder() const;

  // Built-in wording for each template.
  static PromptTemplate builtin(TemplateName name);
  // Body read from a plain-text file; system text keeps the built-in value.
  static PromptTemplate from_file(TemplateName name,
                                  const std::filesystem::path& path);

  // Throws ConfigError unless the body holds exactly one placeholder.
  void validate() const;

  // Single-pass substitution at the template's placeholder followed by a
  // whitespace strip of the whole prompt. Placeholder-like text inside the
  // payload is never re-expanded.
  std::string render(std::string_view payload) const;
};

// A worked example: question, its mathematical model, and solver code.
struct Exemplar {
  std::string question;
  std::string math_model;
  std::string code;
};

// JSONL with question/math_model/code keys. Throws ConfigError when any
// part is blank.
std::vector<Exemplar> load_exemplar_pack(const std::filesystem::path& path);

// The few-shot worked example (integer diet problem) used by default.
Exemplar diet_exemplar();

// Serializes exemplars under "Question:", "Mathematical Model:" and "Code:"
// headers, code fenced as python.
std::string format_exemplars(std::span<const Exemplar> exemplars);

class PromptEngine {
 public:
  // Built-in templates.
  PromptEngine();
  // Built-ins overridden by any <name>.txt present in dir (baseline.txt,
  // judge.txt, mathematician.txt, coder.txt, tool_calling.txt).
  static PromptEngine from_directory(const std::filesystem::path& dir);

  const PromptTemplate& get(TemplateName name) const;
  void set(PromptTemplate tmpl);

  std::string render_baseline(std::string_view question) const;
  // Question and prior answer are each stripped and joined with a space.
  std::string render_judge(std::string_view question,
                           std::string_view prior_answer) const;
  // Zero exemplars yields render_baseline(question) byte-for-byte.
  std::string render_fsl(std::span<const Exemplar> exemplars,
                         std::string_view question) const;
  // Few-shot exemplars spliced into the judge prompt.
  std::string render_fsl_judge(std::span<const Exemplar> exemplars,
                               std::string_view question,
                               std::string_view prior_answer) const;
  std::string render_mathematician(std::string_view question) const;
  std::string render_coder(std::string_view math_model) const;
  std::string render_tool_calling(std::string_view question) const;

  const std::string& system_text(TemplateName name) const {
    return get(name).system_text;
  }

 private:
  std::map<TemplateName, PromptTemplate> templates_;
};

}  // namespace orbench

#endif  // ORBENCH_PROMPT_ENGINE_HPP_
