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
#ifndef ORBENCH_TOOL_INDEX_HPP_
#define ORBENCH_TOOL_INDEX_HPP_

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

struct Parameter {
  std::string name;
  std::string annotation;
  std::string default_value;

  friend bool operator==(const Parameter&, const Parameter&) = default;
};

enum class MemberKind { Function, Method, Property, Attribute };

struct SignatureEntry {
  std::string qualified_name;  // "Model.addVar", "quicksum"
  MemberKind kind = MemberKind::Function;
  std::vector<Parameter> parameters;
  std::string return_annotation;
  std::string doc;

  // Segment after the last '.'.
  std::string_view short_name() const;
  // "Model.addVar(self, lb: float = 0.0) -> Var"
  std::string signature_text() const;

  friend bool operator==(const SignatureEntry&,
                         const SignatureEntry&) = default;
};

nlohmann::json to_json(const SignatureEntry& e);
SignatureEntry signature_from_json(const nlohmann::json& j);

struct ToolQuery {
  std::string name;
  friend bool operator==(const ToolQuery&, const ToolQuery&) = default;
};

struct ToolResult {
  enum class Kind { Found, Suggestions, Empty };
  Kind kind = Kind::Empty;
  std::optional<SignatureEntry> entry;   // Found
  std::vector<std::string> suggestions;  // Suggestions, at most 3

  friend bool operator==(const ToolResult&, const ToolResult&) = default;
};

std::string_view to_string(ToolResult::Kind kind);
nlohmann::json to_json(const ToolResult& r);
ToolResult tool_result_from_json(const nlohmann::json& j);

// Text block the gateway injects as the tool turn.
std::string render_tool_result(const ToolResult& result);

class StubParseError : public Error {
 public:
  StubParseError(const std::filesystem::path& path, std::size_t line,
                 const std::string& why)
      : Error(path.string() + ":" + std::to_string(line) + ": " + why),
        path_(path),
        line_(line) {}
  const std::filesystem::path& path() const { return path_; }
  std::size_t line() const { return line_; }

 private:
  std::filesystem::path path_;
  std::size_t line_;
};

struct LookupOptions {
  std::size_t max_suggestions = 3;
  // Levenshtein distance divided by the longer name's length.
  double max_normalized_distance = 0.5;
};

std::size_t levenshtein(std::string_view a, std::string_view b);

// Searchable index over interface-stub (.pyi) declarations. Immutable once
// built, so concurrent lookups are safe.
class SignatureIndex {
 public:
  SignatureIndex() = default;

  // Parses every stub in order; a later duplicate replaces an earlier one
  // and leaves a warning. A sidecar JSON object {qualified_name: doc} may
  // supply or replace docs.
  static SignatureIndex build(
      std::span<const std::filesystem::path> stub_paths,
      const std::optional<std::filesystem::path>& sidecar_docs = {});
  static SignatureIndex from_stub_text(std::string_view text,
                                       const std::filesystem::path& origin);
  static SignatureIndex from_json(const nlohmann::json& j);

  ToolResult lookup(std::string_view name,
                    const LookupOptions& options = {}) const;

  const std::map<std::string, SignatureEntry>& entries() const {
    return entries_;
  }
  const std::vector<std::string>& warnings() const { return warnings_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }

  // Deterministic: entries sorted by qualified name.
  nlohmann::json to_json() const;

 private:
  void add_stub_text(std::string_view text, const std::filesystem::path& origin);
  void insert(SignatureEntry entry, const std::filesystem::path& origin,
              std::size_t line);

  std::map<std::string, SignatureEntry> entries_;
  std::vector<std::string> warnings_;
};

}  // namespace orbench

#endif  // ORBENCH_TOOL_INDEX_HPP_
