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

#ifndef ORBENCH_TEXT_UTIL_HPP_
#define ORBENCH_TEXT_UTIL_HPP_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace orbench {

// Python str.strip() semantics over ASCII whitespace.
std::string_view trim(std::string_view s);
std::string trim_copy(std::string_view s);

// Parses text the way Python's float() does (surrounding whitespace,
// optional sign, digit-group underscores, exponent). Returns nullopt for
// anything float() would reject and for inf/nan, which the grading rules
// cannot round.
std::optional<double> parse_finite_real(std::string_view text);

// Round-half-to-even, matching Python's round(float).
double round_half_even(double x);

// Replaces every occurrence of needle with replacement in one pass.
std::string replace_all(std::string_view haystack, std::string_view needle,
                        std::string_view replacement);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

// One JSON object per non-blank line. Throws MalformedLineError with the
// 1-based line number on bad JSON.
std::vector<nlohmann::ordered_json> read_jsonl(
    const std::filesystem::path& path);
void write_jsonl(const std::filesystem::path& path,
                 const std::vector<nlohmann::ordered_json>& rows);

// Compact single-line dump with UTF-8 passthrough (ensure_ascii=False).
std::string dump_line(const nlohmann::ordered_json& j);

}  // namespace orbench

#endif  // ORBENCH_TEXT_UTIL_HPP_
