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
#ifndef ORBENCH_TESTS_SUPPORT_STUB_SCAN_HPP_
#define ORBENCH_TESTS_SUPPORT_STUB_SCAN_HPP_

#include <filesystem>
#include <fstream>
#include <regex>
#include <set>
#include <string>

namespace orbench::testing {

// Line-regex reading of a stub: top-level classes, their four-space
// members, and top-level functions.
inline std::set<std::string> declared_members(const std::filesystem::path& path) {
  static const std::regex cls(R"(^class (\w+))");
  static const std::regex top_def(R"(^def (\w+)\()");
  static const std::regex member_def(R"(^    def (\w+)\()");
  static const std::regex member_attr(R"(^    (\w+)\s*:)");
  std::set<std::string> out;
  std::ifstream in(path);
  std::string line, current;
  std::smatch m;
  while (std::getline(in, line)) {
    if (std::regex_search(line, m, cls)) {
      current = m[1];
    } else if (std::regex_search(line, m, top_def)) {
      current.clear();
      out.insert(m[1]);
    } else if (!current.empty() && (std::regex_search(line, m, member_def) ||
                                    std::regex_search(line, m, member_attr))) {
      out.insert(current + "." + m[1].str());
    }
  }
  return out;
}

}  // namespace orbench::testing

#endif  // ORBENCH_TESTS_SUPPORT_STUB_SCAN_HPP_
