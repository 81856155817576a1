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
#ifndef ORBENCH_TESTS_SUPPORT_COMPARE_CASES_HPP_
#define ORBENCH_TESTS_SUPPORT_COMPARE_CASES_HPP_

#include <array>
#include <optional>
#include <string_view>

namespace orbench::testing {

struct CompareCase {
  std::optional<std::string_view> pred;
  std::string_view gt;
  double tolerance;
  bool expected;
  std::string_view what;
};

// Frozen after cross-checking against compare_reference.py.
inline constexpr std::array<CompareCase, 25> kCompareCases = {{
    {"150", "150", 0.05, true, "exact"},
    {"150.4", "150", 0.05, true, "rounds down onto gt"},
    {"2.5", "2", 0.05, true, "half rounds to even below"},
    {"3.5", "4", 0.05, true, "half rounds to even above"},
    {"2.5", "3", 0.05, false, "half-even lands away from gt"},
    {"0.5", "0", 0.05, true, "zero branch, half to even 0"},
    {"1.5", "0", 0.05, false, "zero branch, half to even 2"},
    {"-0.4", "0", 0.05, true, "zero branch, negative zero"},
    {"0", "0.4", 0.05, true, "gt rounds to zero"},
    {"0.6", "0", 0.05, false, "zero branch, rounds to 1"},
    {"105", "100", 0.05, true, "relative error exactly at tolerance"},
    {"106", "100", 0.05, false, "just over tolerance"},
    {"95", "100", 0.05, true, "under by tolerance"},
    {"94.6", "100", 0.05, true, "rounding pulls inside"},
    {"94.4", "100", 0.05, false, "rounding leaves outside"},
    {"No Best Solution", "No Best Solution", 0.05, true, "both no-solution"},
    {std::nullopt, "No Best Solution", 0.05, false, "missing vs no-solution"},
    {"0", "No Best Solution", 0.05, false, "number vs no-solution"},
    {"No Best Solution", "0", 0.05, false, "no-solution vs zero"},
    {std::nullopt, "5", 0.05, false, "missing prediction"},
    {"abc", "5", 0.05, false, "unparseable prediction"},
    {"1e3", "1000", 0.05, true, "exponent notation"},
    {"-200", "-210", 0.05, true, "negative gt uses magnitude"},
    {"110", "100", 0.1, true, "wider tolerance boundary"},
    {"100.6", "100", 0.0, false, "zero tolerance after rounding"},
}};

}  // namespace orbench::testing

#endif  // ORBENCH_TESTS_SUPPORT_COMPARE_CASES_HPP_
