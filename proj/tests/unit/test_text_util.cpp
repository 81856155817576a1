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

#include <cmath>

#include "orbench/errors.hpp"
#include "orbench/text_util.hpp"
#include "test_env.hpp"

namespace orbench {
namespace {

TEST(Trim, StripsAsciiWhitespace) {
  EXPECT_EQ(trim("  a b\t\n"), "a b");
  EXPECT_EQ(trim(""), "");
  EXPECT_EQ(trim(" \n "), "");
}

TEST(ParseFiniteReal, AcceptsWhatFloatAccepts) {
  EXPECT_EQ(parse_finite_real("12"), 12.0);
  EXPECT_EQ(parse_finite_real(" -3.5 "), -3.5);
  EXPECT_EQ(parse_finite_real("1e3"), 1000.0);
  EXPECT_EQ(parse_finite_real("+.5"), 0.5);
}

TEST(ParseFiniteReal, RejectsJunkAndNonFinite) {
  EXPECT_FALSE(parse_finite_real(""));
  EXPECT_FALSE(parse_finite_real("abc"));
  EXPECT_FALSE(parse_finite_real("12abc"));
  EXPECT_FALSE(parse_finite_real("nan"));
  EXPECT_FALSE(parse_finite_real("inf"));
  EXPECT_FALSE(parse_finite_real("No Best Solution"));
}

TEST(RoundHalfEven, MatchesBankersRounding) {
  EXPECT_EQ(round_half_even(0.5), 0.0);
  EXPECT_EQ(round_half_even(1.5), 2.0);
  EXPECT_EQ(round_half_even(2.5), 2.0);
  EXPECT_EQ(round_half_even(-2.5), -2.0);
  EXPECT_EQ(round_half_even(2.4999), 2.0);
  EXPECT_EQ(round_half_even(2.6), 3.0);
}

TEST(RoundHalfEven, AgreesWithNearbyintOnGrid) {
  // Under the default rounding mode nearbyint is round-half-even.
  for (int i = -400; i <= 400; ++i) {
    const double x = i / 8.0;
    EXPECT_EQ(round_half_even(x), std::nearbyint(x)) << x;
  }
}

TEST(ReplaceAll, ReplacesEveryOccurrence) {
  EXPECT_EQ(replace_all("a/tmp/x.py b /tmp/x.py", "/tmp/x.py", "s"), "as b s");
  EXPECT_EQ(replace_all("aaa", "a", "aa"), "aaaaaa");
  EXPECT_EQ(replace_all("abc", "", "x"), "abc");
}

TEST(Jsonl, RoundTripsAndPreservesKeyOrder) {
  testing::TempDir dir;
  std::vector<nlohmann::ordered_json> rows;
  nlohmann::ordered_json a;
  a["z"] = 1;
  a["a"] = "x\ny";
  rows.push_back(a);
  rows.push_back(nlohmann::ordered_json{{"k", nullptr}});
  write_jsonl(dir / "r.jsonl", rows);
  const auto back = read_jsonl(dir / "r.jsonl");
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[0].begin().key(), "z");
  EXPECT_EQ(back[0]["a"], "x\ny");
  EXPECT_EQ(read_text_file(dir / "r.jsonl"),
            "{\"z\":1,\"a\":\"x\\ny\"}\n{\"k\":null}\n");
}

TEST(Jsonl, SkipsBlankLinesAndReportsBadOnes) {
  testing::TempDir dir;
  write_text_file(dir / "r.jsonl", "{\"a\":1}\n\n{bad\n");
  try {
    read_jsonl(dir / "r.jsonl");
    FAIL() << "expected MalformedLineError";
  } catch (const MalformedLineError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(ReadTextFile, MissingFileIsUpstreamError) {
  EXPECT_THROW(read_text_file("/nonexistent/orbench.txt"), UpstreamFileError);
}

}  // namespace
}  // namespace orbench
