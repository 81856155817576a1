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
#ifndef ORBENCH_TESTS_ORACLES_PASS_AT_K_ENUM_HPP_
#define ORBENCH_TESTS_ORACLES_PASS_AT_K_ENUM_HPP_

#include <bit>
#include <cstdint>

namespace orbench::oracle {

// Fraction of k-subsets of n samples (the first c correct) that contain at
// least one correct sample, by walking every bitmask.
inline double pass_at_k_by_subsets(int n, int c, int k) {
  const std::uint32_t correct = (1u << c) - 1u;
  std::uint64_t total = 0, hit = 0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (std::popcount(mask) != k) continue;
    ++total;
    if (mask & correct) ++hit;
  }
  return static_cast<double>(hit) / static_cast<double>(total);
}

}  // namespace orbench::oracle

#endif  // ORBENCH_TESTS_ORACLES_PASS_AT_K_ENUM_HPP_
