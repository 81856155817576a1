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
#ifndef ORBENCH_TESTS_ORACLES_LP_ENUM_HPP_
#define ORBENCH_TESTS_ORACLES_LP_ENUM_HPP_

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

namespace orbench::oracle {

// A tiny LP in the form  max/min c.x  s.t.  A x <= b  (>= rows negated by the
// caller, equalities as two rows). Only bounded feasible regions are handled.
struct DenseLp {
  bool maximize = true;
  std::vector<double> c;
  std::vector<std::vector<double>> a;
  std::vector<double> b;
};

struct VertexOptimum {
  double objective = 0.0;
  std::vector<double> x;
};

namespace detail {

inline std::optional<std::vector<double>> solve_square(
    std::vector<std::vector<double>> m, std::vector<double> r) {
  const std::size_t n = r.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t i = col + 1; i < n; ++i) {
      if (std::fabs(m[i][col]) > std::fabs(m[piv][col])) piv = i;
    }
    if (std::fabs(m[piv][col]) < 1e-12) return std::nullopt;
    std::swap(m[piv], m[col]);
    std::swap(r[piv], r[col]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col) continue;
      const double f = m[i][col] / m[col][col];
      for (std::size_t j = col; j < n; ++j) m[i][j] -= f * m[col][j];
      r[i] -= f * r[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = r[i] / m[i][i];
  return x;
}

}  // namespace detail

// Intersects every n-subset of constraint hyperplanes and keeps the best
// feasible point. Exponential, fine for a handful of rows.
inline std::optional<VertexOptimum> best_vertex(const DenseLp& lp) {
  const std::size_t n = lp.c.size();
  const std::size_t m = lp.a.size();
  std::optional<VertexOptimum> best;
  std::vector<std::size_t> pick;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (pick.size() == n) {
      std::vector<std::vector<double>> sq;
      std::vector<double> rhs;
      for (auto i : pick) {
        sq.push_back(lp.a[i]);
        rhs.push_back(lp.b[i]);
      }
      auto x = detail::solve_square(sq, rhs);
      if (!x) return;
      for (std::size_t i = 0; i < m; ++i) {
        double lhs = 0;
        for (std::size_t j = 0; j < n; ++j) lhs += lp.a[i][j] * (*x)[j];
        if (lhs > lp.b[i] + 1e-7) return;
      }
      double obj = 0;
      for (std::size_t j = 0; j < n; ++j) obj += lp.c[j] * (*x)[j];
      if (!best || (lp.maximize ? obj > best->objective : obj < best->objective)) {
        best = VertexOptimum{obj, *x};
      }
      return;
    }
    for (std::size_t i = start; i < m; ++i) {
      pick.push_back(i);
      rec(i + 1);
      pick.pop_back();
    }
  };
  rec(0);
  return best;
}

}  // namespace orbench::oracle

#endif  // ORBENCH_TESTS_ORACLES_LP_ENUM_HPP_
