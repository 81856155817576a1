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
#ifndef ORBENCH_ORACLE_SOLVER_HPP_
#define ORBENCH_ORACLE_SOLVER_HPP_

#include <cstddef>
#include <filesystem>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "orbench/benchmark_store.hpp"
#include "orbench/errors.hpp"
#include "orbench/grader.hpp"

namespace orbench {

enum class Sense { Maximize, Minimize };
enum class Relation { LessEqual, Equal, GreaterEqual };
enum class VarKind { Continuous, Integer, Binary };

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct Row {
  std::vector<double> a;
  Relation rel = Relation::LessEqual;
  double rhs = 0.0;
};

class DimensionMismatchError : public Error {
 public:
  using Error::Error;
};

// Dense desk-scale model. Empty lower/upper/kinds mean the defaults
// (0, +inf, Continuous) for every variable.
struct LinearProgram {
  Sense sense = Sense::Maximize;
  std::vector<double> c;
  std::vector<Row> rows;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<VarKind> kinds;
  std::vector<std::string> names;  // optional, for reports
  // Marks a model outside the linear scope; the oracle refuses to verify it.
  bool nonlinear = false;

  std::size_t num_vars() const { return c.size(); }
  double lower_of(std::size_t j) const;
  double upper_of(std::size_t j) const;
  VarKind kind_of(std::size_t j) const;
  bool has_integers() const;

  LinearProgram& add_row(std::vector<double> a, Relation rel, double rhs);

  // Throws DimensionMismatchError on ragged rows or vectors and DomainError
  // on lower > upper.
  void validate() const;
};

// {"sense": "maximize", "c": [...], "rows": [{"a": [...], "rel": "<=",
//  "rhs": 1}], "bounds": [[lo, hi|null], ...], "integrality": [...],
//  "names": [...], "nonlinear": false}
LinearProgram lp_from_json(const nlohmann::json& j);
nlohmann::ordered_json to_json(const LinearProgram& lp);

enum class SolveStatus { Optimal, Infeasible, Unbounded };
std::string_view to_string(SolveStatus s);

struct Solution {
  SolveStatus status = SolveStatus::Infeasible;
  double objective = 0.0;
  std::vector<double> x;
  std::size_t nodes = 0;  // branch-and-bound nodes explored (1 for LPs)
};

inline constexpr double kFeasibilityTol = 1e-9;

struct MilpOptions {
  std::size_t max_nodes = 1'000'000;
  double integrality_tol = 1e-6;
};

// Two-phase dense simplex with Bland's rule. Integrality is ignored.
Solution solve_lp(const LinearProgram& lp);

// Best-bound branch-and-bound over LP relaxations, branching on the most
// fractional variable. Throws Error when max_nodes is exceeded.
Solution solve_milp(const LinearProgram& lp, const MilpOptions& opts = {});

// solve_milp when the model has integer variables, solve_lp otherwise.
Solution solve(const LinearProgram& lp);

// Largest violation of any row or bound by x; 0 when feasible.
double max_violation(const LinearProgram& lp, const std::vector<double>& x);
double objective_value(const LinearProgram& lp, const std::vector<double>& x);

enum class VerdictKind { Confirmed, Mismatch, NotApplicable };
std::string_view to_string(VerdictKind k);

struct Verdict {
  VerdictKind kind = VerdictKind::NotApplicable;
  // oracle - ground truth, when both are numbers.
  std::optional<double> delta;
  std::optional<std::string> oracle_answer;  // numeric text or NBS token
  std::string reason;

  nlohmann::ordered_json to_json(const std::string& id) const;
};

// Compares the oracle optimum with the stored answer under grader::compare.
// No model, or a nonlinear one, gives NotApplicable.
Verdict verify_ground_truth(const BenchmarkInstance& instance,
                            const LinearProgram* model,
                            const CompareOptions& opts = {});

// Every *.json under dir, keyed by the "id" field or else the file stem.
std::map<std::string, LinearProgram> load_verified_models(
    const std::filesystem::path& dir);

}  // namespace orbench

#endif  // ORBENCH_ORACLE_SOLVER_HPP_
