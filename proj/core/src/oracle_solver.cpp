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
#include "orbench/oracle_solver.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "orbench/text_util.hpp"

namespace orbench {
namespace {

constexpr double kPivotTol = 1e-9;

// Standard-form tableau solved by maximization.
class Tableau {
 public:
  Tableau(std::size_t m, std::size_t n)
      : m_(m), n_(n), t_(m + 1, std::vector<double>(n + 1, 0.0)), basis_(m) {}

  double& at(std::size_t i, std::size_t j) { return t_[i][j]; }
  double rhs(std::size_t i) const { return t_[i][n_]; }
  std::vector<std::size_t>& basis() { return basis_; }
  std::vector<double>& objective_row() { return t_[m_]; }
  std::size_t rows() const { return m_; }
  std::size_t cols() const { return n_; }

  void pivot(std::size_t r, std::size_t c) {
    const double p = t_[r][c];
    for (double& v : t_[r]) v /= p;
    t_[r][c] = 1.0;
    for (std::size_t i = 0; i <= m_; ++i) {
      if (i == r) continue;
      const double f = t_[i][c];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j <= n_; ++j) t_[i][j] -= f * t_[r][j];
      t_[i][c] = 0.0;
    }
    basis_[r] = c;
  }

  // Bland's rule. Returns false when unbounded.
  bool optimize(const std::vector<bool>& allowed) {
    while (true) {
      std::size_t enter = n_;
      for (std::size_t j = 0; j < n_; ++j) {
        if (allowed[j] && t_[m_][j] < -kPivotTol) {
          enter = j;
          break;
        }
      }
      if (enter == n_) return true;
      double best = kInf;
      for (std::size_t i = 0; i < m_; ++i) {
        if (t_[i][enter] > kPivotTol) {
          best = std::min(best, t_[i][n_] / t_[i][enter]);
        }
      }
      std::size_t leave = m_;
      for (std::size_t i = 0; i < m_; ++i) {
        if (t_[i][enter] <= kPivotTol) continue;
        if (t_[i][n_] / t_[i][enter] > best + kPivotTol) continue;
        if (leave == m_ || basis_[i] < basis_[leave]) leave = i;
      }
      if (leave == m_) return false;
      pivot(leave, enter);
    }
  }

  // Sets the objective row to maximize sum(coef_j * x_j) and prices out
  // the basic columns.
  void set_objective(const std::vector<double>& coef) {
    auto& obj = t_[m_];
    std::fill(obj.begin(), obj.end(), 0.0);
    for (std::size_t j = 0; j < coef.size(); ++j) obj[j] = -coef[j];
    for (std::size_t i = 0; i < m_; ++i) {
      const double f = obj[basis_[i]];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j <= n_; ++j) obj[j] -= f * t_[i][j];
    }
  }

  void drop_row(std::size_t r) {
    t_.erase(t_.begin() + static_cast<std::ptrdiff_t>(r));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
    --m_;
  }

 private:
  std::size_t m_, n_;
  std::vector<std::vector<double>> t_;
  std::vector<std::size_t> basis_;
};

// How an original variable maps onto non-negative columns:
// x = offset + sign * col[pos] (- col[neg] when free).
struct VarMap {
  double offset = 0.0;
  double sign = 1.0;
  std::size_t pos = 0;
  std::optional<std::size_t> neg;
};

Solution solve_lp_with_bounds(const LinearProgram& lp,
                              const std::vector<double>& lo,
                              const std::vector<double>& hi) {
  const std::size_t nv = lp.num_vars();
  Solution sol;
  sol.nodes = 1;
  for (std::size_t j = 0; j < nv; ++j) {
    if (lo[j] > hi[j] + kFeasibilityTol) return sol;  // infeasible box
  }

  // Column layout: structural columns first.
  std::vector<VarMap> map(nv);
  std::size_t ncols = 0;
  struct Constraint {
    std::vector<std::pair<std::size_t, double>> terms;
    Relation rel;
    double rhs;
  };
  std::vector<Constraint> cons;
  for (std::size_t j = 0; j < nv; ++j) {
    VarMap& v = map[j];
    if (std::isfinite(lo[j])) {
      v.offset = lo[j];
      v.pos = ncols++;
      if (std::isfinite(hi[j])) {
        cons.push_back({{{v.pos, 1.0}}, Relation::LessEqual, hi[j] - lo[j]});
      }
    } else if (std::isfinite(hi[j])) {
      v.offset = hi[j];
      v.sign = -1.0;
      v.pos = ncols++;
    } else {
      v.pos = ncols++;
      v.neg = ncols++;
    }
  }
  for (const auto& row : lp.rows) {
    Constraint c{{}, row.rel, row.rhs};
    for (std::size_t j = 0; j < nv; ++j) {
      const double a = row.a[j];
      if (a == 0.0) continue;
      c.rhs -= a * map[j].offset;
      c.terms.emplace_back(map[j].pos, a * map[j].sign);
      if (map[j].neg) c.terms.emplace_back(*map[j].neg, -a);
    }
    cons.push_back(std::move(c));
  }
  // Non-negative right-hand sides.
  for (auto& c : cons) {
    if (c.rhs < 0) {
      c.rhs = -c.rhs;
      for (auto& t : c.terms) t.second = -t.second;
      if (c.rel == Relation::LessEqual) {
        c.rel = Relation::GreaterEqual;
      } else if (c.rel == Relation::GreaterEqual) {
        c.rel = Relation::LessEqual;
      }
    }
  }

  const std::size_t m = cons.size();
  std::size_t n_slack = 0, n_art = 0;
  for (const auto& c : cons) {
    if (c.rel != Relation::Equal) ++n_slack;
    if (c.rel != Relation::LessEqual) ++n_art;
  }
  const std::size_t art_start = ncols + n_slack;
  const std::size_t total = art_start + n_art;
  Tableau tab(m, total);
  std::size_t slack = ncols, art = art_start;
  for (std::size_t i = 0; i < m; ++i) {
    for (auto [col, a] : cons[i].terms) tab.at(i, col) += a;
    tab.at(i, total) = cons[i].rhs;
    switch (cons[i].rel) {
      case Relation::LessEqual:
        tab.at(i, slack) = 1.0;
        tab.basis()[i] = slack++;
        break;
      case Relation::GreaterEqual:
        tab.at(i, slack++) = -1.0;
        tab.at(i, art) = 1.0;
        tab.basis()[i] = art++;
        break;
      case Relation::Equal:
        tab.at(i, art) = 1.0;
        tab.basis()[i] = art++;
        break;
    }
  }

  std::vector<bool> allowed(total, true);
  if (n_art > 0) {
    std::vector<double> phase1(total, 0.0);
    for (std::size_t j = art_start; j < total; ++j) phase1[j] = -1.0;
    tab.set_objective(phase1);
    tab.optimize(allowed);
    double infeasibility = 0.0;
    for (std::size_t i = 0; i < tab.rows(); ++i) {
      if (tab.basis()[i] >= art_start) infeasibility += tab.rhs(i);
    }
    if (infeasibility > 1e-7) return sol;
    // Drive remaining zero-level artificials out of the basis.
    for (std::size_t i = 0; i < tab.rows();) {
      if (tab.basis()[i] < art_start) {
        ++i;
        continue;
      }
      std::size_t col = art_start;
      for (std::size_t j = 0; j < art_start; ++j) {
        if (std::fabs(tab.at(i, j)) > kPivotTol) {
          col = j;
          break;
        }
      }
      if (col == art_start) {
        tab.drop_row(i);  // redundant constraint
      } else {
        tab.pivot(i, col);
        ++i;
      }
    }
    for (std::size_t j = art_start; j < total; ++j) allowed[j] = false;
  }

  const double dir = lp.sense == Sense::Maximize ? 1.0 : -1.0;
  std::vector<double> phase2(total, 0.0);
  for (std::size_t j = 0; j < nv; ++j) {
    phase2[map[j].pos] += dir * lp.c[j] * map[j].sign;
    if (map[j].neg) phase2[*map[j].neg] -= dir * lp.c[j];
  }
  tab.set_objective(phase2);
  if (!tab.optimize(allowed)) {
    sol.status = SolveStatus::Unbounded;
    return sol;
  }

  std::vector<double> col_value(total, 0.0);
  for (std::size_t i = 0; i < tab.rows(); ++i) {
    col_value[tab.basis()[i]] = tab.rhs(i);
  }
  sol.x.resize(nv);
  for (std::size_t j = 0; j < nv; ++j) {
    double v = map[j].offset + map[j].sign * col_value[map[j].pos];
    if (map[j].neg) v -= col_value[*map[j].neg];
    // Clean rounding noise at the bounds.
    if (std::fabs(v - lo[j]) < kFeasibilityTol) v = lo[j];
    if (std::fabs(v - hi[j]) < kFeasibilityTol) v = hi[j];
    if (std::fabs(v) < kFeasibilityTol) v = 0.0;
    sol.x[j] = v;
  }
  sol.status = SolveStatus::Optimal;
  sol.objective = objective_value(lp, sol.x);
  return sol;
}

std::string_view relation_text(Relation r) {
  switch (r) {
    case Relation::LessEqual:
      return "<=";
    case Relation::Equal:
      return "==";
    case Relation::GreaterEqual:
      return ">=";
  }
  return "?";
}

std::string_view kind_text(VarKind k) {
  switch (k) {
    case VarKind::Continuous:
      return "continuous";
    case VarKind::Integer:
      return "integer";
    case VarKind::Binary:
      return "binary";
  }
  return "?";
}

double bound_from_json(const nlohmann::json& v, double fallback) {
  if (v.is_null()) return fallback;
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s == "inf" || s == "+inf") return kInf;
    if (s == "-inf") return -kInf;
    throw ConfigError("bad bound '" + s + "'");
  }
  return v.get<double>();
}

std::string number_token(double v) {
  return nlohmann::json(v).dump();
}

}  // namespace

double LinearProgram::lower_of(std::size_t j) const {
  double l = lower.empty() ? 0.0 : lower[j];
  if (kind_of(j) == VarKind::Binary) l = std::max(l, 0.0);
  return l;
}

double LinearProgram::upper_of(std::size_t j) const {
  double u = upper.empty() ? kInf : upper[j];
  if (kind_of(j) == VarKind::Binary) u = std::min(u, 1.0);
  return u;
}

VarKind LinearProgram::kind_of(std::size_t j) const {
  return kinds.empty() ? VarKind::Continuous : kinds[j];
}

bool LinearProgram::has_integers() const {
  return std::any_of(kinds.begin(), kinds.end(),
                     [](VarKind k) { return k != VarKind::Continuous; });
}

LinearProgram& LinearProgram::add_row(std::vector<double> a, Relation rel,
                                      double rhs) {
  rows.push_back({std::move(a), rel, rhs});
  return *this;
}

void LinearProgram::validate() const {
  const std::size_t n = c.size();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].a.size() != n) {
      throw DimensionMismatchError("row " + std::to_string(i) + " has " +
                                   std::to_string(rows[i].a.size()) +
                                   " coefficients, expected " +
                                   std::to_string(n));
    }
  }
  auto check = [n](std::size_t size, const char* what) {
    if (size != 0 && size != n) {
      throw DimensionMismatchError(std::string(what) + " has " +
                                   std::to_string(size) + " entries, expected " +
                                   std::to_string(n));
    }
  };
  check(lower.size(), "lower bounds");
  check(upper.size(), "upper bounds");
  check(kinds.size(), "integrality");
  check(names.size(), "names");
  for (std::size_t j = 0; j < n; ++j) {
    if (lower_of(j) > upper_of(j)) {
      throw DomainError("variable " + std::to_string(j) +
                        " has lower bound above upper bound");
    }
  }
}

LinearProgram lp_from_json(const nlohmann::json& j) {
  LinearProgram lp;
  const std::string sense = j.value("sense", "maximize");
  if (sense == "maximize" || sense == "max") {
    lp.sense = Sense::Maximize;
  } else if (sense == "minimize" || sense == "min") {
    lp.sense = Sense::Minimize;
  } else {
    throw ConfigError("unknown sense '" + sense + "'");
  }
  lp.c = j.at("c").get<std::vector<double>>();
  for (const auto& r : j.value("rows", nlohmann::json::array())) {
    Row row;
    row.a = r.at("a").get<std::vector<double>>();
    const std::string rel = r.at("rel").get<std::string>();
    if (rel == "<=") {
      row.rel = Relation::LessEqual;
    } else if (rel == ">=") {
      row.rel = Relation::GreaterEqual;
    } else if (rel == "=" || rel == "==") {
      row.rel = Relation::Equal;
    } else {
      throw ConfigError("unknown relation '" + rel + "'");
    }
    row.rhs = r.at("rhs").get<double>();
    lp.rows.push_back(std::move(row));
  }
  if (auto b = j.find("bounds"); b != j.end()) {
    for (const auto& pair : *b) {
      lp.lower.push_back(bound_from_json(pair.at(0), 0.0));
      lp.upper.push_back(bound_from_json(pair.at(1), kInf));
    }
  }
  if (auto k = j.find("integrality"); k != j.end()) {
    for (const auto& v : *k) {
      const std::string s = v.get<std::string>();
      if (s == "continuous") {
        lp.kinds.push_back(VarKind::Continuous);
      } else if (s == "integer") {
        lp.kinds.push_back(VarKind::Integer);
      } else if (s == "binary") {
        lp.kinds.push_back(VarKind::Binary);
      } else {
        throw ConfigError("unknown integrality '" + s + "'");
      }
    }
  }
  if (auto nm = j.find("names"); nm != j.end()) {
    lp.names = nm->get<std::vector<std::string>>();
  }
  lp.nonlinear = j.value("nonlinear", false);
  lp.validate();
  return lp;
}

nlohmann::ordered_json to_json(const LinearProgram& lp) {
  nlohmann::ordered_json j;
  j["sense"] = lp.sense == Sense::Maximize ? "maximize" : "minimize";
  j["c"] = lp.c;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& r : lp.rows) {
    rows.push_back(
        {{"a", r.a}, {"rel", std::string(relation_text(r.rel))}, {"rhs", r.rhs}});
  }
  j["rows"] = std::move(rows);
  nlohmann::ordered_json bounds = nlohmann::ordered_json::array();
  for (std::size_t v = 0; v < lp.num_vars(); ++v) {
    const double lo = lp.lower.empty() ? 0.0 : lp.lower[v];
    const double hi = lp.upper.empty() ? kInf : lp.upper[v];
    bounds.push_back(
        {std::isfinite(lo) ? nlohmann::ordered_json(lo)
                           : nlohmann::ordered_json("-inf"),
         std::isfinite(hi) ? nlohmann::ordered_json(hi)
                           : nlohmann::ordered_json(nullptr)});
  }
  j["bounds"] = std::move(bounds);
  nlohmann::ordered_json kinds = nlohmann::ordered_json::array();
  for (std::size_t v = 0; v < lp.num_vars(); ++v) {
    kinds.push_back(std::string(kind_text(lp.kind_of(v))));
  }
  j["integrality"] = std::move(kinds);
  if (!lp.names.empty()) j["names"] = lp.names;
  if (lp.nonlinear) j["nonlinear"] = true;
  return j;
}

std::string_view to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal:
      return "optimal";
    case SolveStatus::Infeasible:
      return "infeasible";
    case SolveStatus::Unbounded:
      return "unbounded";
  }
  return "?";
}

double objective_value(const LinearProgram& lp, const std::vector<double>& x) {
  double z = 0.0;
  for (std::size_t j = 0; j < lp.num_vars(); ++j) z += lp.c[j] * x[j];
  return z;
}

double max_violation(const LinearProgram& lp, const std::vector<double>& x) {
  double worst = 0.0;
  for (const auto& r : lp.rows) {
    double lhs = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) lhs += r.a[j] * x[j];
    double v = 0.0;
    switch (r.rel) {
      case Relation::LessEqual:
        v = lhs - r.rhs;
        break;
      case Relation::GreaterEqual:
        v = r.rhs - lhs;
        break;
      case Relation::Equal:
        v = std::fabs(lhs - r.rhs);
        break;
    }
    worst = std::max(worst, v);
  }
  for (std::size_t j = 0; j < x.size(); ++j) {
    worst = std::max(worst, lp.lower_of(j) - x[j]);
    worst = std::max(worst, x[j] - lp.upper_of(j));
  }
  return worst;
}

Solution solve_lp(const LinearProgram& lp) {
  lp.validate();
  std::vector<double> lo(lp.num_vars()), hi(lp.num_vars());
  for (std::size_t j = 0; j < lp.num_vars(); ++j) {
    lo[j] = lp.lower_of(j);
    hi[j] = lp.upper_of(j);
  }
  return solve_lp_with_bounds(lp, lo, hi);
}

Solution solve_milp(const LinearProgram& lp, const MilpOptions& opts) {
  lp.validate();
  const std::size_t n = lp.num_vars();
  const double dir = lp.sense == Sense::Maximize ? 1.0 : -1.0;

  struct Node {
    double bound;  // relaxation objective in maximization terms
    std::size_t seq;
    std::vector<double> lo, hi;
    Solution relax;
  };
  auto worse = [](const Node& a, const Node& b) {
    if (a.bound != b.bound) return a.bound < b.bound;
    return a.seq > b.seq;  // FIFO among equal bounds
  };
  std::priority_queue<Node, std::vector<Node>, decltype(worse)> open(worse);

  std::vector<double> lo(n), hi(n);
  for (std::size_t j = 0; j < n; ++j) {
    lo[j] = lp.lower_of(j);
    hi[j] = lp.upper_of(j);
    if (lp.kind_of(j) != VarKind::Continuous) {
      lo[j] = std::ceil(lo[j] - opts.integrality_tol);
      hi[j] = std::floor(hi[j] + opts.integrality_tol);
    }
  }

  Solution best;
  best.status = SolveStatus::Infeasible;
  std::size_t nodes = 0, seq = 0;
  auto push = [&](std::vector<double> l, std::vector<double> h) -> bool {
    Solution r = solve_lp_with_bounds(lp, l, h);
    ++nodes;
    if (r.status == SolveStatus::Unbounded) return false;
    if (r.status != SolveStatus::Optimal) return true;
    open.push({dir * r.objective, seq++, std::move(l), std::move(h),
               std::move(r)});
    return true;
  };
  if (!push(lo, hi)) {
    Solution u;
    u.status = SolveStatus::Unbounded;
    u.nodes = nodes;
    return u;
  }

  double incumbent = -kInf;
  while (!open.empty()) {
    Node node = open.top();
    open.pop();
    if (node.bound <= incumbent + 1e-9 * std::max(1.0, std::fabs(incumbent))) {
      continue;
    }
    if (nodes > opts.max_nodes) {
      throw Error("branch-and-bound node limit exceeded");
    }
    std::size_t branch = n;
    double best_frac = -1.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (lp.kind_of(j) == VarKind::Continuous) continue;
      const double v = node.relax.x[j];
      const double f = v - std::floor(v);
      const double dist = std::min(f, 1.0 - f);
      if (dist > opts.integrality_tol && dist > best_frac) {
        best_frac = dist;
        branch = j;
      }
    }
    if (branch == n) {
      Solution s = node.relax;
      for (std::size_t j = 0; j < n; ++j) {
        if (lp.kind_of(j) != VarKind::Continuous) s.x[j] = std::round(s.x[j]);
      }
      s.objective = objective_value(lp, s.x);
      const double v = dir * s.objective;
      if (v > incumbent) {
        incumbent = v;
        best = std::move(s);
      }
      continue;
    }
    const double v = node.relax.x[branch];
    {
      auto h = node.hi;
      h[branch] = std::floor(v);
      push(node.lo, std::move(h));
    }
    {
      auto l = node.lo;
      l[branch] = std::ceil(v);
      push(std::move(l), node.hi);
    }
  }
  best.nodes = nodes;
  return best;
}

Solution solve(const LinearProgram& lp) {
  return lp.has_integers() ? solve_milp(lp) : solve_lp(lp);
}

std::string_view to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::Confirmed:
      return "confirmed";
    case VerdictKind::Mismatch:
      return "mismatch";
    case VerdictKind::NotApplicable:
      return "not_applicable";
  }
  return "?";
}

nlohmann::ordered_json Verdict::to_json(const std::string& id) const {
  nlohmann::ordered_json j;
  j["id"] = id;
  j["verdict"] = std::string(orbench::to_string(kind));
  j["oracle_answer"] = oracle_answer ? nlohmann::ordered_json(*oracle_answer)
                                     : nlohmann::ordered_json(nullptr);
  j["delta"] =
      delta ? nlohmann::ordered_json(*delta) : nlohmann::ordered_json(nullptr);
  j["reason"] = reason;
  return j;
}

Verdict verify_ground_truth(const BenchmarkInstance& instance,
                            const LinearProgram* model,
                            const CompareOptions& opts) {
  Verdict v;
  if (model == nullptr) {
    v.reason = "no verified model";
    return v;
  }
  if (model->nonlinear) {
    v.reason = "model is nonlinear";
    return v;
  }
  const Solution s = solve(*model);
  if (s.status == SolveStatus::Optimal) {
    v.oracle_answer = number_token(s.objective);
  } else {
    v.oracle_answer = std::string(kNoBestSolution);
  }
  const Answer& gt = instance.ground_truth;
  if (compare(v.oracle_answer, gt.token(), opts)) {
    v.kind = VerdictKind::Confirmed;
  } else {
    v.kind = VerdictKind::Mismatch;
    v.reason = "oracle " + std::string(to_string(s.status)) + " " +
               *v.oracle_answer + " vs stored " + gt.token();
  }
  if (s.status == SolveStatus::Optimal && gt.value()) {
    v.delta = s.objective - *gt.value();
  }
  return v;
}

std::map<std::string, LinearProgram> load_verified_models(
    const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw UpstreamFileError("models directory not found: " + dir.string());
  }
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".json") {
      files.push_back(e.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::map<std::string, LinearProgram> out;
  for (const auto& f : files) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(read_text_file(f));
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(f.string() + ": " + e.what());
    }
    std::string id = j.value("id", f.stem().string());
    try {
      out[id] = lp_from_json(j);
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(f.string() + ": " + e.what());
    }
  }
  return out;
}

}  // namespace orbench
