#pragma once

// Dense two-phase tableau simplex, Bland's rule. Intended for small LPs
// (a few hundred variables); large instances of the matching LP go through
// the flow formulation in brubach.hpp instead.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace iidmatch {

inline constexpr double kLpTolerance = 1e-9;

struct LinearProgram {
  struct Row {
    std::vector<std::pair<int, double>> coefs;  // sparse a
    double upper = 0.0;                          // a . x <= upper
  };

  int var_count = 0;
  std::vector<double> objective;  // maximize
  std::vector<Row> rows;
  std::vector<std::pair<double, double>> bounds;  // [lo, hi] per variable

  explicit LinearProgram(int n = 0)
      : var_count(n), objective(static_cast<std::size_t>(n), 0.0),
        bounds(static_cast<std::size_t>(n), {0.0, 0.0}) {}

  void add_row(std::vector<std::pair<int, double>> coefs, double upper) {
    rows.push_back({std::move(coefs), upper});
  }

  std::optional<std::string> validate() const {
    if (var_count < 0) return "negative variable count";
    if (objective.size() != static_cast<std::size_t>(var_count)) return "objective size mismatch";
    if (bounds.size() != static_cast<std::size_t>(var_count)) return "bounds size mismatch";
    for (int j = 0; j < var_count; ++j) {
      auto [lo, hi] = bounds[static_cast<std::size_t>(j)];
      if (!std::isfinite(lo) || !std::isfinite(hi)) return "variable " + std::to_string(j) + " has an infinite bound";
      if (lo > hi) return "variable " + std::to_string(j) + " has lo > hi";
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (!std::isfinite(rows[i].upper)) return "row " + std::to_string(i) + " has an infinite bound";
      for (auto [j, a] : rows[i].coefs)
        if (j < 0 || j >= var_count || !std::isfinite(a))
          return "row " + std::to_string(i) + " has a bad coefficient";
    }
    return std::nullopt;
  }
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LPSolution {
  std::vector<double> values;
  double objective = 0.0;
  LpStatus status = LpStatus::optimal;
};

namespace detail {

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols) : m_(rows), n_(cols), a_((rows + 1) * (cols + 1), 0.0), basis_(rows) {}

  double& at(std::size_t i, std::size_t j) { return a_[i * (n_ + 1) + j]; }
  double& rhs(std::size_t i) { return at(i, n_); }
  double& obj(std::size_t j) { return at(m_, j); }  // reduced costs (maximize: enter if > 0)
  std::size_t rows() const { return m_; }
  std::size_t cols() const { return n_; }
  std::vector<std::size_t>& basis() { return basis_; }

  void pivot(std::size_t r, std::size_t c) {
    const double p = at(r, c);
    for (std::size_t j = 0; j <= n_; ++j) at(r, j) /= p;
    for (std::size_t i = 0; i <= m_; ++i) {
      if (i == r) continue;
      const double factor = at(i, c);
      if (factor == 0.0) continue;
      for (std::size_t j = 0; j <= n_; ++j) at(i, j) -= factor * at(r, j);
      at(i, c) = 0.0;
    }
    basis_[r] = c;
  }

  /// Bland's rule iterations over columns [0, usable). Returns false if unbounded.
  bool run(std::size_t usable) {
    for (;;) {
      std::size_t enter = usable;
      for (std::size_t j = 0; j < usable; ++j)
        if (obj(j) > kLpTolerance) {
          enter = j;
          break;
        }
      if (enter == usable) return true;
      std::size_t leave = m_;
      double best = 0.0;
      for (std::size_t i = 0; i < m_; ++i) {
        const double a = at(i, enter);
        if (a <= kLpTolerance) continue;
        const double ratio = rhs(i) / a;
        if (leave == m_ || ratio < best - kLpTolerance ||
            (ratio <= best + kLpTolerance && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == m_) return false;
      pivot(leave, enter);
    }
  }

 private:
  std::size_t m_, n_;
  std::vector<double> a_;
  std::vector<std::size_t> basis_;
};

}  // namespace detail

/// Maximizes lp.objective . x subject to the rows and variable bounds.
inline LPSolution solve_lp_max(const LinearProgram& lp) {
  if (auto err = lp.validate()) throw std::invalid_argument("solve_lp_max: " + *err);
  const auto n = static_cast<std::size_t>(lp.var_count);

  // Shift x = lo + y so y >= 0; upper bounds become explicit rows.
  struct DenseRow {
    std::vector<double> a;
    double b;
  };
  std::vector<DenseRow> rows;
  rows.reserve(lp.rows.size() + n);
  for (const auto& r : lp.rows) {
    DenseRow d{std::vector<double>(n, 0.0), r.upper};
    for (auto [j, a] : r.coefs) {
      d.a[static_cast<std::size_t>(j)] += a;
      d.b -= a * lp.bounds[static_cast<std::size_t>(j)].first;
    }
    rows.push_back(std::move(d));
  }
  for (std::size_t j = 0; j < n; ++j) {
    DenseRow d{std::vector<double>(n, 0.0), lp.bounds[j].second - lp.bounds[j].first};
    d.a[j] = 1.0;
    rows.push_back(std::move(d));
  }

  const std::size_t m = rows.size();
  std::size_t artificial = 0;
  for (const auto& r : rows)
    if (r.b < 0) ++artificial;
  const std::size_t slack0 = n, art0 = n + m, cols = n + m + artificial;

  detail::Tableau t(m, cols);
  std::size_t next_art = art0;
  for (std::size_t i = 0; i < m; ++i) {
    const double sign = rows[i].b < 0 ? -1.0 : 1.0;
    for (std::size_t j = 0; j < n; ++j) t.at(i, j) = sign * rows[i].a[j];
    t.at(i, slack0 + i) = sign;
    t.rhs(i) = sign * rows[i].b;
    if (sign < 0) {
      t.at(i, next_art) = 1.0;
      t.basis()[i] = next_art++;
    } else {
      t.basis()[i] = slack0 + i;
    }
  }

  LPSolution sol;
  if (artificial > 0) {
    // Phase 1: maximize -sum(artificials); express in non-basic terms.
    for (std::size_t i = 0; i < m; ++i)
      if (t.basis()[i] >= art0)
        for (std::size_t j = 0; j <= cols; ++j)
          if (j < art0 || j == cols) t.obj(j) += t.at(i, j);
    t.run(art0);
    if (t.obj(cols) > 1e-7) {
      sol.status = LpStatus::infeasible;
      return sol;
    }
    // Drive remaining (zero-valued) artificials out of the basis.
    for (std::size_t i = 0; i < m; ++i) {
      if (t.basis()[i] < art0) continue;
      for (std::size_t j = 0; j < art0; ++j)
        if (std::fabs(t.at(i, j)) > kLpTolerance) {
          t.pivot(i, j);
          break;
        }
    }
  }

  // Phase 2 objective row: reduced costs c_j - c_B B^-1 A_j.
  for (std::size_t j = 0; j <= cols; ++j) t.obj(j) = 0.0;
  for (std::size_t j = 0; j < n; ++j) t.obj(j) = lp.objective[j];
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t b = t.basis()[i];
    if (b >= n) continue;
    const double cb = lp.objective[b];
    if (cb == 0.0) continue;
    for (std::size_t j = 0; j <= cols; ++j) t.obj(j) -= cb * t.at(i, j);
  }
  // Artificial columns never re-enter.
  if (!t.run(art0)) {
    sol.status = LpStatus::unbounded;
    return sol;
  }

  std::vector<double> y(n, 0.0);
  for (std::size_t i = 0; i < m; ++i)
    if (t.basis()[i] < n) y[t.basis()[i]] = t.rhs(i);
  sol.values.resize(n);
  sol.objective = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    auto [lo, hi] = lp.bounds[j];
    double v = lo + y[j];
    if (v < lo) v = lo;
    if (v > hi) v = hi;
    sol.values[j] = v;
    sol.objective += lp.objective[j] * v;
  }
  sol.status = LpStatus::optimal;
  return sol;
}

/// Largest violation of any row or bound by x (0 when feasible).
inline double lp_max_violation(const LinearProgram& lp, const std::vector<double>& x) {
  double worst = 0.0;
  for (const auto& r : lp.rows) {
    double s = 0.0;
    for (auto [j, a] : r.coefs) s += a * x[static_cast<std::size_t>(j)];
    worst = std::max(worst, s - r.upper);
  }
  for (std::size_t j = 0; j < x.size(); ++j) {
    worst = std::max(worst, lp.bounds[j].first - x[j]);
    worst = std::max(worst, x[j] - lp.bounds[j].second);
  }
  return worst;
}

}  // namespace iidmatch
