#include "ochoice/lp.hpp"

#include <algorithm>

#include "ochoice/error.hpp"

namespace ochoice {

namespace {

// Dense tableau simplex. Columns 0..n-1 are structural, n..n+m-1 artificial,
// rightmost column is the rhs. basis[i] is the column basic in row i.
struct Tableau {
  size_t n_struct;
  std::vector<std::vector<Rational>> rows; // m x (n_struct + m + 1)
  std::vector<int> basis;
  std::vector<size_t> origin;  // original row index per tableau row
  std::vector<int> row_sign;   // +1 / -1 applied to the original row

  size_t cols() const { return rows.empty() ? 0 : rows[0].size() - 1; }
  Rational& rhs(size_t i) { return rows[i].back(); }

  void pivot(size_t r, size_t c) {
    auto& prow = rows[r];
    Rational inv = prow[c];
    for (auto& v : prow) v /= inv;
    for (size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c].is_zero()) continue;
      Rational factor = rows[i][c];
      auto& row = rows[i];
      for (size_t j = 0; j < row.size(); ++j) {
        if (prow[j].is_zero()) continue;
        row[j] -= factor * prow[j];
      }
    }
    basis[r] = static_cast<int>(c);
  }

  // Runs simplex to optimality for the objective coefficients `cost`
  // (maximization), considering only columns < limit as candidates.
  // Returns false on unboundedness.
  bool optimize(const std::vector<Rational>& cost, size_t limit) {
    for (;;) {
      // simplex multipliers via the basic costs: z_j = sum_i cB_i * T_ij
      // Bland: enter the smallest-index column with positive reduced cost.
      size_t enter = limit;
      for (size_t j = 0; j < limit; ++j) {
        bool basic = false;
        for (int b : basis)
          if (b == static_cast<int>(j)) { basic = true; break; }
        if (basic) continue;
        Rational z;
        for (size_t i = 0; i < rows.size(); ++i) {
          if (rows[i][j].is_zero()) continue;
          const Rational& cb = cost[static_cast<size_t>(basis[i])];
          if (!cb.is_zero()) z += cb * rows[i][j];
        }
        if (cost[j] > z) { enter = j; break; }
      }
      if (enter == limit) return true;

      // ratio test; ties broken by smallest basic index (Bland)
      size_t leave = rows.size();
      Rational best;
      for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i][enter].sign() <= 0) continue;
        Rational ratio = rhs(i) / rows[i][enter];
        if (leave == rows.size() || ratio < best ||
            (ratio == best && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == rows.size()) return false;
      pivot(leave, enter);
    }
  }
};

// Solve y A_B = c_B for the dual values by Gaussian elimination on the
// r x r system formed by the basic columns of the kept rows.
std::vector<Rational> dual_from_basis(const LpProblem& p,
                                      const std::vector<Rational>& cost,
                                      const Tableau& t) {
  size_t r = t.rows.size();
  // system M y = d with M[k][i] = A[origin_i][basis_k] * sign_i
  std::vector<std::vector<Rational>> m(r, std::vector<Rational>(r + 1));
  for (size_t k = 0; k < r; ++k) {
    size_t col = static_cast<size_t>(t.basis[k]);
    for (size_t i = 0; i < r; ++i) {
      m[k][i] = p.A[t.origin[i]][col];
      if (t.row_sign[i] < 0) m[k][i] = -m[k][i];
    }
    m[k][r] = cost[col];
  }
  // forward elimination with partial (first-nonzero) pivoting
  std::vector<size_t> where(r, r);
  size_t row = 0;
  for (size_t col = 0; col < r && row < r; ++col) {
    size_t sel = row;
    while (sel < r && m[sel][col].is_zero()) ++sel;
    if (sel == r) continue;
    std::swap(m[sel], m[row]);
    for (size_t i = 0; i < r; ++i) {
      if (i == row || m[i][col].is_zero()) continue;
      Rational f = m[i][col] / m[row][col];
      for (size_t j = col; j <= r; ++j) m[i][j] -= f * m[row][j];
    }
    where[col] = row;
    ++row;
  }
  std::vector<Rational> y(r);
  for (size_t col = 0; col < r; ++col)
    if (where[col] != r) y[col] = m[where[col]][r] / m[where[col]][col];
  return y;
}

} // namespace

LpSolution solve_lp(const LpProblem& problem, LpSense sense) {
  size_t m = problem.A.size();
  size_t n = problem.c.size();
  for (const auto& row : problem.A)
    if (row.size() != n) fail(Errc::Internal, "ragged LP matrix");
  if (problem.b.size() != m) fail(Errc::Internal, "LP rhs size mismatch");

  // reduce to maximization
  std::vector<Rational> cmax = problem.c;
  if (sense == LpSense::Min)
    for (auto& v : cmax) v = -v;

  Tableau t;
  t.n_struct = n;
  t.rows.assign(m, std::vector<Rational>(n + m + 1));
  t.basis.resize(m);
  t.origin.resize(m);
  t.row_sign.assign(m, 1);
  for (size_t i = 0; i < m; ++i) {
    int sign = problem.b[i].sign() < 0 ? -1 : 1;
    t.row_sign[i] = sign;
    t.origin[i] = i;
    for (size_t j = 0; j < n; ++j)
      t.rows[i][j] = sign < 0 ? -problem.A[i][j] : problem.A[i][j];
    t.rows[i][n + i] = Rational(1);
    t.rows[i].back() = sign < 0 ? -problem.b[i] : problem.b[i];
    t.basis[i] = static_cast<int>(n + i);
  }

  // phase 1: drive the artificials to zero
  std::vector<Rational> phase1(n + m);
  for (size_t j = n; j < n + m; ++j) phase1[j] = Rational(-1);
  if (!t.optimize(phase1, n + m))
    fail(Errc::Internal, "phase-1 LP unbounded");
  Rational infeas;
  for (size_t i = 0; i < m; ++i)
    if (t.basis[i] >= static_cast<int>(n)) infeas += t.rhs(i);
  if (!infeas.is_zero()) {
    LpSolution sol;
    sol.feasible = false;
    return sol;
  }

  // pivot remaining zero-level artificials out; redundant rows are dropped
  for (size_t i = 0; i < t.rows.size();) {
    if (t.basis[i] < static_cast<int>(n)) { ++i; continue; }
    size_t enter = n;
    for (size_t j = 0; j < n; ++j)
      if (!t.rows[i][j].is_zero()) { enter = j; break; }
    if (enter < n) {
      t.pivot(i, enter);
      ++i;
    } else {
      t.rows.erase(t.rows.begin() + static_cast<long>(i));
      t.basis.erase(t.basis.begin() + static_cast<long>(i));
      t.origin.erase(t.origin.begin() + static_cast<long>(i));
      t.row_sign.erase(t.row_sign.begin() + static_cast<long>(i));
    }
  }

  // phase 2 over structural columns only
  std::vector<Rational> cost(n + m);
  for (size_t j = 0; j < n; ++j) cost[j] = cmax[j];
  if (!t.optimize(cost, n))
    fail(Errc::Internal, "LP unbounded (bounded program expected)");

  LpSolution sol;
  sol.feasible = true;
  sol.x.assign(n, Rational());
  for (size_t i = 0; i < t.rows.size(); ++i)
    sol.x[static_cast<size_t>(t.basis[i])] = t.rhs(i);
  for (size_t j = 0; j < n; ++j)
    if (!sol.x[j].is_zero()) sol.objective += cmax[j] * sol.x[j];
  sol.basis = t.basis;

  std::vector<Rational> y_kept = dual_from_basis(problem, cost, t);
  sol.y.assign(m, Rational());
  for (size_t i = 0; i < t.rows.size(); ++i) {
    sol.y[t.origin[i]] = t.row_sign[i] < 0 ? -y_kept[i] : y_kept[i];
  }

  // certificate check by substitution, all exact
  for (size_t i = 0; i < m; ++i) {
    Rational lhs;
    for (size_t j = 0; j < n; ++j)
      if (!sol.x[j].is_zero()) lhs += problem.A[i][j] * sol.x[j];
    if (lhs != problem.b[i]) fail(Errc::Internal, "LP primal infeasible after solve");
  }
  for (const auto& v : sol.x)
    if (v.sign() < 0) fail(Errc::Internal, "LP primal negative after solve");
  Rational yb;
  for (size_t i = 0; i < m; ++i)
    if (!sol.y[i].is_zero()) yb += sol.y[i] * problem.b[i];
  if (yb != sol.objective) fail(Errc::Internal, "LP duality gap detected");
  for (size_t j = 0; j < n; ++j) {
    Rational ya;
    for (size_t i = 0; i < m; ++i)
      if (!sol.y[i].is_zero()) ya += sol.y[i] * problem.A[i][j];
    if (ya < cmax[j]) fail(Errc::Internal, "LP dual infeasible after solve");
  }

  if (sense == LpSense::Min) {
    sol.objective = -sol.objective;
    for (auto& v : sol.y) v = -v;
  }
  return sol;
}

} // namespace ochoice
