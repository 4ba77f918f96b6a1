#include <algorithm>
#include <cmath>
#include <vector>

#include "abc/lp.hpp"

namespace abc::lpdetail {

namespace {

constexpr double kEps = 1e-9;

struct Tableau {
  int64_t m, ncols;           // rows, columns excluding rhs
  std::vector<double> t;      // (m+1) x (ncols+1), row-major; last row = objective
  std::vector<int64_t> basis; // basic column per row

  double& at(int64_t r, int64_t c) { return t[r * (ncols + 1) + c]; }
  double& rhs(int64_t r) { return at(r, ncols); }

  void pivot(int64_t pr, int64_t pc) {
    double* prow = &t[pr * (ncols + 1)];
    double inv = 1.0 / prow[pc];
    for (int64_t c = 0; c <= ncols; ++c) prow[c] *= inv;
    prow[pc] = 1.0;
    for (int64_t r = 0; r <= m; ++r) {
      if (r == pr) continue;
      double* row = &t[r * (ncols + 1)];
      double f = row[pc];
      if (f == 0) continue;
      for (int64_t c = 0; c <= ncols; ++c) row[c] -= f * prow[c];
      row[pc] = 0.0;
    }
    basis[pr] = pc;
  }
};

// Runs the current objective row to optimality.  Dantzig pricing, with Bland's
// rule during degenerate plateaus so cycling cannot persist.  `allowed` masks
// columns that may enter (artificials are blocked in phase 2).
LpSolution::Status optimize(Tableau& tb, const std::vector<char>& allowed, int64_t max_iters,
                            double enter_eps) {
  bool bland = false;
  int64_t stall = 0;
  double last_obj = tb.rhs(tb.m);
  for (int64_t it = 0; it < max_iters; ++it) {
    double* obj = &tb.t[tb.m * (tb.ncols + 1)];
    int64_t enter = -1;
    if (!bland) {
      double best = -enter_eps;
      for (int64_t c = 0; c < tb.ncols; ++c)
        if (allowed[c] && obj[c] < best) {
          best = obj[c];
          enter = c;
        }
    } else {
      for (int64_t c = 0; c < tb.ncols; ++c)
        if (allowed[c] && obj[c] < -enter_eps) {
          enter = c;
          break;
        }
    }
    if (enter < 0) return LpSolution::Status::Optimal;
    int64_t leave = -1;
    double best_ratio = 0;
    for (int64_t r = 0; r < tb.m; ++r) {
      double a = tb.at(r, enter);
      if (a > kEps) {
        double ratio = tb.rhs(r) / a;
        if (leave < 0 || ratio < best_ratio - 1e-12) {
          leave = r;
          best_ratio = ratio;
        } else if (ratio < best_ratio + 1e-12) {
          // among (near-)tied ratios prefer the largest pivot for stability,
          // except under Bland's rule where the lowest index guards cycling
          bool better = bland ? tb.basis[r] < tb.basis[leave]
                              : std::fabs(a) > std::fabs(tb.at(leave, enter));
          if (better) {
            leave = r;
            best_ratio = std::min(best_ratio, ratio);
          }
        }
      }
    }
    if (leave < 0) return LpSolution::Status::Unbounded;
    tb.pivot(leave, enter);
    double cur = tb.rhs(tb.m);
    if (cur > last_obj + 1e-12) {
      stall = 0;
      last_obj = cur;
      bland = false;
    } else if (++stall > 500) {
      bland = true;
    }
  }
  throw computation_error("simplex iteration limit reached");
}

}  // namespace

SimplexResult simplex_solve(const LpProblem& p, int64_t max_iters, double enter_eps) {
  int64_t n = p.num_vars, m = p.rows();
  SimplexResult res;
  res.row_flipped.assign(m, 0);

  // normalized rows: rhs >= 0
  std::vector<Rel> rel(p.rel);
  std::vector<double> rhs(p.rhs);
  for (int64_t r = 0; r < m; ++r)
    if (rhs[r] < 0) {
      res.row_flipped[r] = 1;
      rhs[r] = -rhs[r];
      rel[r] = Rel(-int(rel[r]));
    }
  int64_t nart = 0;
  std::vector<int64_t> art_col(m, -1);
  for (int64_t r = 0; r < m; ++r)
    if (rel[r] != Rel::Le) ++nart;

  Tableau tb;
  tb.m = m;
  tb.ncols = n + m + nart;  // structural, one helper slot per row, artificials
  tb.t.assign((m + 1) * (tb.ncols + 1), 0.0);
  tb.basis.assign(m, -1);
  int64_t next_art = n + m;
  for (int64_t r = 0; r < m; ++r) {
    double sign = res.row_flipped[r] ? -1.0 : 1.0;
    for (int64_t t = p.row_start[r]; t < p.row_start[r + 1]; ++t)
      tb.at(r, p.col[t]) += sign * p.val[t];
    tb.rhs(r) = rhs[r];
    switch (rel[r]) {
      case Rel::Le:
        tb.at(r, n + r) = 1.0;
        tb.basis[r] = n + r;
        break;
      case Rel::Ge:
        tb.at(r, n + r) = -1.0;
        art_col[r] = next_art;
        tb.at(r, next_art) = 1.0;
        tb.basis[r] = next_art++;
        break;
      case Rel::Eq:
        art_col[r] = next_art;
        tb.at(r, next_art) = 1.0;
        tb.basis[r] = next_art++;
        break;
    }
  }

  std::vector<char> allowed(tb.ncols, 1);
  if (nart > 0) {
    // phase 1: maximize -sum(artificials)
    for (int64_t c = n + m; c < tb.ncols; ++c) tb.at(m, c) = 1.0;
    for (int64_t r = 0; r < m; ++r)
      if (tb.basis[r] >= n + m) {
        double* obj = &tb.t[m * (tb.ncols + 1)];
        double* row = &tb.t[r * (tb.ncols + 1)];
        for (int64_t c = 0; c <= tb.ncols; ++c) obj[c] -= row[c];
      }
    auto st = optimize(tb, allowed, max_iters, enter_eps);
    if (st != LpSolution::Status::Optimal) throw computation_error("phase 1 did not converge");
    if (tb.rhs(m) < -1e-7) {
      res.status = LpSolution::Status::Infeasible;
      return res;
    }
  }
  // phase 2: real objective; artificials must not re-enter
  for (int64_t c = 0; c <= tb.ncols; ++c) tb.at(m, c) = 0.0;
  for (int64_t c = 0; c < n; ++c) tb.at(m, c) = -p.objective[c];
  for (int64_t c = n + m; c < tb.ncols; ++c) allowed[c] = 0;
  for (int64_t r = 0; r < m; ++r) {
    double f = tb.at(m, tb.basis[r]);
    if (f != 0) {
      double* obj = &tb.t[m * (tb.ncols + 1)];
      double* row = &tb.t[r * (tb.ncols + 1)];
      for (int64_t c = 0; c <= tb.ncols; ++c) obj[c] -= f * row[c];
      obj[tb.basis[r]] = 0.0;
    }
  }
  res.status = optimize(tb, allowed, max_iters, enter_eps);
  if (res.status != LpSolution::Status::Optimal) return res;

  res.x.assign(n, 0.0);
  for (int64_t r = 0; r < m; ++r)
    if (tb.basis[r] < n) res.x[tb.basis[r]] = tb.rhs(r);
  res.objective = tb.rhs(m);
  // row duals, in terms of the original (unflipped) rows
  res.duals.assign(m, 0.0);
  for (int64_t r = 0; r < m; ++r) {
    double y;
    if (rel[r] == Rel::Le)
      y = tb.at(m, n + r);
    else if (rel[r] == Rel::Ge)
      y = -tb.at(m, n + r);
    else
      y = tb.at(m, art_col[r]);
    res.duals[r] = res.row_flipped[r] ? -y : y;
  }
  res.basis = tb.basis;
  return res;
}

}  // namespace abc::lpdetail
