#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <set>
#include <vector>

#include "abc/lp.hpp"

// Exact rational optimum of the exact-h LP.  Fast path: the float simplex
// basis re-solved and certified in rationals.  Fallback for degenerate
// handoffs: a restricted rational simplex over the float support plus exact
// column generation, so the returned vertex is certified optimal over all
// 2^k - 1 columns without ever building a full rational tableau.

namespace abc::lpdetail {

namespace {

struct ExactLpData {
  int k = 0;
  int first_mask = 1;
  int64_t n = 0, m = 0;  // structural variables, rows (row 0 = mass)
  std::vector<std::pair<int, int>> pairs;

  explicit ExactLpData(const LpProblem& p) {
    k = p.k;
    first_mask = p.include_empty_set ? 0 : 1;
    n = p.num_vars;
    for (int i = 1; i <= k; ++i)
      for (int j = i + 1; j <= k; ++j) pairs.emplace_back(i, j);
    m = 1 + int64_t(pairs.size());
  }

  uint32_t mask(int64_t var) const { return uint32_t(var + first_mask); }

  Rat objective(int64_t var) const {
    uint32_t t = mask(var);
    if (t != 0 && (t & (uint32_t(1) << (k - 1)))) return rat_of(k, __builtin_popcount(t));
    return Rat(0);
  }

  Rat coef(int64_t row, int64_t var) const {
    if (row == 0) return Rat(1);
    auto [i, j] = pairs[row - 1];
    uint32_t t = mask(var);
    Rat c = 0;
    uint32_t bi = uint32_t(1) << (i - 1), bj = uint32_t(1) << (j - 1);
    if (t & bi) c += Rat(1, __builtin_popcount(t & ((uint32_t(1) << i) - 1)));
    if (t & bj) c -= Rat(1, __builtin_popcount(t & (((uint32_t(1) << (i - 1)) - 1) | bj)));
    return c;
  }
};

// dense rational solve of A x = b in place; false when singular
bool gauss_solve(std::vector<std::vector<Rat>>& a, std::vector<Rat>& b) {
  int64_t m = int64_t(a.size());
  for (int64_t c = 0; c < m; ++c) {
    int64_t piv = -1;
    for (int64_t r = c; r < m; ++r)
      if (a[r][c] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return false;
    std::swap(a[c], a[piv]);
    std::swap(b[c], b[piv]);
    for (int64_t r = c + 1; r < m; ++r) {
      if (a[r][c] == 0) continue;
      Rat f = a[r][c] / a[c][c];
      for (int64_t cc = c; cc < m; ++cc) a[r][cc] -= f * a[c][cc];
      b[r] -= f * b[c];
    }
  }
  for (int64_t r = m - 1; r >= 0; --r) {
    Rat acc = b[r];
    for (int64_t c = r + 1; c < m; ++c) acc -= a[r][c] * b[c];
    b[r] = acc / a[r][r];
  }
  return true;
}

// y solving B^T y = c_B for a structural/helper/artificial basis
bool basis_duals(const ExactLpData& d, const std::vector<int64_t>& basis, std::vector<Rat>& y) {
  std::vector<std::vector<Rat>> bt(d.m, std::vector<Rat>(d.m, Rat(0)));
  y.assign(d.m, Rat(0));
  for (int64_t c = 0; c < d.m; ++c) {
    int64_t e = basis[c];
    if (e < d.n) {
      for (int64_t r = 0; r < d.m; ++r) bt[c][r] = d.coef(r, e);
      y[c] = d.objective(e);
    } else if (e < d.n + d.m) {
      bt[c][e - d.n] = -1;  // surplus of a dominance row
    } else {
      bt[c][e - d.n - d.m] = 1;  // artificial
    }
  }
  return gauss_solve(bt, y);
}

// all-columns exact pricing; returns variables with positive reduced cost
std::vector<int64_t> price_all(const ExactLpData& d, const std::vector<Rat>& y,
                               const std::set<int64_t>& skip) {
  std::vector<int64_t> violated;
  for (int64_t v = 0; v < d.n; ++v) {
    if (skip.count(v)) continue;
    Rat rc = d.objective(v) - y[0];
    for (int64_t r = 1; r < d.m; ++r) {
      Rat a = d.coef(r, v);
      if (a != 0) rc -= y[r] * a;
    }
    if (rc > 0) violated.push_back(v);
  }
  return violated;
}

bool certify_float_basis(const ExactLpData& d, const std::vector<int64_t>& basis,
                         std::vector<Rat>& x) {
  std::vector<std::vector<Rat>> bmat(d.m, std::vector<Rat>(d.m, Rat(0)));
  for (int64_t c = 0; c < d.m; ++c) {
    int64_t e = basis[c];
    if (e < d.n)
      for (int64_t r = 0; r < d.m; ++r) bmat[r][c] = d.coef(r, e);
    else if (e < d.n + d.m)
      bmat[e - d.n][c] = -1;
    else
      bmat[e - d.n - d.m][c] = 1;
  }
  std::vector<Rat> xb(d.m, Rat(0));
  xb[0] = 1;
  if (!gauss_solve(bmat, xb)) return false;
  for (int64_t c = 0; c < d.m; ++c) {
    if (xb[c] < 0) return false;
    if (basis[c] >= d.n + d.m && xb[c] != 0) return false;
  }
  std::vector<Rat> y;
  if (!basis_duals(d, basis, y)) return false;
  // surplus columns have reduced cost +y_r, so >=-row duals must be <= 0
  for (int64_t r = 1; r < d.m; ++r)
    if (y[r] > 0) return false;
  std::set<int64_t> none;
  if (!price_all(d, y, none).empty()) return false;
  x.assign(d.n, Rat(0));
  for (int64_t c = 0; c < d.m; ++c)
    if (basis[c] < d.n) x[basis[c]] = xb[c];
  return true;
}

// Rational two-phase tableau simplex restricted to a column subset.
struct RestrictedResult {
  std::vector<Rat> x;  // over the full structural index space
  std::vector<int64_t> basis;
};

RestrictedResult restricted_exact_simplex(const ExactLpData& d,
                                          const std::vector<int64_t>& cols) {
  int64_t nc = int64_t(cols.size()), m = d.m;
  int64_t ncols = nc + m + 1;  // restricted structural, surplus per >= row, mass artificial
  std::vector<std::vector<Rat>> t(m + 1, std::vector<Rat>(ncols + 1, Rat(0)));
  std::vector<int64_t> basis(m);
  for (int64_t r = 0; r < m; ++r) {
    for (int64_t c = 0; c < nc; ++c) t[r][c] = d.coef(r, cols[c]);
    if (r == 0) {
      t[0][nc + m] = 1;
      basis[0] = nc + m;
      t[0][ncols] = 1;
    } else {
      // row scaled by -1 so the surplus column is the (feasible, zero) basic
      for (int64_t c = 0; c < nc; ++c) t[r][c] = -t[r][c];
      t[r][nc + r] = 1;
      basis[r] = nc + r;
    }
  }

  auto run = [&](const std::vector<Rat>& costs, const std::vector<char>& allowed) {
    for (int64_t c = 0; c <= ncols; ++c) t[m][c] = 0;
    for (int64_t c = 0; c < ncols; ++c) t[m][c] = -costs[c];
    for (int64_t r = 0; r < m; ++r) {
      Rat f = t[m][basis[r]];
      if (f != 0)
        for (int64_t c = 0; c <= ncols; ++c) t[m][c] -= f * t[r][c];
    }
    bool bland = false;
    int64_t stall = 0;
    Rat last = t[m][ncols];
    for (int64_t it = 0; it < 100000; ++it) {
      int64_t enter = -1;
      if (!bland) {
        Rat best = 0;
        for (int64_t c = 0; c < ncols; ++c)
          if (allowed[c] && t[m][c] < best) {
            best = t[m][c];
            enter = c;
          }
      } else {
        for (int64_t c = 0; c < ncols; ++c)
          if (allowed[c] && t[m][c] < 0) {
            enter = c;
            break;
          }
      }
      if (enter < 0) return;
      int64_t leave = -1;
      Rat ratio;
      for (int64_t r = 0; r < m; ++r)
        if (t[r][enter] > 0) {
          Rat q = t[r][ncols] / t[r][enter];
          if (leave < 0 || q < ratio || (q == ratio && basis[r] < basis[leave])) {
            leave = r;
            ratio = q;
          }
        }
      if (leave < 0) throw computation_error("exact LP is unbounded");
      Rat piv = t[leave][enter];
      for (int64_t c = 0; c <= ncols; ++c) t[leave][c] /= piv;
      for (int64_t r = 0; r <= m; ++r) {
        if (r == leave) continue;
        Rat f = t[r][enter];
        if (f == 0) continue;
        for (int64_t c = 0; c <= ncols; ++c) t[r][c] -= f * t[leave][c];
      }
      basis[leave] = enter;
      if (t[m][ncols] > last) {
        last = t[m][ncols];
        stall = 0;
        bland = false;  // Bland episodes end once the objective moves
      } else if (++stall > 2000) {
        bland = true;
      }
      if (getenv("ABC_DEBUG") && it % 500 == 499) fprintf(stderr, "[xlp]   it=%ld obj=%.6f bland=%d\n", (long)it, t[m][ncols].get_d(), (int)bland);
    }
    throw computation_error("exact simplex iteration limit reached");
  };

  std::vector<char> allowed(ncols, 1);
  {
    std::vector<Rat> costs(ncols, Rat(0));
    costs[nc + m] = -1;
    run(costs, allowed);
    for (int64_t r = 0; r < m; ++r)
      if (basis[r] == nc + m && t[r][ncols] != 0)
        throw computation_error("restricted exact LP infeasible");
  }
  {
    std::vector<Rat> costs(ncols, Rat(0));
    for (int64_t c = 0; c < nc; ++c) costs[c] = d.objective(cols[c]);
    allowed[nc + m] = 0;
    run(costs, allowed);
  }
  RestrictedResult res;
  res.x.assign(d.n, Rat(0));
  res.basis.assign(m, -1);
  for (int64_t r = 0; r < m; ++r) {
    if (basis[r] < nc) {
      res.x[cols[basis[r]]] = t[r][ncols];
      res.basis[r] = cols[basis[r]];
    } else if (basis[r] < nc + m) {
      res.basis[r] = d.n + (basis[r] - nc);  // surplus slot
    } else {
      res.basis[r] = d.n + d.m + 0;  // mass artificial
    }
  }
  return res;
}

}  // namespace

std::vector<Rat> exact_lp_refine(const LpProblem& prob, const std::vector<int64_t>& float_basis) {
  ExactLpData d(prob);
  std::vector<Rat> x;
  if (int64_t(float_basis.size()) == d.m && certify_float_basis(d, float_basis, x)) return x;

  // column generation in exact arithmetic, seeded with the float support and
  // the singleton sets (whose uniform mixture is always feasible)
  std::set<int64_t> colset;
  for (int c = 0; c < d.k; ++c) colset.insert(int64_t(uint32_t(1) << c) - d.first_mask);
  for (int64_t e : float_basis)
    if (e >= 0 && e < d.n) colset.insert(e);
  for (int rounds = 0; rounds < 200; ++rounds) {
    std::vector<int64_t> cols(colset.begin(), colset.end());
    if (getenv("ABC_DEBUG")) fprintf(stderr, "[xlp] round %d cols=%zu\n", rounds, cols.size());
    auto res = restricted_exact_simplex(d, cols);
    std::vector<Rat> y;
    if (!basis_duals(d, res.basis, y)) throw computation_error("exact basis became singular");
    auto violated = price_all(d, y, colset);
    if (violated.empty()) return res.x;
    // grow by a bounded batch per round, keeping the tableau narrow
    if (violated.size() > 512) violated.resize(512);
    for (int64_t v : violated) colset.insert(v);
  }
  throw computation_error("exact column generation did not converge");
}

}  // namespace abc::lpdetail
