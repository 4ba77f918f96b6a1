#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <cmath>
#include <cstring>
#include <set>
#include <vector>

#include "abc/lp.hpp"

namespace abc::lpdetail {

namespace {

// A column of the relaxed LP in path form: one cluster class (total approvals
// i) together with the steps at which its representation count goes up.  Any
// feasible (a,b,c,d) assignment is a convex combination of such paths, because
// the (b1)-(d4) block for each class is a unit-capacity layered flow.
struct PathCol {
  int cls = 0;
  std::vector<uint8_t> up;  // size k+1, up[j] = 1 if a representative is gained at step j

  std::vector<uint8_t> key() const {
    auto v = up;
    v.push_back(uint8_t(cls));
    return v;
  }
};

struct Master {
  int k;
  std::vector<PathCol> cols;
  std::vector<std::vector<double>> coef;  // per column: [0]=convexity, [j]=row j
  std::vector<double> cost;
  std::set<std::vector<uint8_t>> seen;

  explicit Master(int kk) : k(kk) {}

  // row j coefficient: gain_j - pot_j/(k-j+1), both evaluated along the path
  void add(const PathCol& pc) {
    std::vector<double> row(k + 1, 0.0);
    row[0] = 1.0;
    int p = 0;
    double c = 0;
    for (int j = 1; j <= k; ++j) {
      double coef_j = -double(pc.cls - p) / (double(p + 1) * double(k - j + 1));
      if (pc.up[j]) {
        coef_j += 1.0 / double(p + 1);
        if (j == k) c = double(k) / double(p + 1);
        ++p;
      }
      row[j] = coef_j;
    }
    seen.insert(pc.key());
    cols.push_back(pc);
    coef.push_back(std::move(row));
    cost.push_back(c);
  }

  LpProblem as_lp() const {
    LpProblem p;
    p.num_vars = int64_t(cols.size());
    p.objective = cost;
    p.row_start.push_back(0);
    for (int r = 0; r <= k; ++r) {
      for (size_t v = 0; v < cols.size(); ++v) p.add_term(int64_t(v), coef[v][r]);
      p.end_row(r == 0 ? Rel::Eq : Rel::Ge, r == 0 ? 1.0 : 0.0);
    }
    return p;
  }
};

// Best-reduced-cost path for one class, by forward DP over (step, count).
// Returns the path and its reduced cost given master duals pi.
std::pair<PathCol, double> price_class(int k, int cls, const std::vector<double>& pi) {
  const double kNegInf = -1e300;
  // value[j*(cls+1)+p], reachable states only
  std::vector<double> value((k + 1) * (cls + 1), kNegInf);
  std::vector<uint8_t> choice((k + 1) * (cls + 1), 0);
  value[0] = 0;
  for (int j = 1; j <= k; ++j) {
    for (int p = std::min(j - 1, cls); p >= 0; --p) {
      double v = value[(j - 1) * (cls + 1) + p];
      if (v == kNegInf) continue;
      double base = pi[j] * double(cls - p) / (double(p + 1) * double(k - j + 1));
      // stay
      if (cls - p <= k - j) {
        double cand = v + base;
        double& slot = value[j * (cls + 1) + p];
        if (cand > slot) {
          slot = cand;
          choice[j * (cls + 1) + p] = 0;
        }
      }
      // gain a representative
      if (p < cls) {
        double gain = (double(j == k) * k - pi[j]) / double(p + 1);
        double cand = v + base + gain;
        double& slot = value[j * (cls + 1) + p + 1];
        if (cand > slot) {
          slot = cand;
          choice[j * (cls + 1) + p + 1] = 1;
        }
      }
    }
  }
  PathCol pc;
  pc.cls = cls;
  pc.up.assign(k + 1, 0);
  int p = cls;
  for (int j = k; j >= 1; --j) {
    pc.up[j] = choice[j * (cls + 1) + p];
    p -= pc.up[j];
  }
  return {pc, value[k * (cls + 1) + cls] - pi[0]};
}

}  // namespace

LpSolution dw_solve_relaxed(const LpProblem& prob) {
  const int k = prob.k;
  Master master(k);
  {
    // all-up class-k path: satisfies every row with equality, so the master
    // starts feasible
    PathCol allup;
    allup.cls = k;
    allup.up.assign(k + 1, 1);
    allup.up[0] = 0;
    master.add(allup);
    for (int i = 1; i < k; ++i) {
      PathCol pc;
      pc.cls = i;
      pc.up.assign(k + 1, 0);
      for (int j = 1; j <= i; ++j) pc.up[j] = 1;
      master.add(pc);
    }
  }

  std::vector<double> mass;
  double z = 0;
  const int max_rounds = 20000;
  for (int round = 0;; ++round) {
    if (round >= max_rounds) throw computation_error("column generation did not converge");
    LpProblem mlp = master.as_lp();
    SimplexResult sres;
    bool solved = false;
    for (double eps : {1e-9, 3e-8, 1e-6}) {  // loosen pricing when the master gets degenerate
      try {
        sres = simplex_solve(mlp, 300000, eps);
        solved = true;
        break;
      } catch (const computation_error&) {
      }
    }
    if (!solved || sres.status != LpSolution::Status::Optimal)
      throw computation_error("restricted master not optimal");
    z = sres.objective;
    mass = sres.x;

    double best_rc = 0;
    std::vector<PathCol> found;
    for (int cls = 1; cls <= k; ++cls) {
      auto [pc, rc] = price_class(k, cls, sres.duals);
      best_rc = std::max(best_rc, rc);
      if (rc > 1e-10 && !master.seen.count(pc.key())) found.push_back(std::move(pc));
    }
    if (getenv("ABC_DEBUG") && round % 20 == 0)
      fprintf(stderr, "[dw] round=%d cols=%zu z=%.9f best_rc=%.3e\n", round, master.cols.size(), z, best_rc);
    if (best_rc <= 1e-9 * std::max(1.0, std::fabs(z)) || found.empty()) {
      if (getenv("ABC_DEBUG"))
        fprintf(stderr, "[dw] done round=%d cols=%zu z=%.9f best_rc=%.3e found=%zu\n", round, master.cols.size(), z, best_rc, found.size());
      break;
    }
    if (master.cols.size() + found.size() > 1500) {
      // drop zero-mass columns; column 0 (the all-up path) stays as the
      // feasibility anchor, and dropped paths may be regenerated later
      Master pruned(k);
      for (size_t v = 0; v < master.cols.size(); ++v)
        if (v == 0 || mass[v] > 1e-12) pruned.add(master.cols[v]);
      master = std::move(pruned);
    }
    for (auto& pc : found)
      if (!master.seen.count(pc.key())) master.add(pc);
  }

  // expand path masses to the (a, b, c, d) variables
  RelaxedIndex ix(k);
  LpSolution sol;
  sol.solver = "dw";
  sol.assignment.assign(size_t(ix.total), 0.0);
  auto& x = sol.assignment;
  for (size_t v = 0; v < master.cols.size(); ++v) {
    double y = v < mass.size() ? mass[v] : 0.0;
    if (y <= 0) continue;
    const auto& pc = master.cols[v];
    int i = pc.cls;
    x[ix.a(i)] += y;
    int p = 0;
    x[ix.b(i, 0, 0)] += y;
    for (int j = 1; j <= k; ++j) {
      if (pc.up[j]) {
        ++p;
        x[ix.c(i, j, p)] += y;
      }
      x[ix.b(i, j, p)] += y;
    }
  }
  for (int j = 1; j <= k; ++j) {
    double dj = 0;
    for (int i = 1; i <= k; ++i)
      for (int p = 1; p <= ix.pmax(i, j); ++p) dj += x[ix.c(i, j, p)] / double(p);
    x[ix.d(j)] = dj;
  }
  sol.objective_value = double(k) * x[ix.d(k)];
  sol.status = LpSolution::Status::Optimal;
  return sol;
}

}  // namespace abc::lpdetail
