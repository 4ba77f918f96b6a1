#include <algorithm>
#include <cmath>
#include <vector>

#include "abc/lp.hpp"

namespace abc {

namespace {

using lpdetail::SimplexResult;

uint32_t mask_of_var(const LpProblem& p, int64_t v) {
  return uint32_t(v + (p.include_empty_set ? 0 : 1));
}

// exact rational coefficient of x_T in dominance row (i, j)
Rat exact_dom_coef(int k, int i, int j, uint32_t t) {
  (void)k;
  Rat c = 0;
  uint32_t bi = uint32_t(1) << (i - 1), bj = uint32_t(1) << (j - 1);
  if (t & bi) c += Rat(1, __builtin_popcount(t & ((uint32_t(1) << i) - 1)));
  if (t & bj) c -= Rat(1, __builtin_popcount(t & (((uint32_t(1) << (i - 1)) - 1) | bj)));
  return c;
}

// Maps LP row index -> (i, j) dominance pair; row 0 is the mass row.
std::vector<std::pair<int, int>> dom_pairs(int k) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 1; i <= k; ++i)
    for (int j = i + 1; j <= k; ++j) pairs.emplace_back(i, j);
  return pairs;
}

// Certified exact optimum (rational vertex) for the exact LP; the float basis
// is the warm start, with a rational simplex fallback on degenerate handoffs.
void refine_exact_lp(const LpProblem& p, const SimplexResult& sres, LpSolution& sol) {
  int64_t n = p.num_vars;
  for (auto f : sres.row_flipped)
    if (f) throw computation_error("unexpected row normalization in exact LP");
  sol.exact = lpdetail::exact_lp_refine(p, sres.basis);
  // exact feasibility re-check and objective
  Rat mass = 0, obj = 0;
  for (int64_t v = 0; v < n; ++v) {
    if (sol.exact[v] < 0) throw computation_error("exact LP refinement: negative variable");
    mass += sol.exact[v];
    uint32_t t = mask_of_var(p, v);
    if (t & (uint32_t(1) << (p.k - 1))) obj += rat_of(p.k, __builtin_popcount(t)) * sol.exact[v];
  }
  if (mass != 1) throw computation_error("exact LP refinement: mass not 1");
  for (auto [i, j] : dom_pairs(p.k)) {
    Rat lhs = 0;
    for (int64_t v = 0; v < n; ++v)
      if (sol.exact[v] != 0) lhs += exact_dom_coef(p.k, i, j, mask_of_var(p, v)) * sol.exact[v];
    if (lhs < 0) throw computation_error("exact LP refinement: dominance row violated");
  }
  sol.assignment.resize(n);
  for (int64_t v = 0; v < n; ++v) sol.assignment[v] = rat_double(sol.exact[v]);
  sol.objective_value = rat_double(obj);
}

LpSolution from_simplex(const LpProblem& p, const SimplexResult& sres) {
  LpSolution sol;
  sol.status = sres.status;
  sol.solver = "simplex";
  if (sres.status == LpSolution::Status::Optimal) {
    sol.assignment = sres.x;
    sol.objective_value = sres.objective;
  }
  return sol;
}

void check_replay(const LpProblem& p, const LpSolution& sol) {
  if (sol.status != LpSolution::Status::Optimal) return;
  double v = max_violation(p, sol.assignment);
  if (v > 1e-7)
    throw computation_error("solver returned an assignment violating constraints by " +
                            std::to_string(v));
}

}  // namespace

LpSolution solve_lp(const LpProblem& prob) {
  LpSolution sol;
  if (prob.tag == "relaxed-h") {
    sol = lpdetail::dw_solve_relaxed(prob);
  } else if (prob.tag == "exact-h") {
    auto sres = lpdetail::simplex_solve(prob);
    sol = from_simplex(prob, sres);
    if (sol.status == LpSolution::Status::Optimal) refine_exact_lp(prob, sres, sol);
  } else if (prob.tag == "abstract-f") {
    sol = lpdetail::ipm_solve(prob);
  } else if (prob.rows() <= 5000) {
    sol = from_simplex(prob, lpdetail::simplex_solve(prob));
  } else {
    sol = lpdetail::ipm_solve(prob);
  }
  check_replay(prob, sol);
  return sol;
}

Rat rationalize(double x, long max_den) {
  if (!(std::fabs(x) < 1e18)) throw computation_error("cannot rationalize non-finite value");
  bool neg = x < 0;
  double v = std::fabs(x);
  // continued fraction convergents h/q until the denominator cap
  long h0 = 0, q0 = 1;  // convergent -2
  long h1 = 1, q1 = 0;  // convergent -1
  long best_h = long(std::llround(v)), best_q = 1;
  double frac = v;
  for (int it = 0; it < 64; ++it) {
    double fl = std::floor(frac);
    if (double(fl) * q1 + q0 > double(max_den)) break;
    long a = long(fl);
    long h2 = a * h1 + h0, q2 = a * q1 + q0;
    best_h = h2;
    best_q = q2;
    h0 = h1;
    q0 = q1;
    h1 = h2;
    q1 = q2;
    double rem = frac - fl;
    if (rem < 1e-13) break;
    frac = 1.0 / rem;
  }
  Rat r(best_h, best_q);
  r.canonicalize();
  return neg ? Rat(-r) : r;
}

ApprovalProfile lp_to_profile(const LpProblem& prob, const LpSolution& sol) {
  if (prob.tag != "exact-h") throw usage_error("lp_to_profile needs an exact-h problem");
  if (sol.status != LpSolution::Status::Optimal) throw usage_error("solution is not optimal");
  int64_t n = prob.num_vars;
  std::vector<Rat> x(n);
  if (!sol.exact.empty()) {
    x = sol.exact;
  } else {
    for (int64_t v = 0; v < n; ++v) x[v] = rationalize(sol.assignment[v]);
  }
  // re-verify every constraint exactly after rationalization
  Rat mass = 0;
  for (int64_t v = 0; v < n; ++v) {
    if (x[v] < 0) throw computation_error("rationalization breaks nonnegativity");
    mass += x[v];
  }
  if (mass != 1) throw computation_error("rationalization breaks the mass constraint");
  for (auto [i, j] : dom_pairs(prob.k)) {
    Rat lhs = 0;
    for (int64_t v = 0; v < n; ++v)
      if (x[v] != 0) lhs += exact_dom_coef(prob.k, i, j, mask_of_var(prob, v)) * x[v];
    if (lhs < 0)
      throw computation_error("rationalization breaks dominance row (" + std::to_string(i) + "," +
                              std::to_string(j) + ")");
  }
  // scale to integer weights
  mpz_class den = 1;
  for (int64_t v = 0; v < n; ++v)
    if (x[v] > 0) den = lcm(den, x[v].get_den());
  std::vector<VoterGroup> groups;
  for (int64_t v = 0; v < n; ++v) {
    if (x[v] == 0) continue;
    VoterGroup g;
    g.weight = Rat(x[v] * den);
    uint32_t t = mask_of_var(prob, v);
    for (int c = 0; c < prob.k; ++c)
      if (t & (uint32_t(1) << c)) g.approved.push_back(c + 1);
    groups.push_back(std::move(g));
  }
  return make_profile(prob.k, std::move(groups));
}

AbstractFValue abstract_f_value(int k, bool submodular) {
  AbstractFValue r;
  r.k = k;
  r.submodular = submodular;
  LpSolution sol = solve_lp(build_abstract_f_lp(k, submodular));
  if (sol.status != LpSolution::Status::Optimal)
    throw computation_error("abstract-f LP not optimal");
  r.objective = sol.objective_value;
  r.coefficient = 1.0 / r.objective;
  return r;
}

HSeqPav h_seqpav(int k, const std::string& method) {
  HSeqPav r;
  r.k = k;
  r.method = method;
  LpProblem prob;
  if (method == "exact")
    prob = build_exact_lp(k);
  else if (method == "relaxed")
    prob = build_relaxed_lp(k);
  else
    throw usage_error("unknown method: " + method);
  LpSolution sol = solve_lp(prob);
  if (sol.status != LpSolution::Status::Optimal)
    throw computation_error("h_seqpav: LP not optimal");
  r.h = sol.objective_value;
  r.coefficient = 1.0 / r.h;
  return r;
}

}  // namespace abc
