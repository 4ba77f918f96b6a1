#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "abc/profile.hpp"
#include "abc/rational.hpp"

namespace abc {

enum class Rel : int8_t { Le = -1, Eq = 0, Ge = 1 };

// Generic linear program, objective sense is always maximize.  Variables are
// implicitly nonnegative (the printed nonnegativity constraints of the source
// formulations).  Constraint matrix in CSR form so million-row instances stay
// compact; names are filled only for problems small enough to dump.
struct LpProblem {
  int64_t num_vars = 0;
  std::vector<double> objective;
  std::vector<int64_t> row_start;  // size rows()+1
  std::vector<int32_t> col;
  std::vector<double> val;
  std::vector<Rel> rel;
  std::vector<double> rhs;
  std::vector<std::string> var_names;  // optional
  std::vector<std::string> row_names;  // optional
  std::string tag;  // builder tag: "exact-h", "relaxed-h", "abstract-f", ""
  int k = 0;
  bool include_empty_set = false;
  bool submodular = false;

  int64_t rows() const { return int64_t(rhs.size()); }
  int64_t nnz() const { return int64_t(col.size()); }
  void add_term(int64_t var, double coef);
  void end_row(Rel r, double b, std::string name = {});
};

struct LpSolution {
  enum class Status { Optimal, Infeasible, Unbounded };
  Status status = Status::Optimal;
  double objective_value = 0;
  std::vector<double> assignment;
  std::vector<Rat> exact;  // filled by rational post-solve refinement
  std::string solver;
};

// Budgets (overridable per call): exact 2^k variables, relaxed Theta(k^3),
// abstract-f limited by its 2^k committee variables.
inline constexpr int kExactLpMaxK = 14;
inline constexpr int kRelaxedLpMaxK = 400;
inline constexpr int kAbstractFMaxK = 12;

// Variable layout of the relaxed formulation, shared by the builder, the
// column-generation solver and the tests.
struct RelaxedIndex {
  int k = 0;
  std::vector<std::vector<int64_t>> b_base;  // [i][j] -> index of b(i,j,0)
  std::vector<std::vector<int64_t>> c_base;  // [i][j] -> index of c(i,j,1)
  int64_t d0 = 0;
  int64_t total = 0;

  explicit RelaxedIndex(int k);
  int64_t a(int i) const { return i - 1; }
  int64_t b(int i, int j, int p) const { return b_base[i][j] + p; }
  int64_t c(int i, int j, int p) const { return c_base[i][j] + p - 1; }
  int64_t d(int j) const { return d0 + j - 1; }
  int pmax(int i, int j) const { return i < j ? i : j; }
};

// Fig-style set LP over cluster variables x_T, T a nonempty subset of [k]
// (the empty set can be re-included for fidelity experiments).
LpProblem build_exact_lp(int k, bool include_empty_set = false, int max_k = kExactLpMaxK);

// Polynomial-size relaxation over a/b/c/d cluster-state variables.
LpProblem build_relaxed_lp(int k, int max_k = kRelaxedLpMaxK);

// Abstract score function f on all committees over [k]: non-negative,
// monotone, marginal contributions summing to at most 1 per committee, greedy
// step dominance, optionally submodular; maximize k times the last-step gain.
LpProblem build_abstract_f_lp(int k, bool submodular, int max_k = kAbstractFMaxK);

// Dispatches per builder tag: dense simplex (+ exact rational refinement for
// the exact LP), column generation for the relaxed LP, interior point for the
// abstract-f LP.  Every optimal solution is replayed against the constraints
// before being returned.  Infeasible/unbounded are reported via status.
LpSolution solve_lp(const LpProblem& prob);

// Largest constraint/nonnegativity violation of an assignment.
double max_violation(const LpProblem& prob, const std::vector<double>& x);

// Standard LP text format (requires names).
std::string lp_format(const LpProblem& prob);

std::string solution_csv(const LpProblem& prob, const LpSolution& sol);

// Converts an optimal exact-LP solution into a witness profile on m = k
// candidates: rationalize (continued fractions, denominators <= 10^6),
// re-verify every constraint exactly, then scale to integer weights.
ApprovalProfile lp_to_profile(const LpProblem& exact_prob, const LpSolution& sol);

struct HSeqPav {
  int k = 0;
  std::string method;  // "exact" | "relaxed"
  double h = 0;            // LP objective, k * Delta
  double coefficient = 0;  // 1/h, the ell-multiplier reported in the tables
};

HSeqPav h_seqpav(int k, const std::string& method);

struct AbstractFValue {
  int k = 0;
  bool submodular = false;
  double objective = 0;    // k times the optimal last-step gain
  double coefficient = 0;  // 1/objective
};

AbstractFValue abstract_f_value(int k, bool submodular);

// best rational approximation with denominator <= max_den
Rat rationalize(double x, long max_den = 1000000);

namespace lpdetail {

struct SimplexResult {
  LpSolution::Status status = LpSolution::Status::Optimal;
  double objective = 0;
  std::vector<double> x;
  std::vector<double> duals;
  std::vector<int64_t> basis;      // per row: structural < n, else n + row helper
  std::vector<int8_t> row_flipped; // rows negated during normalization
};

SimplexResult simplex_solve(const LpProblem& prob, int64_t max_iters = 2000000,
                            double enter_eps = 1e-9);

// certified exact optimum of an exact-h problem (rational simplex fallback)
std::vector<Rat> exact_lp_refine(const LpProblem& prob, const std::vector<int64_t>& float_basis);

LpSolution ipm_solve(const LpProblem& prob);

LpSolution dw_solve_relaxed(const LpProblem& prob);

}  // namespace lpdetail

}  // namespace abc
