#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "abc/profile.hpp"
#include "abc/rational.hpp"

namespace abc {

inline constexpr int64_t kDefaultEnumBudget = 10'000'000;

// Thiele weight sequence lambda(1), lambda(2), ...  Symbolic families evaluate
// at non-integer arguments too (the bound solvers need lambda(1+g)); custom
// lists interpolate piecewise-linearly, which preserves monotonicity and
// convexity.
struct LambdaWeights {
  enum class Family { Pav, Power, Custom };
  Family family = Family::Pav;
  double exponent = 1.0;    // Power: lambda(i) = i^(-exponent)
  std::vector<Rat> values;  // Custom

  static LambdaWeights pav() { return {}; }
  static LambdaWeights power(double p);
  static LambdaWeights custom(std::vector<Rat> v);

  bool exact_evaluable() const;  // Pav, Custom, and integer-exponent Power
  Rat at(int i) const;           // exact lambda(i); throws if unavailable
  double value(double x) const;  // continuous evaluation, x may be fractional
  bool non_increasing(int upto) const;
  bool convex(int upto) const;  // second differences checked on [1..upto]
  std::string tag() const;
};

// Tie resolution.  Sequential rules pick one candidate from the tied argmax
// set; exact rules pick one committee from the optimum set.  The adversarial
// policy prefers candidates (or larger overlap) inside a designated oracle
// committee, as the worst-case constructions require.
struct TieBreak {
  enum class Policy { LexMin, LexMax, Adversarial };
  Policy policy = Policy::LexMin;
  Committee oracle;

  static TieBreak lex_min() { return {}; }
  static TieBreak lex_max() { return {Policy::LexMax, {}}; }
  static TieBreak adversarial(Committee target);

  int pick(const std::vector<int>& tied) const;
  // strict "a is preferred to b" over committees
  bool prefers(const Committee& a, const Committee& b) const;
};

struct TraceStep {
  int chosen = 0;
  // seq-PAV: marginal PAV-score gain per unit voter weight.
  // credit process: purchase time.  load process: max load after the step.
  Rat value;
  std::vector<int> tie_set;
  std::vector<Rat> credits;   // credit process: per-voter credits after the step
  std::vector<Rat> payments;  // credit process: per-voter payment at the step
  std::vector<Rat> loads;     // load process: per-voter loads after the step
  Rat max_load;               // load process only
};

struct ElectionTrace {
  std::vector<TraceStep> steps;
};

// One step per line: "<step> <chosen> <value> {c1,c2,...}"
std::string trace_log(const ElectionTrace& t);

struct ElectionResult {
  Committee committee;  // in selection order
  ElectionTrace trace;
};

Rat thiele_score(const ApprovalProfile& p, const LambdaWeights& lambda, const Committee& w);

struct ExactResult {
  Committee winner;
  Rat score;
  std::vector<Committee> optima;  // filled when all_optima requested
};

ExactResult thiele_exact(const ApprovalProfile& p, const LambdaWeights& lambda, int k,
                         const TieBreak& tb = {}, bool all_optima = false,
                         int64_t budget = kDefaultEnumBudget);

ExactResult pav(const ApprovalProfile& p, int k, const TieBreak& tb = {}, bool all_optima = false,
                int64_t budget = kDefaultEnumBudget);

ElectionResult seq_pav(const ApprovalProfile& p, int k, const TieBreak& tb = {});

ElectionResult seq_phragmen_credit(const ApprovalProfile& p, int k, const TieBreak& tb = {});

ElectionResult seq_phragmen_load(const ApprovalProfile& p, int k, const TieBreak& tb = {});

struct MaxPhragmenResult {
  std::vector<Committee> optima;
  Rat max_load;
};

// Global load minimization: all size-k committees attaining the minimum
// possible maximum voter load, plus that value.  Loads use the one-unit-per-
// candidate convention.
MaxPhragmenResult max_phragmen(const ApprovalProfile& p, int k,
                               int64_t budget = kDefaultEnumBudget);

// Optimal max voter load for one fixed committee (the load-balancing
// subproblem).  Returns the exact bottleneck value max_S |S| / |N(S)|.
// Throws computation_error if a member has no approvers.
Rat committee_max_load(const ApprovalProfile& p, const Committee& w);

// Number of size-k committees, capped at `cap` (returns cap+1 when above).
int64_t committee_count(int m, int k, int64_t cap);

}  // namespace abc
