#pragma once

#include <string>
#include <utility>
#include <vector>

#include "abc/profile.hpp"
#include "abc/rules.hpp"

namespace abc {

enum class BoundKind { Lower, Upper };

struct GuaranteeReport {
  std::string rule;
  int ell = 0;
  int k = 0;  // 0 = holds for every committee size
  BoundKind kind = BoundKind::Lower;
  double value = 0;
  double residual = 0;  // root-finder defect, 0 for closed forms
  std::string notes;
};

struct EfficiencyReport {
  std::string lambda_tag;
  int k = 0;
  BoundKind kind = BoundKind::Lower;
  double alpha = 0;      // solution of the defining equation
  double guarantee = 0;  // alpha/(1+alpha) for lower, 2*alpha-alpha^2 for upper
  double residual = 0;
};

inline constexpr double kRootTolerance = 1e-9;

// (ell-1)/2, the sequential-rule floor.
GuaranteeReport phragmen_lower(int ell);

// (ell/2) * (2k-2ell+2)/(2k-3ell); requires ell < k/2 and ell | k.
GuaranteeReport phragmen_upper(int ell, int k);

// Constant 1, independent of ell.
GuaranteeReport maxphragmen_upper(int ell);

// Root of (k-g) * lambda(1+g) = (k-ell)/ell * max_{x in [k]} x*lambda(x),
// unique since the left side is decreasing in g.
GuaranteeReport thiele_guarantee(const LambdaWeights& lambda, int ell, int k);

// Root of (k-g) * lambda(g) = (k-ell)/ell * max_{x in [k]} x*lambda(x+1);
// any larger g violates the necessary condition.
GuaranteeReport thiele_upper(const LambdaWeights& lambda, int ell, int k);

// alpha solving alpha*lambda(1) = lambda(1+k*alpha); guarantee alpha/(1+alpha).
EfficiencyReport thiele_efficiency_lower(const LambdaWeights& lambda, int k);

// alpha solving alpha*lambda(1) = lambda(k*alpha); guarantee 2*alpha-alpha^2.
EfficiencyReport thiele_efficiency_upper(const LambdaWeights& lambda, int k);

// Degree bounds from h = k * Delta: (ell/h - 1, ell/h).
std::pair<double, double> seqpav_degree_from_h(int ell, int k, double h);

// Last-step seq-PAV marginal gain per unit weight; with `exhaustive`, the
// maximum over all tie-break branches (node budget guards the recursion).
double seqpav_delta(const ApprovalProfile& p, int k, const TieBreak& tb = {},
                    bool exhaustive = false, int64_t budget = 100000);

std::string bounds_csv(const std::vector<GuaranteeReport>& reports);

}  // namespace abc
