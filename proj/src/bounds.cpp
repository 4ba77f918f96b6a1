#include "abc/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

namespace abc {

namespace {

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(6);
  s << x;
  return s.str();
}

// Bisection for strictly decreasing f with f(lo) >= 0 >= f(hi).
std::pair<double, double> bisect_decreasing(const std::function<double(double)>& f, double lo,
                                            double hi) {
  double flo = f(lo), fhi = f(hi);
  if (flo < 0 || fhi > 0) throw computation_error("bisection bracket invalid");
  for (int it = 0; it < 200 && hi - lo > 0; ++it) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    double v = f(mid);
    if (v >= 0)
      lo = mid;
    else
      hi = mid;
  }
  double root = 0.5 * (lo + hi);
  double res = std::fabs(f(root));
  double alt = std::fabs(f(lo));
  if (alt < res) {
    root = lo;
    res = alt;
  }
  alt = std::fabs(f(hi));
  if (alt < res) {
    root = hi;
    res = alt;
  }
  return {root, res};
}

void check_lambda(const LambdaWeights& lambda, int k) {
  if (!lambda.non_increasing(k + 1))
    throw computation_error("lambda is not non-increasing on [1.." + std::to_string(k + 1) + "]");
  if (!lambda.convex(k + 1))
    throw computation_error("lambda convexity check failed on [1.." + std::to_string(k + 1) + "]");
}

double max_x_lambda(const LambdaWeights& lambda, int k, int shift) {
  double best = 0;
  for (int x = 1; x <= k; ++x) best = std::max(best, x * lambda.value(double(x + shift)));
  return best;
}

void enforce_residual(double residual, const std::string& what) {
  if (residual > kRootTolerance)
    throw computation_error(what + ": residual " + fmt(residual) + " exceeds tolerance");
}

}  // namespace

GuaranteeReport phragmen_lower(int ell) {
  if (ell < 1) throw usage_error("ell must be positive");
  GuaranteeReport r;
  r.rule = "seq-phragmen";
  r.ell = ell;
  r.kind = BoundKind::Lower;
  r.value = (ell - 1) / 2.0;
  return r;
}

GuaranteeReport phragmen_upper(int ell, int k) {
  if (ell < 1) throw usage_error("ell must be positive");
  if (2 * ell >= k) throw usage_error("phragmen_upper requires ell < k/2");
  if (k % ell != 0) throw usage_error("phragmen_upper requires k divisible by ell");
  GuaranteeReport r;
  r.rule = "seq-phragmen";
  r.ell = ell;
  r.k = k;
  r.kind = BoundKind::Upper;
  r.value = (ell / 2.0) * (2.0 * k - 2 * ell + 2) / (2.0 * k - 3 * ell);
  std::ostringstream notes;
  notes << "limit for large k: ell/2 = " << fmt(ell / 2.0);
  if (ell == 1 && k == 10) notes << "; formula gives 10/17 (~0.5882), not 0.625";
  r.notes = notes.str();
  return r;
}

GuaranteeReport maxphragmen_upper(int ell) {
  if (ell < 1) throw usage_error("ell must be positive");
  GuaranteeReport r;
  r.rule = "max-phragmen";
  r.ell = ell;
  r.kind = BoundKind::Upper;
  r.value = 1.0;
  r.notes = "independent of ell";
  return r;
}

GuaranteeReport thiele_guarantee(const LambdaWeights& lambda, int ell, int k) {
  if (ell < 1 || ell > k) throw usage_error("need 1 <= ell <= k");
  check_lambda(lambda, k);
  GuaranteeReport r;
  r.rule = "thiele:" + lambda.tag();
  r.ell = ell;
  r.k = k;
  r.kind = BoundKind::Lower;
  double rhs = (double(k) - ell) / ell * max_x_lambda(lambda, k, 0);
  if (rhs == 0) {  // ell == k: only g = k zeroes the left side
    r.value = k;
    return r;
  }
  auto f = [&](double g) { return (k - g) * lambda.value(1 + g) - rhs; };
  // walk the lower end toward g = -1 until the (decreasing) function is positive
  double lo = 0;
  while (f(lo) < 0) {
    lo = -1 + (lo + 1) / 4;
    if (lo + 1 < 1e-14) break;
  }
  auto [root, res] = bisect_decreasing(f, lo, double(k));
  enforce_residual(res, "thiele_guarantee(" + lambda.tag() + ")");
  r.value = root;
  r.residual = res;
  return r;
}

GuaranteeReport thiele_upper(const LambdaWeights& lambda, int ell, int k) {
  if (ell < 1 || ell > k) throw usage_error("need 1 <= ell <= k");
  check_lambda(lambda, k);
  GuaranteeReport r;
  r.rule = "thiele:" + lambda.tag();
  r.ell = ell;
  r.k = k;
  r.kind = BoundKind::Upper;
  double rhs = (double(k) - ell) / ell * max_x_lambda(lambda, k, 1);
  if (rhs == 0) {
    r.value = k;
    return r;
  }
  auto f = [&](double g) { return (k - g) * lambda.value(g) - rhs; };
  double lo = 1;
  while (f(lo) < 0) {
    lo /= 4;
    if (lo < 1e-14) break;
  }
  auto [root, res] = bisect_decreasing(f, lo, double(k));
  enforce_residual(res, "thiele_upper(" + lambda.tag() + ")");
  r.value = root;
  r.residual = res;
  return r;
}

EfficiencyReport thiele_efficiency_lower(const LambdaWeights& lambda, int k) {
  if (k < 1) throw usage_error("k must be positive");
  check_lambda(lambda, k);
  EfficiencyReport r;
  r.lambda_tag = lambda.tag();
  r.k = k;
  r.kind = BoundKind::Lower;
  double l1 = lambda.value(1);
  auto f = [&](double a) { return lambda.value(1 + k * a) - a * l1; };  // decreasing in a
  if (f(1) >= 0) {
    r.alpha = 1;  // constant lambda: the equation only balances at the boundary
    r.residual = std::fabs(f(1));
  } else {
    auto [root, res] = bisect_decreasing(f, 1e-12, 1.0);
    enforce_residual(res, "thiele_efficiency_lower(" + lambda.tag() + ")");
    r.alpha = root;
    r.residual = res;
  }
  r.guarantee = r.alpha / (1 + r.alpha);
  return r;
}

EfficiencyReport thiele_efficiency_upper(const LambdaWeights& lambda, int k) {
  if (k < 1) throw usage_error("k must be positive");
  check_lambda(lambda, k);
  if (lambda.value(2) >= lambda.value(1))
    throw computation_error("thiele_efficiency_upper requires strictly decreasing lambda");
  EfficiencyReport r;
  r.lambda_tag = lambda.tag();
  r.k = k;
  r.kind = BoundKind::Upper;
  if (k == 1) {
    r.alpha = 1;
    r.residual = 0;
  } else {
    double l1 = lambda.value(1);
    auto f = [&](double a) { return lambda.value(k * a) - a * l1; };  // decreasing in a
    auto [root, res] = bisect_decreasing(f, 1.0 / k, 1.0);
    enforce_residual(res, "thiele_efficiency_upper(" + lambda.tag() + ")");
    r.alpha = root;
    r.residual = res;
  }
  r.guarantee = 2 * r.alpha - r.alpha * r.alpha;
  return r;
}

std::pair<double, double> seqpav_degree_from_h(int ell, int k, double h) {
  (void)k;
  if (h <= 0) throw usage_error("h must be positive");
  return {ell / h - 1.0, ell / h};
}

namespace {

struct SeqPavSearch {
  const ApprovalProfile& p;
  int k;
  int64_t nodes_left;
  Rat n;
  Rat best_last_gain{-1};

  void dfs(std::vector<bool>& chosen, std::vector<int>& hits, int step) {
    if (--nodes_left < 0) throw computation_error("tie-branch exploration budget exceeded");
    Rat best = -1;
    std::vector<int> tie;
    for (int c = 1; c <= p.num_candidates; ++c) {
      if (chosen[c]) continue;
      Rat gain = 0;
      for (size_t g = 0; g < p.groups.size(); ++g)
        if (p.approves(int(g), c)) gain += p.groups[g].weight / (hits[g] + 1);
      if (tie.empty() || gain > best) {
        best = gain;
        tie.assign(1, c);
      } else if (gain == best) {
        tie.push_back(c);
      }
    }
    if (step == k - 1) {
      Rat last = best / n;
      if (last > best_last_gain) best_last_gain = last;
      return;
    }
    for (int c : tie) {
      chosen[c] = true;
      std::vector<int> delta;
      for (size_t g = 0; g < p.groups.size(); ++g)
        if (p.approves(int(g), c)) {
          ++hits[g];
          delta.push_back(int(g));
        }
      dfs(chosen, hits, step + 1);
      for (int g : delta) --hits[g];
      chosen[c] = false;
    }
  }
};

}  // namespace

double seqpav_delta(const ApprovalProfile& p, int k, const TieBreak& tb, bool exhaustive,
                    int64_t budget) {
  if (k < 1) throw usage_error("k must be positive");
  if (!exhaustive) {
    auto r = seq_pav(p, k, tb);
    return rat_double(r.trace.steps.back().value);
  }
  SeqPavSearch s{p, k, budget, p.total_weight()};
  std::vector<bool> chosen(p.num_candidates + 1, false);
  std::vector<int> hits(p.groups.size(), 0);
  s.dfs(chosen, hits, 0);
  return rat_double(s.best_last_gain);
}

std::string bounds_csv(const std::vector<GuaranteeReport>& reports) {
  std::ostringstream out;
  out << "rule,ell,k,kind,value,residual\n";
  for (const auto& r : reports) {
    out << r.rule << ',' << r.ell << ',' << r.k << ','
        << (r.kind == BoundKind::Lower ? "lower" : "upper") << ',' << fmt(r.value) << ','
        << fmt(r.residual) << '\n';
  }
  return out.str();
}

}  // namespace abc
