#include "abc/rules.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <sstream>

namespace abc {

LambdaWeights LambdaWeights::power(double p) {
  LambdaWeights l;
  l.family = Family::Power;
  l.exponent = p;
  return l;
}

LambdaWeights LambdaWeights::custom(std::vector<Rat> v) {
  LambdaWeights l;
  l.family = Family::Custom;
  l.values = std::move(v);
  return l;
}

bool LambdaWeights::exact_evaluable() const {
  switch (family) {
    case Family::Pav:
    case Family::Custom:
      return true;
    case Family::Power:
      return exponent == std::floor(exponent) && exponent >= 0;
  }
  return false;
}

Rat LambdaWeights::at(int i) const {
  if (i < 1) throw usage_error("lambda index must be positive");
  switch (family) {
    case Family::Pav:
      return Rat(1, i);
    case Family::Power: {
      if (!exact_evaluable()) throw usage_error("lambda family " + tag() + " has no exact values");
      mpz_class den = 1;
      for (int e = 0; e < int(exponent); ++e) den *= i;
      return Rat(mpz_class(1), den);
    }
    case Family::Custom:
      if (size_t(i) > values.size()) throw usage_error("lambda too short");
      return values[i - 1];
  }
  throw usage_error("bad lambda family");
}

double LambdaWeights::value(double x) const {
  switch (family) {
    case Family::Pav:
      return 1.0 / x;
    case Family::Power:
      return std::pow(x, -exponent);
    case Family::Custom: {
      if (values.empty()) throw usage_error("empty lambda list");
      if (x > double(values.size())) throw usage_error("lambda too short");
      if (values.size() == 1) return rat_double(values[0]);
      // piecewise linear through (i, lambda(i)); left of 1 the first segment
      // extends linearly so lambda(1+g) exists for small negative g
      int i = std::clamp(int(std::floor(x)), 1, int(values.size()) - 1);
      double a = rat_double(values[i - 1]), b = rat_double(values[i]);
      return a + (x - i) * (b - a);
    }
  }
  throw usage_error("bad lambda family");
}

bool LambdaWeights::non_increasing(int upto) const {
  switch (family) {
    case Family::Pav:
      return true;
    case Family::Power:
      return exponent >= 0;
    case Family::Custom: {
      if (size_t(upto) > values.size()) throw usage_error("lambda too short");
      for (int i = 1; i < upto; ++i)
        if (values[i] > values[i - 1]) return false;
      for (int i = 0; i < upto; ++i)
        if (values[i] <= 0) return false;
      return true;
    }
  }
  return false;
}

bool LambdaWeights::convex(int upto) const {
  switch (family) {
    case Family::Pav:
      return true;
    case Family::Power:
      return exponent >= 0;
    case Family::Custom: {
      if (size_t(upto) > values.size()) throw usage_error("lambda too short");
      for (int i = 2; i < upto; ++i)
        if (values[i] - values[i - 1] < values[i - 1] - values[i - 2]) return false;
      return true;
    }
  }
  return false;
}

std::string LambdaWeights::tag() const {
  switch (family) {
    case Family::Pav:
      return "pav";
    case Family::Power: {
      std::ostringstream s;
      s << "power(" << exponent << ")";
      return s.str();
    }
    case Family::Custom:
      return "custom";
  }
  return "?";
}

TieBreak TieBreak::adversarial(Committee target) {
  TieBreak tb;
  tb.policy = Policy::Adversarial;
  std::sort(target.begin(), target.end());
  tb.oracle = std::move(target);
  return tb;
}

int TieBreak::pick(const std::vector<int>& tied) const {
  assert(!tied.empty());
  switch (policy) {
    case Policy::LexMin:
      return *std::min_element(tied.begin(), tied.end());
    case Policy::LexMax:
      return *std::max_element(tied.begin(), tied.end());
    case Policy::Adversarial: {
      int best = -1;
      for (int c : tied) {
        bool in = std::binary_search(oracle.begin(), oracle.end(), c);
        if (best < 0) {
          best = c;
        } else {
          bool best_in = std::binary_search(oracle.begin(), oracle.end(), best);
          if (in != best_in ? in : c < best) best = c;
        }
      }
      return best;
    }
  }
  return tied.front();
}

bool TieBreak::prefers(const Committee& a, const Committee& b) const {
  switch (policy) {
    case Policy::LexMin:
      return a < b;
    case Policy::LexMax:
      return a > b;
    case Policy::Adversarial: {
      auto overlap = [&](const Committee& w) {
        int o = 0;
        for (int c : w)
          if (std::binary_search(oracle.begin(), oracle.end(), c)) ++o;
        return o;
      };
      int oa = overlap(a), ob = overlap(b);
      if (oa != ob) return oa > ob;
      return a < b;
    }
  }
  return a < b;
}

std::string trace_log(const ElectionTrace& t) {
  std::ostringstream out;
  for (size_t i = 0; i < t.steps.size(); ++i) {
    const auto& s = t.steps[i];
    out << (i + 1) << ' ' << s.chosen << ' ' << rat_str(s.value) << " {";
    for (size_t j = 0; j < s.tie_set.size(); ++j) out << (j ? "," : "") << s.tie_set[j];
    out << "}\n";
  }
  return out.str();
}

namespace {

int popcount_and(const std::vector<uint64_t>& a, const std::vector<uint64_t>& b) {
  int c = 0;
  for (size_t i = 0; i < a.size(); ++i) c += __builtin_popcountll(a[i] & b[i]);
  return c;
}

std::vector<uint64_t> committee_mask(const Committee& w, int m) {
  std::vector<uint64_t> mask((m + 63) / 64, 0);
  for (int c : w) mask[(c - 1) / 64] |= uint64_t(1) << ((c - 1) % 64);
  return mask;
}

}  // namespace

int64_t committee_count(int m, int k, int64_t cap) {
  if (k < 0 || k > m) return 0;
  __int128 r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * (m - k + i) / i;
    if (r > cap) return cap + 1;
  }
  return int64_t(r);
}

Rat thiele_score(const ApprovalProfile& p, const LambdaWeights& lambda, const Committee& w) {
  int k = int(w.size());
  std::vector<Rat> prefix(k + 1);
  prefix[0] = 0;
  for (int j = 1; j <= k; ++j) prefix[j] = prefix[j - 1] + lambda.at(j);
  auto wmask = committee_mask(w, p.num_candidates);
  Rat score = 0;
  for (size_t g = 0; g < p.groups.size(); ++g) {
    int hits = popcount_and(p.group_mask(int(g)), wmask);
    if (hits > 0) score += p.groups[g].weight * prefix[hits];
  }
  return score;
}

ExactResult thiele_exact(const ApprovalProfile& p, const LambdaWeights& lambda, int k,
                         const TieBreak& tb, bool all_optima, int64_t budget) {
  int m = p.num_candidates;
  if (k < 0 || k > m) throw usage_error("committee size out of range");
  int64_t count = committee_count(m, k, budget);
  if (count > budget)
    throw computation_error("enumeration budget exceeded: C(" + std::to_string(m) + "," +
                            std::to_string(k) + ") > " + std::to_string(budget));

  std::vector<Rat> prefix(k + 1);
  prefix[0] = 0;
  for (int j = 1; j <= k; ++j) prefix[j] = prefix[j - 1] + lambda.at(j);
  std::vector<std::vector<uint64_t>> gmask;
  for (size_t g = 0; g < p.groups.size(); ++g) gmask.push_back(p.group_mask(int(g)));

  ExactResult res;
  bool first = true;
  Committee cur(k);
  for (int i = 0; i < k; ++i) cur[i] = i + 1;
  while (true) {
    auto wmask = committee_mask(cur, m);
    Rat score = 0;
    for (size_t g = 0; g < p.groups.size(); ++g) {
      int hits = popcount_and(gmask[g], wmask);
      if (hits > 0) score += p.groups[g].weight * prefix[hits];
    }
    if (first || score > res.score) {
      res.score = score;
      res.winner = cur;
      if (all_optima) {
        res.optima.clear();
        res.optima.push_back(cur);
      }
      first = false;
    } else if (score == res.score) {
      if (tb.prefers(cur, res.winner)) res.winner = cur;
      if (all_optima) res.optima.push_back(cur);
    }
    // next k-combination of {1..m}
    int i = k - 1;
    while (i >= 0 && cur[i] == m - (k - 1 - i)) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  if (first && k > 0) throw computation_error("no committee enumerated");
  return res;
}

ExactResult pav(const ApprovalProfile& p, int k, const TieBreak& tb, bool all_optima,
                int64_t budget) {
  return thiele_exact(p, LambdaWeights::pav(), k, tb, all_optima, budget);
}

ElectionResult seq_pav(const ApprovalProfile& p, int k, const TieBreak& tb) {
  int m = p.num_candidates;
  if (k < 0 || k > m) throw usage_error("committee size out of range");
  Rat n = p.total_weight();
  if (n == 0) throw usage_error("empty electorate");
  auto lambda = LambdaWeights::pav();

  std::vector<int> hits(p.groups.size(), 0);  // committee members approved so far
  std::vector<bool> chosen(m + 1, false);
  ElectionResult res;
  for (int step = 0; step < k; ++step) {
    Rat best = -1;
    std::vector<int> tie;
    for (int c = 1; c <= m; ++c) {
      if (chosen[c]) continue;
      Rat gain = 0;
      for (size_t g = 0; g < p.groups.size(); ++g)
        if (p.approves(int(g), c)) gain += p.groups[g].weight * lambda.at(hits[g] + 1);
      if (tie.empty() || gain > best) {
        best = gain;
        tie.assign(1, c);
      } else if (gain == best) {
        tie.push_back(c);
      }
    }
    int c = tb.pick(tie);
    chosen[c] = true;
    for (size_t g = 0; g < p.groups.size(); ++g)
      if (p.approves(int(g), c)) ++hits[g];
    TraceStep s;
    s.chosen = c;
    s.value = best / n;  // marginal gain per unit weight
    s.tie_set = tie;
    res.trace.steps.push_back(std::move(s));
    res.committee.push_back(c);
  }
  return res;
}

// Money process: every voter earns one credit per time unit, a candidate costs
// n credits and is bought at the first moment its approvers' credits reach n;
// the buyers' credits reset to zero.  Simultaneously electable candidates are
// bought one at a time in tie-break order, re-checking electability after each
// reset.
ElectionResult seq_phragmen_credit(const ApprovalProfile& p, int k, const TieBreak& tb) {
  int m = p.num_candidates;
  if (k < 0 || k > m) throw usage_error("committee size out of range");
  Rat n = p.total_weight();
  if (n == 0) throw usage_error("empty electorate");

  size_t ng = p.groups.size();
  std::vector<Rat> credit(ng, Rat(0));  // per voter
  std::vector<bool> chosen(m + 1, false);
  Rat now = 0;
  ElectionResult res;
  for (int step = 0; step < k; ++step) {
    bool any = false;
    Rat best_delta = 0;
    std::vector<int> tie;
    for (int c = 1; c <= m; ++c) {
      if (chosen[c]) continue;
      Rat wt = 0, have = 0;
      for (size_t g = 0; g < ng; ++g)
        if (p.approves(int(g), c)) {
          wt += p.groups[g].weight;
          have += p.groups[g].weight * credit[g];
        }
      if (wt == 0) continue;  // unapproved candidates are never electable
      Rat delta = (n - have) / wt;
      assert(delta >= 0);
      if (!any || delta < best_delta) {
        best_delta = delta;
        tie.assign(1, c);
        any = true;
      } else if (delta == best_delta) {
        tie.push_back(c);
      }
    }
    if (!any)
      throw computation_error("credit process stalled at step " + std::to_string(step + 1) +
                              ": no remaining candidate has an approver");
    int c = tb.pick(tie);
    now += best_delta;
    for (size_t g = 0; g < ng; ++g) credit[g] += best_delta;

    TraceStep s;
    s.chosen = c;
    s.value = now;
    s.tie_set = tie;
    s.payments.assign(ng, Rat(0));
    Rat paid = 0;
    for (size_t g = 0; g < ng; ++g)
      if (p.approves(int(g), c)) {
        s.payments[g] = credit[g];
        paid += p.groups[g].weight * credit[g];
        credit[g] = 0;
      }
    assert(paid == n);
    s.credits = credit;
    chosen[c] = true;
    res.committee.push_back(c);
    res.trace.steps.push_back(std::move(s));
  }
  return res;
}

namespace {

// Smallest water level v with sum_g w_g * max(0, v - load_g) = units over the
// given groups.  Exact rational computation.
Rat water_level(const std::vector<std::pair<Rat, Rat>>& load_weight, const Rat& units) {
  auto sorted = load_weight;
  std::sort(sorted.begin(), sorted.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  Rat sw = 0, sl = 0;
  for (size_t j = 0; j < sorted.size(); ++j) {
    sw += sorted[j].second;
    sl += sorted[j].second * sorted[j].first;
    Rat v = (units + sl) / sw;
    if (j + 1 == sorted.size() || v <= sorted[j + 1].first) return v;
  }
  throw computation_error("water level not found");  // unreachable for sw > 0
}

}  // namespace

// Load-balancing formulation: per step pick the candidate whose unit of load,
// optimally spread over its approvers, minimizes the maximum voter load.
ElectionResult seq_phragmen_load(const ApprovalProfile& p, int k, const TieBreak& tb) {
  int m = p.num_candidates;
  if (k < 0 || k > m) throw usage_error("committee size out of range");
  if (p.total_weight() == 0) throw usage_error("empty electorate");

  size_t ng = p.groups.size();
  std::vector<Rat> load(ng, Rat(0));  // per voter
  std::vector<bool> chosen(m + 1, false);
  Rat lmax = 0;
  ElectionResult res;
  for (int step = 0; step < k; ++step) {
    bool any = false;
    Rat best_crit = 0;
    Rat best_level = 0;
    std::vector<int> tie;
    std::vector<Rat> levels(m + 1, Rat(0));
    for (int c = 1; c <= m; ++c) {
      if (chosen[c]) continue;
      std::vector<std::pair<Rat, Rat>> lw;
      for (size_t g = 0; g < ng; ++g)
        if (p.approves(int(g), c)) lw.emplace_back(load[g], p.groups[g].weight);
      if (lw.empty()) continue;
      Rat level = water_level(lw, Rat(1));
      levels[c] = level;
      Rat crit = std::max(level, lmax);
      if (!any || crit < best_crit) {
        best_crit = crit;
        tie.assign(1, c);
        any = true;
      } else if (crit == best_crit) {
        tie.push_back(c);
      }
    }
    if (!any)
      throw computation_error("load process stalled at step " + std::to_string(step + 1) +
                              ": no remaining candidate has an approver");
    int c = tb.pick(tie);
    Rat level = levels[c];
    for (size_t g = 0; g < ng; ++g)
      if (p.approves(int(g), c) && load[g] < level) load[g] = level;
    lmax = 0;
    for (size_t g = 0; g < ng; ++g) lmax = std::max(lmax, load[g]);

    TraceStep s;
    s.chosen = c;
    s.value = lmax;
    s.tie_set = tie;
    s.loads = load;
    s.max_load = lmax;
    chosen[c] = true;
    res.committee.push_back(c);
    res.trace.steps.push_back(std::move(s));
  }
  return res;
}

Rat committee_max_load(const ApprovalProfile& p, const Committee& w) {
  int k = int(w.size());
  if (k == 0) return Rat(0);
  if (k > 30) throw computation_error("committee too large for load-balancing subproblem");
  size_t ng = p.groups.size();
  // which committee members each group approves
  std::vector<uint32_t> approves_of(ng, 0);
  for (size_t g = 0; g < ng; ++g)
    for (int i = 0; i < k; ++i)
      if (p.approves(int(g), w[i])) approves_of[g] |= uint32_t(1) << i;
  // bottleneck bound: max over subsets S of |S| / weight(N(S)); tight by a
  // max-flow argument, so it equals the optimal max load
  Rat best = 0;
  for (uint32_t s = 1; s < (uint32_t(1) << k); ++s) {
    Rat cover = 0;
    for (size_t g = 0; g < ng; ++g)
      if (approves_of[g] & s) cover += p.groups[g].weight;
    if (cover == 0)
      throw computation_error("committee member without approvers: load cannot be distributed");
    Rat v = Rat(__builtin_popcount(s)) / cover;
    if (v > best) best = v;
  }
  return best;
}

MaxPhragmenResult max_phragmen(const ApprovalProfile& p, int k, int64_t budget) {
  int m = p.num_candidates;
  if (k < 0 || k > m) throw usage_error("committee size out of range");
  int64_t count = committee_count(m, k, budget);
  if (count > budget)
    throw computation_error("enumeration budget exceeded: C(" + std::to_string(m) + "," +
                            std::to_string(k) + ") > " + std::to_string(budget));
  MaxPhragmenResult res;
  bool first = true;
  Committee cur(k);
  for (int i = 0; i < k; ++i) cur[i] = i + 1;
  while (true) {
    bool feasible = true;
    Rat v;
    try {
      v = committee_max_load(p, cur);
    } catch (const computation_error&) {
      feasible = false;  // member without approvers
    }
    if (feasible) {
      if (first || v < res.max_load) {
        res.max_load = v;
        res.optima.assign(1, cur);
        first = false;
      } else if (v == res.max_load) {
        res.optima.push_back(cur);
      }
    }
    int i = k - 1;
    while (i >= 0 && cur[i] == m - (k - 1 - i)) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  if (first)
    throw computation_error("no feasible committee: every size-" + std::to_string(k) +
                            " committee contains an unapproved candidate");
  return res;
}

}  // namespace abc
