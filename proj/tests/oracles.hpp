#pragma once

// Test-only oracles, kept independent of the library's implementation paths.

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "abc/profile.hpp"
#include "abc/rational.hpp"

namespace oracles {

using abc::ApprovalProfile;
using abc::Committee;
using abc::Rat;

// All D'Hondt seat vectors (ties explored exhaustively): k rounds of
// argmax weight/(seats+1).
inline std::set<std::vector<int>> dhondt_all(const std::vector<Rat>& weights, int k) {
  std::set<std::vector<int>> outcomes;
  std::vector<int> seats(weights.size(), 0);
  auto rec = [&](auto&& self, int remaining) -> void {
    if (remaining == 0) {
      outcomes.insert(seats);
      return;
    }
    Rat best = -1;
    std::vector<size_t> arg;
    for (size_t i = 0; i < weights.size(); ++i) {
      Rat q = weights[i] / (seats[i] + 1);
      if (arg.empty() || q > best) {
        best = q;
        arg.assign(1, i);
      } else if (q == best) {
        arg.push_back(i);
      }
    }
    for (size_t i : arg) {
      ++seats[i];
      self(self, remaining - 1);
      --seats[i];
    }
  };
  rec(rec, k);
  return outcomes;
}

// Single D'Hondt outcome with lowest-index tie-breaking.
inline std::vector<int> dhondt(const std::vector<Rat>& weights, int k) {
  std::vector<int> seats(weights.size(), 0);
  for (int r = 0; r < k; ++r) {
    size_t arg = 0;
    Rat best = -1;
    for (size_t i = 0; i < weights.size(); ++i) {
      Rat q = weights[i] / (seats[i] + 1);
      if (i == 0 || q > best) {
        best = q;
        arg = i;
      }
    }
    ++seats[arg];
  }
  return seats;
}

// Brute-force PAV optima by direct set arithmetic (no masks, no shared code
// with the library scorer).
inline std::vector<Committee> naive_pav_optima(const ApprovalProfile& p, int k) {
  std::vector<Committee> best;
  Rat best_score = -1;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i + 1;
  while (true) {
    Rat score = 0;
    for (const auto& g : p.groups) {
      int h = 0;
      for (int c : idx)
        if (std::binary_search(g.approved.begin(), g.approved.end(), c)) ++h;
      for (int j = 1; j <= h; ++j) score += g.weight / j;
    }
    if (best.empty() || score > best_score) {
      best_score = score;
      best.assign(1, idx);
    } else if (score == best_score) {
      best.push_back(idx);
    }
    int i = k - 1;
    while (i >= 0 && idx[i] == p.num_candidates - (k - 1 - i)) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return best;
}

// committee members drawn from each party block of a party-list profile
inline std::vector<int> party_counts(const Committee& w, int parties, int per_party) {
  std::vector<int> counts(parties, 0);
  for (int c : w) ++counts[(c - 1) / per_party];
  return counts;
}

struct RandomProfileOpts {
  int max_m = 8;
  int max_groups = 5;
  int max_weight = 3;
  double density = 0.45;
};

inline ApprovalProfile random_profile(std::mt19937& rng, const RandomProfileOpts& o = {}) {
  std::uniform_int_distribution<int> md(2, o.max_m), gd(1, o.max_groups), wd(1, o.max_weight);
  std::uniform_real_distribution<double> ud(0, 1);
  for (;;) {
    int m = md(rng);
    int ng = gd(rng);
    std::vector<abc::VoterGroup> groups;
    for (int g = 0; g < ng; ++g) {
      abc::VoterGroup vg;
      vg.weight = wd(rng);
      for (int c = 1; c <= m; ++c)
        if (ud(rng) < o.density) vg.approved.push_back(c);
      if (vg.approved.empty()) vg.approved.push_back(1 + int(ud(rng) * m) % m);
      groups.push_back(std::move(vg));
    }
    if (groups.empty()) continue;
    return abc::make_profile(m, std::move(groups));
  }
}

inline int approved_candidate_count(const ApprovalProfile& p) {
  int count = 0;
  for (int c = 1; c <= p.num_candidates; ++c)
    if (p.approver_weight(c) > 0) ++count;
  return count;
}

}  // namespace oracles
