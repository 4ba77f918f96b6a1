#include "abc/audit.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace abc {

namespace {

int hits(const ApprovalProfile& p, int group, const Committee& w) {
  int h = 0;
  for (int c : w)
    if (p.approves(group, c)) ++h;
  return h;
}

std::vector<int> intersect(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

// Distinct nonempty intersections of at most max_seed_sets approval sets,
// plus any user-supplied anchors.
std::vector<std::vector<int>> anchor_sets(const ApprovalProfile& p,
                                          const GroupSearchOptions& opts) {
  std::set<std::vector<int>> found;
  std::vector<std::vector<int>> frontier;
  for (const auto& g : p.groups)
    if (!g.approved.empty() && found.insert(g.approved).second) frontier.push_back(g.approved);
  std::vector<std::vector<int>> singles = frontier;
  for (int depth = 2; depth <= opts.max_seed_sets; ++depth) {
    std::vector<std::vector<int>> next;
    for (const auto& t : frontier)
      for (const auto& s : singles) {
        auto x = intersect(t, s);
        if (!x.empty() && found.insert(x).second) next.push_back(x);
      }
    if (next.empty()) break;
    frontier = std::move(next);
  }
  for (auto t : opts.extra_anchors) {
    std::sort(t.begin(), t.end());
    found.insert(t);
  }
  return {found.begin(), found.end()};
}

std::vector<int> approvers_of(const ApprovalProfile& p, const std::vector<int>& anchor) {
  std::vector<int> members;
  for (size_t g = 0; g < p.groups.size(); ++g) {
    const auto& a = p.groups[g].approved;
    if (std::includes(a.begin(), a.end(), anchor.begin(), anchor.end())) members.push_back(int(g));
  }
  return members;
}

}  // namespace

Rat avg_satisfaction(const ApprovalProfile& p, const SubPopulation& v, const Committee& w) {
  Rat total = 0, mass = 0;
  for (const auto& [g, share] : v.shares) {
    total += share * hits(p, g, w);
    mass += share;
  }
  if (mass <= 0) throw usage_error("empty voter group");
  return total / mass;
}

std::vector<CohesiveGroup> cohesive_groups(const ApprovalProfile& p, int k, int ell,
                                           const Rat& threshold, const GroupSearchOptions& opts) {
  if (ell > k) throw usage_error("ell exceeds committee size");
  Rat n = p.total_weight();
  std::vector<CohesiveGroup> out;
  for (const auto& anchor : anchor_sets(p, opts)) {
    if (Rat(int(anchor.size())) < threshold) continue;
    CohesiveGroup cg;
    cg.anchor = anchor;
    cg.member_groups = approvers_of(p, anchor);
    cg.weight = 0;
    for (int g : cg.member_groups) cg.weight += p.groups[g].weight;
    if (cg.weight == 0) continue;
    cg.ell_large = cg.weight * k >= Rat(ell) * n;
    out.push_back(std::move(cg));
  }
  return out;
}

namespace {

// Minimum average satisfaction over sub-populations of exactly ell*n/k weight
// drawn from the anchored group: fill from the lowest-representation groups,
// trimming the last one.
std::optional<Rat> min_avg_over_ell_large(const ApprovalProfile& p, const Committee& w,
                                          const std::vector<int>& members, const Rat& need) {
  std::vector<std::pair<int, int>> by_hits;  // (hits, group)
  Rat avail = 0;
  for (int g : members) {
    by_hits.emplace_back(hits(p, g, w), g);
    avail += p.groups[g].weight;
  }
  if (avail < need || need <= 0) return std::nullopt;
  std::sort(by_hits.begin(), by_hits.end());
  Rat remaining = need, total = 0;
  for (const auto& [h, g] : by_hits) {
    Rat take = std::min(remaining, p.groups[g].weight);
    total += take * h;
    remaining -= take;
    if (remaining == 0) break;
  }
  return total / need;
}

}  // namespace

Committee top_k_by_approvals(const ApprovalProfile& p, int k) {
  std::vector<std::pair<Rat, int>> scored;
  for (int c = 1; c <= p.num_candidates; ++c) scored.emplace_back(p.approver_weight(c), c);
  std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  Committee w;
  for (int i = 0; i < k; ++i) w.push_back(scored[i].second);
  std::sort(w.begin(), w.end());
  return w;
}

Rat utilitarian_ratio(const ApprovalProfile& p, const Committee& w, int k) {
  auto score = [&](const Committee& c) {
    Rat s = 0;
    for (int x : c) s += p.approver_weight(x);
    return s;
  };
  Rat opt = score(top_k_by_approvals(p, k));
  if (opt == 0) return Rat(1);
  return score(w) / opt;
}

AuditReport empirical_prop_degree(const ApprovalProfile& p, const Committee& w, int k,
                                  const std::vector<PropQuery>& queries,
                                  const GroupSearchOptions& opts) {
  AuditReport rep;
  rep.utilitarian_ratio = utilitarian_ratio(p, w, k);
  {
    std::ostringstream note;
    note << "anchors: intersections of <= " << opts.max_seed_sets << " approval sets";
    if (!opts.extra_anchors.empty()) note << " + " << opts.extra_anchors.size() << " user anchors";
    rep.search_note = note.str();
  }
  Rat n = p.total_weight();
  auto anchors = anchor_sets(p, opts);
  for (const auto& q : queries) {
    for (const auto& anchor : anchors) {
      if (Rat(int(anchor.size())) < q.threshold) continue;
      auto members = approvers_of(p, anchor);
      Rat need = Rat(q.ell) * n / k;
      auto mav = min_avg_over_ell_large(p, w, members, need);
      if (!mav) continue;  // anchor group is not ell-large
      PropRow row;
      row.ell = q.ell;
      row.threshold = q.threshold;
      row.anchor = anchor;
      row.common_candidates = int(anchor.size());
      row.group_weight = 0;
      for (int g : members) row.group_weight += p.groups[g].weight;
      row.avg_satisfaction = *mav;
      row.violation = *mav < q.threshold;
      if (row.violation &&
          (!rep.worst_violation ||
           row.avg_satisfaction - row.threshold <
               rep.worst_violation->avg_satisfaction - rep.worst_violation->threshold))
        rep.worst_violation = row;
      rep.rows.push_back(std::move(row));
    }
  }
  return rep;
}

EjrResult check_ejr(const ApprovalProfile& p, const Committee& w, int k, const Rat& alpha,
                    const GroupSearchOptions& opts) {
  Rat n = p.total_weight();
  EjrResult res;
  for (const auto& anchor : anchor_sets(p, opts)) {
    auto members = approvers_of(p, anchor);
    if (members.empty()) continue;
    int max_ell = std::min(k, int(anchor.size()));
    for (int ell = 1; ell <= max_ell; ++ell) {
      // a violating group exists iff the members with < ceil(alpha*ell)
      // representatives alone are ell-large
      long needed = rat_ceil(alpha * ell).get_si();
      Rat low_weight = 0;
      SubPopulation low;
      for (int g : members)
        if (hits(p, g, w) < needed) {
          low_weight += p.groups[g].weight;
          low.shares.emplace_back(g, p.groups[g].weight);
        }
      if (low_weight * k >= Rat(ell) * n && low_weight > 0) {
        res.satisfied = false;
        res.witness = EjrWitness{anchor, ell, std::move(low)};
        return res;
      }
    }
  }
  return res;
}

std::string audit_csv(const AuditReport& r, bool exact) {
  std::ostringstream out;
  out << "ell,threshold,anchor,group_weight,common_candidates,avg_satisfaction,violation\n";
  auto num = [&](const Rat& x) {
    if (exact) return rat_str(x);
    std::ostringstream s;
    s.precision(6);
    s << rat_double(x);
    return s.str();
  };
  for (const auto& row : r.rows) {
    out << row.ell << ',' << num(row.threshold) << ',';
    for (size_t i = 0; i < row.anchor.size(); ++i) out << (i ? " " : "") << row.anchor[i];
    out << ',' << num(row.group_weight) << ',' << row.common_candidates << ','
        << num(row.avg_satisfaction) << ',' << (row.violation ? 1 : 0) << '\n';
  }
  return out.str();
}

}  // namespace abc
