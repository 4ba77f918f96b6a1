#pragma once

#include <optional>
#include <string>
#include <vector>

#include "abc/profile.hpp"
#include "abc/rational.hpp"

namespace abc {

// Voter population anchored on a commonly approved candidate set T: all the
// groups whose approval sets contain T.
struct CohesiveGroup {
  std::vector<int> anchor;       // T, sorted
  std::vector<int> member_groups;
  Rat weight;
  bool ell_large = false;  // weight >= ell * n / k
};

struct GroupSearchOptions {
  // anchors are intersections of at most this many distinct approval sets
  int max_seed_sets = 3;
  std::vector<std::vector<int>> extra_anchors;
};

struct PropQuery {
  int ell = 1;
  Rat threshold;  // required number of common candidates, and the satisfaction bar
};

struct PropRow {
  int ell = 0;
  Rat threshold;
  std::vector<int> anchor;
  Rat group_weight;
  int common_candidates = 0;
  Rat avg_satisfaction;  // minimum over ell-large sub-populations of the anchor group
  bool violation = false;
};

struct EjrWitness {
  std::vector<int> anchor;
  int ell = 0;
  SubPopulation group;
};

struct AuditReport {
  std::vector<PropRow> rows;
  std::optional<PropRow> worst_violation;
  Rat utilitarian_ratio;
  std::string search_note;  // records the search bounds (anchor construction)
};

std::string audit_csv(const AuditReport& r, bool exact);

// Weighted mean of |W ∩ A(i)| over the sub-population.
Rat avg_satisfaction(const ApprovalProfile& p, const SubPopulation& v, const Committee& w);

std::vector<CohesiveGroup> cohesive_groups(const ApprovalProfile& p, int k, int ell,
                                           const Rat& threshold,
                                           const GroupSearchOptions& opts = {});

// Falsification audit per query: for every anchored group with enough common
// candidates, the minimum average satisfaction over its ell-large
// sub-populations; a value below the query threshold falsifies "threshold is a
// guarantee".  The search is restricted to anchors from cohesive_groups, which
// the report notes.
AuditReport empirical_prop_degree(const ApprovalProfile& p, const Committee& w, int k,
                                  const std::vector<PropQuery>& queries,
                                  const GroupSearchOptions& opts = {});

// Approval score of w divided by the optimum (top-k candidates by approver
// weight, ties by index).
Rat utilitarian_ratio(const ApprovalProfile& p, const Committee& w, int k);

Committee top_k_by_approvals(const ApprovalProfile& p, int k);

struct EjrResult {
  bool satisfied = true;
  std::optional<EjrWitness> witness;
};

// alpha-approximate EJR check over the anchored-group search: every ell-large
// group commonly approving >= ell candidates must contain a voter with at
// least ceil(alpha*ell) representatives.
EjrResult check_ejr(const ApprovalProfile& p, const Committee& w, int k, const Rat& alpha,
                    const GroupSearchOptions& opts = {});

}  // namespace abc
