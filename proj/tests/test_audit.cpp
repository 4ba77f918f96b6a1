#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "abc/audit.hpp"
#include "abc/gen.hpp"
#include "abc/rules.hpp"
#include "oracles.hpp"

using namespace abc;

TEST_CASE("avg_satisfaction") {
  auto ex1 = example1_profile();
  Committee w = {1, 2, 3, 4, 5, 6, 11, 12, 13, 21};
  SubPopulation first_group{{{0, Rat(60)}}};
  CHECK(avg_satisfaction(ex1, first_group, w) == 6);
  CHECK(avg_satisfaction(ex1, whole_population(ex1), {}) == 0);
  CHECK_THROWS_AS(avg_satisfaction(ex1, SubPopulation{}, w), usage_error);
  // partial shares weight the mean
  auto p = make_profile(2, {{Rat(2), {1}}, {Rat(2), {2}}});
  SubPopulation mixed{{{0, Rat(1)}, {1, Rat(3, 2)}}};  // sub-weights within group bounds
  CHECK(avg_satisfaction(p, mixed, {1}) == Rat(2, 5));
}

TEST_CASE("cohesive_groups on the party-list example") {
  auto ex1 = example1_profile();
  auto groups6 = cohesive_groups(ex1, 10, 6, Rat(5));
  bool found = false;
  for (const auto& g : groups6)
    if (g.weight == 60 && int(g.anchor.size()) == 10 && g.ell_large) found = true;
  CHECK(found);
  // weight 60 < 70 = 7*n/k, so the same group is not 7-large
  for (const auto& g : cohesive_groups(ex1, 10, 7, Rat(5)))
    if (g.weight == 60) CHECK_FALSE(g.ell_large);
}

TEST_CASE("cohesive_groups: disjoint singletons stay separate") {
  auto p = make_profile(3, {{Rat(1), {1}}, {Rat(1), {2}}, {Rat(1), {3}}});
  for (const auto& g : cohesive_groups(p, 3, 1, Rat(1))) CHECK(g.member_groups.size() == 1);
}

TEST_CASE("utilitarian_ratio") {
  auto ex1 = example1_profile();
  CHECK(utilitarian_ratio(ex1, top_k_by_approvals(ex1, 10), 10) == 1);
  // a committee nobody approves
  auto p = make_profile(4, {{Rat(3), {1}}, {Rat(1), {2}}});
  CHECK(utilitarian_ratio(p, {3, 4}, 2) == 0);
  CHECK(utilitarian_ratio(p, {1, 3}, 2) == Rat(3, 4));
  // invariant under weight scaling
  auto q = make_profile(4, {{Rat(30), {1}}, {Rat(10), {2}}});
  CHECK(utilitarian_ratio(q, {1, 3}, 2) == Rat(3, 4));
}

TEST_CASE("empirical_prop_degree flags the designated violation") {
  auto [p, spec] = gen_maxphragmen_tie(4, 3);
  // W2 gives every voter exactly one representative; the 2-large cohesive
  // electorate is entitled to 2
  auto rep = empirical_prop_degree(p, spec.w2, 4, {{2, Rat(2)}});
  REQUIRE(rep.worst_violation.has_value());
  CHECK(rep.worst_violation->avg_satisfaction == 1);
  // W1 satisfies the same query
  auto rep1 = empirical_prop_degree(p, spec.w1, 4, {{2, Rat(2)}});
  CHECK_FALSE(rep1.worst_violation.has_value());
  // vacuous when no group is ell-large at a huge ell: k bounds ell anyway
  auto rep2 = empirical_prop_degree(p, spec.w2, 4, {{4, Rat(5)}});
  CHECK(rep2.rows.empty());
}

TEST_CASE("exhaustive pav never violates the (ell, ell-1) guarantee (random profiles)") {
  std::mt19937 rng(77);
  for (int t = 0; t < 60; ++t) {
    auto p = oracles::random_profile(rng);
    int k = std::min(1 + int(rng() % 4), p.num_candidates);
    auto opt = pav(p, k, {}, true);
    for (const auto& w : opt.optima) {
      std::vector<PropQuery> queries;
      for (int ell = 1; ell <= k; ++ell) queries.push_back({ell, Rat(ell - 1)});
      auto rep = empirical_prop_degree(p, w, k, queries);
      CHECK_FALSE(rep.worst_violation.has_value());
    }
  }
}

TEST_CASE("check_ejr") {
  auto [p, spec] = gen_maxphragmen_tie(4, 3);
  auto bad = check_ejr(p, spec.w2, 4, Rat(1));
  CHECK_FALSE(bad.satisfied);
  REQUIRE(bad.witness.has_value());
  CHECK(bad.witness->ell == 2);
  auto good = check_ejr(p, spec.w1, 4, Rat(1));
  CHECK(good.satisfied);
  // k=1: covering the largest 1-large cohesive group suffices
  auto q = make_profile(2, {{Rat(3), {1}}, {Rat(1), {2}}});
  CHECK(check_ejr(q, {1}, 1, Rat(1)).satisfied);
}

TEST_CASE("average-threshold guarantee implies alpha-EJR (pigeonhole bridge)") {
  std::mt19937 rng(123);
  for (int t = 0; t < 80; ++t) {
    auto p = oracles::random_profile(rng);
    int k = std::min(1 + int(rng() % 4), p.num_candidates);
    auto w = seq_pav(p, k).committee;
    std::sort(w.begin(), w.end());
    for (Rat alpha : {Rat(1, 2), Rat(1)}) {
      std::vector<PropQuery> queries;
      for (int ell = 1; ell <= k; ++ell) queries.push_back({ell, alpha * ell});
      auto rep = empirical_prop_degree(p, w, k, queries);
      bool all_meet = !rep.worst_violation.has_value();
      if (all_meet) {
        // if every ell-large group with alpha*ell common candidates averages
        // alpha*ell, some member holds ceil(alpha*ell) seats
        CHECK(check_ejr(p, w, k, alpha).satisfied);
      }
    }
  }
}

TEST_CASE("audit csv") {
  auto [p, spec] = gen_maxphragmen_tie(3, 2);
  auto rep = empirical_prop_degree(p, spec.w2, 3, {{1, Rat(0)}});
  auto csv = audit_csv(rep, true);
  CHECK(csv.find("ell,threshold,anchor,group_weight,common_candidates,avg_satisfaction,violation") == 0);
}
