#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "abc/bounds.hpp"
#include "abc/gen.hpp"
#include "abc/lp.hpp"
#include "oracles.hpp"

using namespace abc;

TEST_CASE("phragmen lower bound (ell-1)/2") {
  CHECK(phragmen_lower(1).value == 0.0);
  CHECK(phragmen_lower(3).value == 1.0);
  CHECK(phragmen_lower(5).value == 2.0);
  CHECK_THROWS_AS(phragmen_lower(0), usage_error);
}

TEST_CASE("phragmen upper bound formula and hypotheses") {
  auto r = phragmen_upper(2, 10);
  CHECK(r.value == doctest::Approx(9.0 / 7.0).epsilon(1e-12));
  auto r1 = phragmen_upper(1, 10);
  CHECK(r1.value == doctest::Approx(10.0 / 17.0).epsilon(1e-12));
  CHECK(r1.notes.find("10/17") != std::string::npos);
  // limit ell/2 for large k
  CHECK(phragmen_upper(2, 2000000).value == doctest::Approx(1.0).epsilon(1e-4));
  CHECK_THROWS_AS(phragmen_upper(2, 4), usage_error);   // needs ell < k/2
  CHECK_THROWS_AS(phragmen_upper(2, 9), usage_error);   // needs ell | k
}

TEST_CASE("max-phragmen upper bound is the constant 1") {
  for (int ell : {1, 5, 100}) CHECK(maxphragmen_upper(ell).value == 1.0);
}

TEST_CASE("thiele_guarantee: pav closed form ell-1+ell/k") {
  for (int k = 1; k <= 20; ++k)
    for (int ell = 1; ell <= k; ++ell) {
      auto r = thiele_guarantee(LambdaWeights::pav(), ell, k);
      double closed = ell - 1 + double(ell) / k;
      CHECK(std::fabs(r.value - closed) < 1e-9);
      CHECK(r.residual < 1e-9);
    }
  // ell = k forces the root g = k
  CHECK(thiele_guarantee(LambdaWeights::pav(), 7, 7).value == 7.0);
}

TEST_CASE("thiele_guarantee: sqrt family satisfies its defining relation") {
  auto lam = LambdaWeights::power(0.5);
  for (auto [ell, k] : std::vector<std::pair<int, int>>{{1, 4}, {3, 10}, {10, 50}, {25, 50}}) {
    auto r = thiele_guarantee(lam, ell, k);
    CHECK(r.residual < 1e-9);
    // (k-ell)/ell * sqrt(k) = (k-g)/sqrt(1+g)
    double lhs = double(k - ell) / ell * std::sqrt(double(k));
    double rhs = (k - r.value) / std::sqrt(1 + r.value);
    CHECK(std::fabs(lhs - rhs) < 1e-8);
  }
}

TEST_CASE("thiele_guarantee is non-decreasing in ell") {
  for (auto lam : {LambdaWeights::pav(), LambdaWeights::power(0.5), LambdaWeights::power(2)}) {
    double prev = -1e9;
    for (int ell = 1; ell <= 20; ++ell) {
      double v = thiele_guarantee(lam, ell, 20).value;
      CHECK(v >= prev - 1e-9);
      prev = v;
    }
  }
}

TEST_CASE("thiele_upper sits above thiele_guarantee") {
  for (auto lam : {LambdaWeights::pav(), LambdaWeights::power(0.5),
                   LambdaWeights::power(2.0 / 3.0), LambdaWeights::power(2)})
    for (int k : {4, 10, 25})
      for (int ell = 1; ell <= k; ++ell) {
        auto lo = thiele_guarantee(lam, ell, k);
        auto hi = thiele_upper(lam, ell, k);
        CHECK(hi.value >= lo.value - 1e-9);
        CHECK(hi.residual < 1e-9);
      }
  // pav upper root solves (k-g)/g = (k-ell)/ell * k/(k+1) => g = k*ell*(k+1)/(k^2+ell)
  auto up = thiele_upper(LambdaWeights::pav(), 3, 10);
  CHECK(std::fabs(up.value - 10.0 * 3 * 11 / 103.0) < 1e-9);
  CHECK(thiele_upper(LambdaWeights::pav(), 10, 10).value == 10.0);
}

TEST_CASE("lambda preconditions are enforced") {
  auto concave = LambdaWeights::custom({Rat(10), Rat(9), Rat(7)});  // convexity fails
  CHECK_THROWS_AS(thiele_guarantee(concave, 1, 2), computation_error);
  auto short_list = LambdaWeights::custom({Rat(1), Rat(1, 2)});
  CHECK_THROWS_AS(thiele_guarantee(short_list, 1, 5), usage_error);  // lambda too short
  auto increasing = LambdaWeights::custom({Rat(1), Rat(2), Rat(4)});
  CHECK_THROWS_AS(thiele_guarantee(increasing, 1, 2), computation_error);
}

TEST_CASE("efficiency lower bound: pav quadratic") {
  auto r = thiele_efficiency_lower(LambdaWeights::pav(), 4);
  double alpha = (-1 + std::sqrt(17.0)) / 8;
  CHECK(std::fabs(r.alpha - alpha) < 1e-9);
  CHECK(std::fabs(r.guarantee - alpha / (1 + alpha)) < 1e-12);
  CHECK(r.guarantee > r.alpha - r.alpha * r.alpha);
  CHECK(r.residual < 1e-9);
}

TEST_CASE("efficiency upper bound: pav closed form 2/sqrt(k)-1/k") {
  for (int k : {4, 16, 100}) {
    auto r = thiele_efficiency_upper(LambdaWeights::pav(), k);
    CHECK(std::fabs(r.alpha - 1.0 / std::sqrt(double(k))) < 1e-9);
    CHECK(std::fabs(r.guarantee - (2.0 / std::sqrt(double(k)) - 1.0 / k)) < 1e-9);
  }
  CHECK(thiele_efficiency_upper(LambdaWeights::pav(), 4).guarantee == doctest::Approx(0.75));
  CHECK(thiele_efficiency_upper(LambdaWeights::pav(), 100).guarantee == doctest::Approx(0.19));
}

TEST_CASE("efficiency upper >= lower for tested families") {
  for (auto lam : {LambdaWeights::pav(), LambdaWeights::power(0.5), LambdaWeights::power(2)})
    for (int k : {2, 4, 16, 64}) {
      auto lo = thiele_efficiency_lower(lam, k);
      auto hi = thiele_efficiency_upper(lam, k);
      CHECK(hi.guarantee >= lo.guarantee - 1e-12);
      CHECK(hi.alpha >= lo.alpha - 1e-12);
    }
}

TEST_CASE("seqpav_degree_from_h") {
  auto [lo1, up1] = seqpav_degree_from_h(1, 1, 1.0);
  CHECK(lo1 == 0.0);
  CHECK(up1 == 1.0);
  auto [lo2, up2] = seqpav_degree_from_h(2, 10, 1.0 / 0.7825);
  CHECK(up2 == doctest::Approx(1.565).epsilon(1e-3));
  CHECK(lo2 < up2);
}

TEST_CASE("seqpav_delta") {
  auto single = make_profile(1, {{Rat(4), {1}}});
  CHECK(seqpav_delta(single, 1) == 1.0);
  auto ex1 = example1_profile();
  auto run = seq_pav(ex1, 10);
  CHECK(seqpav_delta(ex1, 10) == rat_double(run.trace.steps.back().value));
  // exhaustive exploration maximizes over tie branches
  auto tied = make_profile(4, {{Rat(1), {1, 3}}, {Rat(1), {2, 3}}, {Rat(2), {4}}});
  double dflt = seqpav_delta(tied, 2);
  double best = seqpav_delta(tied, 2, {}, true);
  CHECK(best >= dflt);
}

TEST_CASE("lp objective is an oracle for seqpav_delta on extracted profiles") {
  for (int k = 2; k <= 5; ++k) {
    auto prob = build_exact_lp(k);
    auto sol = solve_lp(prob);
    auto p = lp_to_profile(prob, sol);
    double delta = seqpav_delta(p, k);
    CHECK(std::fabs(k * delta - sol.objective_value) < 1e-3);
  }
}

TEST_CASE("bounds csv shape") {
  auto csv = bounds_csv({phragmen_lower(3), phragmen_upper(2, 10)});
  CHECK(csv.find("rule,ell,k,kind,value,residual\n") == 0);
  CHECK(csv.find("seq-phragmen,3,0,lower,1,") != std::string::npos);
}
