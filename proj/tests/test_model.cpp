#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "abc/profile.hpp"

using namespace abc;

TEST_CASE("parse basic profile") {
  auto p = parse_profile("m=2\n2: 1\n1: 2");
  CHECK(p.num_candidates == 2);
  REQUIRE(p.groups.size() == 2);
  CHECK(p.groups[0].weight == 2);
  CHECK(p.groups[0].approved == std::vector<int>{1});
  CHECK(p.groups[1].weight == 1);
  CHECK(p.groups[1].approved == std::vector<int>{2});
  CHECK(p.total_weight() == 3);
}

TEST_CASE("normalization merges duplicate approval sets") {
  auto p = parse_profile("m=3\n1: 1 2\n1: 1 2");
  REQUIRE(p.groups.size() == 1);
  CHECK(p.groups[0].weight == 2);
  CHECK(p.groups[0].approved == std::vector<int>{1, 2});
}

TEST_CASE("parse errors carry line numbers") {
  CHECK_THROWS_WITH_AS(parse_profile("m=2\n1: 3"), "line 2: candidate index out of range",
                       usage_error);
  CHECK_THROWS_AS(parse_profile("m=2\n0: 1"), usage_error);
  CHECK_THROWS_AS(parse_profile("m=2\n-1/2: 1"), usage_error);
  CHECK_THROWS_AS(parse_profile("m=x"), usage_error);
  CHECK_THROWS_AS(parse_profile("2: 1"), usage_error);
  CHECK_THROWS_AS(parse_profile("m=2\n1 1"), usage_error);
}

TEST_CASE("comments, blank lines, rational weights") {
  auto p = parse_profile("# header\nm=4\n\n3/2: 1 4\n# tail\n2: \n");
  CHECK(p.num_candidates == 4);
  REQUIRE(p.groups.size() == 2);
  CHECK(p.groups[0].approved.empty());  // empty sets sort first
  CHECK(p.groups[0].weight == 2);
  CHECK(p.groups[1].weight == Rat(3, 2));
}

TEST_CASE("write_profile matches the documented format") {
  CHECK(write_profile(make_profile(1, {{Rat(2), {1}}})) == "m=1\n2: 1");
  CHECK(write_profile(make_profile(3, {})) == "m=3");
}

TEST_CASE("parse/write round trip is the identity on normalized profiles") {
  auto p = example1_profile();
  CHECK(parse_profile(write_profile(p)) == p);
  auto q = parse_profile("m=5\n1/3: 2 4\n7: \n2: 1 2 3 4 5");
  CHECK(parse_profile(write_profile(q)) == q);
}

TEST_CASE("example 1 profile") {
  auto p = example1_profile();
  CHECK(p.num_candidates == 30);
  REQUIRE(p.groups.size() == 3);
  CHECK(p.total_weight() == 100);
  CHECK(p.groups[0].weight == 60);
  CHECK(p.groups[0].approved.front() == 1);
  CHECK(p.groups[0].approved.back() == 10);
  // pairwise disjoint approval sets
  for (int c = 1; c <= 30; ++c) {
    int approvers = 0;
    for (size_t g = 0; g < p.groups.size(); ++g) approvers += p.approves(int(g), c);
    CHECK(approvers == 1);
  }
}

TEST_CASE("normalization preserves total weight and approver weights") {
  auto a = make_profile(3, {{Rat(1), {1, 2}}, {Rat(2), {1, 2}}, {Rat(1, 2), {3}}});
  auto b = make_profile(3, {{Rat(3), {1, 2}}, {Rat(1, 2), {3}}});
  CHECK(a == b);
  CHECK(a.total_weight() == Rat(7, 2));
  for (int c = 1; c <= 3; ++c) CHECK(a.approver_weight(c) == b.approver_weight(c));
}
