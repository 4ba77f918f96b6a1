#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "abc/rational.hpp"

namespace abc {

// A weighted group of identical voters: every voter in the group approves
// exactly `approved` (sorted, unique, 1-based candidate indices).  A group of
// weight w behaves like w unit voters under every rule.
struct VoterGroup {
  Rat weight;
  std::vector<int> approved;

  bool operator==(const VoterGroup&) const = default;
};

// Weighted approval profile over candidates {1..m}.  Always kept normalized:
// groups sorted by approval set, duplicate sets merged, weights positive.
struct ApprovalProfile {
  int num_candidates = 0;  // m
  std::vector<VoterGroup> groups;

  Rat total_weight() const;                 // n
  Rat approver_weight(int candidate) const;  // |N(c)| as weight
  bool approves(int group, int candidate) const;
  // bitmask words of a group's approval set (for fast committee intersection)
  std::vector<uint64_t> group_mask(int group) const;

  bool operator==(const ApprovalProfile&) const = default;
};

// Committee = sorted set of candidate indices.
using Committee = std::vector<int>;

// A measurable sub-population: (group index, sub-weight) shares, each share
// bounded by the group's weight.
struct SubPopulation {
  std::vector<std::pair<int, Rat>> shares;

  Rat weight() const;
};

SubPopulation whole_population(const ApprovalProfile& p);

// Builds a normalized profile; throws usage_error on bad indices or weights.
ApprovalProfile make_profile(int num_candidates, std::vector<VoterGroup> groups);

// Text format: optional '#' comment lines; first content line "m=<int>"; then
// one group per line, "<weight>: <idx> <idx> ..." with weight an integer or
// "p/q".  An empty index list after the colon is an empty approval set.
ApprovalProfile parse_profile(const std::string& text);
std::string write_profile(const ApprovalProfile& p);

// The 100-voter, 30-candidate three-party profile used as the running example.
ApprovalProfile example1_profile();

}  // namespace abc
