#pragma once

#include <string>
#include <utility>
#include <vector>

#include "abc/profile.hpp"
#include "abc/rules.hpp"

namespace abc {

// Parameters and designated objects of a generated worst-case instance.
struct InstanceSpec {
  std::string family;
  int ell = 0;
  int k = 0;  // committee size the construction targets
  Rat n;
  int m = 0;
  SubPopulation cohesive_group;  // the designated ell-large group V
  Rat predicted;                 // the bound value the instance witnesses
  Committee w1, w2;              // designated committees, when the family has them
  TieBreak adversarial;          // tie-break oracle the construction relies on
  long x = 0;
  long big_l = 0;  // the L of the construction
  Rat y;
};

using GenResult = std::pair<ApprovalProfile, InstanceSpec>;

// Disjoint party blocks; party i's voters approve exactly its block.
ApprovalProfile gen_party_list(const std::vector<Rat>& party_weights, int candidates_per_party);

// Cyclic-shift profile on which the credit process buys b_1..b_x at times
// t, 2t, ..., xt and the designated group ends with at most k-ell+1 of its
// approved candidates elected.  Requires ell < k/2 and ell | k.
GenResult gen_phragmen_hard(int ell, int k);

// k blocks, k unanimously approved candidates W1 and k block candidates W2;
// both committees spread the load evenly.
GenResult gen_maxphragmen_tie(int k, int voters_per_block);

// Two candidate slates B, D with cyclic D-blocks sized so that D wins while
// the B-cohesive group V stays under the guarantee value.  Requires k^2 | n.
GenResult gen_thiele_upper_witness(const LambdaWeights& lambda, int ell, int k, long n);

// B approved by V, D split over k disjoint blocks; the Thiele winner keeps at
// most k*alpha B-candidates and its approval score stays below 2a-a^2 of the
// optimum.
GenResult gen_efficiency_witness(const LambdaWeights& lambda, int k, int voters_per_block);

// L relabeled copies of a near-maximal base profile plus a fresh group of
// weight y = L*n*ell/(Lk - ell) approving ell new candidates; committee size
// becomes L*k and the fresh group is exactly ell-large.
GenResult gen_seqpav_hard(const ApprovalProfile& base, int k, int big_l, int ell);

}  // namespace abc
