#include "abc/gen.hpp"

#include <algorithm>
#include <cassert>
#include <set>

#include "abc/bounds.hpp"
#include "abc/lp.hpp"

namespace abc {

namespace {

std::vector<int> range_block(int lo, int hi) {
  std::vector<int> v;
  for (int c = lo; c <= hi; ++c) v.push_back(c);
  return v;
}

// group indices of the normalized profile whose approval set contains c
SubPopulation groups_approving(const ApprovalProfile& p, int c) {
  SubPopulation v;
  for (size_t g = 0; g < p.groups.size(); ++g)
    if (p.approves(int(g), c)) v.shares.emplace_back(int(g), p.groups[g].weight);
  return v;
}

}  // namespace

ApprovalProfile gen_party_list(const std::vector<Rat>& party_weights, int candidates_per_party) {
  if (candidates_per_party < 1) throw usage_error("candidates_per_party must be positive");
  std::vector<VoterGroup> groups;
  int parties = int(party_weights.size());
  for (int i = 0; i < parties; ++i)
    groups.push_back({party_weights[i],
                      range_block(i * candidates_per_party + 1, (i + 1) * candidates_per_party)});
  return make_profile(parties * candidates_per_party, std::move(groups));
}

GenResult gen_phragmen_hard(int ell, int k) {
  if (ell < 1) throw usage_error("ell must be positive");
  if (2 * ell >= k) throw usage_error("gen_phragmen_hard requires ell < k/2");
  if (k % ell != 0) throw usage_error("gen_phragmen_hard requires k divisible by ell");
  long x = 2L * (k - ell) / ell - 1;
  if (x <= 0) throw usage_error("construction needs x > 0");
  mpz_class big_l = lcm(lcm(mpz_class(ell), mpz_class(x)), mpz_class(k));
  long L = big_l.get_si();
  Rat n = Rat(L) * k / ell;
  Rat seg = Rat(L) / x;

  // candidates: b_1..b_k = 1..k, c_1..c_k = k+1..2k, d_1..d_ell = 2k+1..2k+ell
  std::vector<int> all_b = range_block(1, k);
  std::vector<int> all_c = range_block(k + 1, 2 * k);
  std::vector<int> all_d = range_block(2 * k + 1, 2 * k + ell);

  std::vector<VoterGroup> groups;
  // V-segments: segment j approves every b_i with (i-1) mod x == j-1, plus all d's
  for (long j = 1; j <= x; ++j) {
    VoterGroup g;
    g.weight = seg;
    for (int i = 1; i <= k; ++i)
      if ((i - 1) % x == j - 1) g.approved.push_back(i);
    g.approved.insert(g.approved.end(), all_d.begin(), all_d.end());
    groups.push_back(std::move(g));
  }
  // middle voters approve every b
  groups.push_back({n - 2 * L, all_b});
  // c-block segments: segment j approves b_1..b_{j-1} and every c
  for (long j = 1; j <= x; ++j) {
    VoterGroup g;
    g.weight = seg;
    for (int i = 1; i < j; ++i) g.approved.push_back(i);
    g.approved.insert(g.approved.end(), all_c.begin(), all_c.end());
    groups.push_back(std::move(g));
  }
  auto profile = make_profile(2 * k + ell, std::move(groups));

  InstanceSpec spec;
  spec.family = "phragmen-hard";
  spec.ell = ell;
  spec.k = k;
  spec.n = n;
  spec.m = 2 * k + ell;
  spec.x = x;
  spec.big_l = L;
  spec.predicted = Rat(ell) / 2 * rat_of(2 * k - 2 * ell + 2, 2 * k - 3 * ell);
  spec.cohesive_group = groups_approving(profile, 2 * k + 1);  // approvers of d_1
  Committee target = all_b;
  target.insert(target.end(), all_c.begin(), all_c.end());
  spec.adversarial = TieBreak::adversarial(target);
  return {std::move(profile), std::move(spec)};
}

GenResult gen_maxphragmen_tie(int k, int voters_per_block) {
  if (k < 2) throw usage_error("k must be at least 2");
  if (voters_per_block < 1) throw usage_error("voters_per_block must be positive");
  std::vector<VoterGroup> groups;
  for (int i = 1; i <= k; ++i) {
    VoterGroup g;
    g.weight = voters_per_block;
    g.approved = range_block(1, k);
    g.approved.push_back(k + i);
    groups.push_back(std::move(g));
  }
  auto profile = make_profile(2 * k, std::move(groups));
  InstanceSpec spec;
  spec.family = "maxphragmen-tie";
  spec.k = k;
  spec.n = Rat(k) * voters_per_block;
  spec.m = 2 * k;
  spec.w1 = range_block(1, k);
  spec.w2 = range_block(k + 1, 2 * k);
  spec.predicted = Rat(k) / spec.n;  // the shared optimal max load
  spec.cohesive_group = whole_population(profile);
  spec.adversarial = TieBreak::adversarial(spec.w2);
  return {std::move(profile), std::move(spec)};
}

namespace {

// Atoms of a circle of rational circumference cut by k cyclically shifted
// arcs of rational width: returns (sub-interval, covering arc indices).
struct CircleAtom {
  Rat length;
  std::vector<int> covers;  // 1-based arc indices
};

std::vector<CircleAtom> cyclic_arcs(const Rat& circumference, const Rat& width, int arcs) {
  std::vector<Rat> cuts;
  for (int i = 0; i <= arcs; ++i) {
    Rat point = (width * i);
    point -= rat_floor(point / circumference) * circumference;
    cuts.push_back(point);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  cuts.push_back(circumference);
  std::vector<CircleAtom> atoms;
  for (size_t s = 0; s + 1 < cuts.size(); ++s) {
    CircleAtom atom;
    atom.length = cuts[s + 1] - cuts[s];
    if (atom.length == 0) continue;
    Rat mid = (cuts[s] + cuts[s + 1]) / 2;
    for (int i = 1; i <= arcs; ++i) {
      Rat start = width * (i - 1);
      start -= rat_floor(start / circumference) * circumference;
      Rat end = start + width;
      bool in = (mid >= start && mid < end) || (end > circumference && mid < end - circumference);
      if (in) atom.covers.push_back(i);
    }
    atoms.push_back(std::move(atom));
  }
  return atoms;
}

}  // namespace

GenResult gen_thiele_upper_witness(const LambdaWeights& lambda, int ell, int k, long n) {
  if (ell < 1 || ell >= k) throw usage_error("need 1 <= ell < k");
  if (n % (long(k) * k) != 0) throw usage_error("n must be divisible by k^2");
  double xd = thiele_upper(lambda, ell, k).value;
  Rat x = rationalize(xd, 100000);
  // y = argmax over [k] of i * lambda(i+1)
  int y = 1;
  double besty = lambda.value(2.0);
  for (int i = 2; i <= k; ++i) {
    double v = i * lambda.value(double(i + 1));
    if (v > besty) {
      besty = v;
      y = i;
    }
  }
  Rat v_size = Rat(n) * ell / k;
  Rat vp_size = Rat(n) - v_size;
  Rat v_width = v_size * x / k;
  Rat vp_width = vp_size * y / k;
  if (v_width <= 0 || v_width > v_size || vp_width < 1 || vp_width > vp_size)
    throw usage_error("construction widths out of range for these parameters");

  std::vector<VoterGroup> groups;
  // V side: everyone approves B = {1..k}; cyclic d-arcs of width |V|x/k
  for (auto& atom : cyclic_arcs(v_size, v_width, k)) {
    VoterGroup g;
    g.weight = atom.length;
    g.approved = range_block(1, k);
    for (int i : atom.covers) g.approved.push_back(k + i);
    groups.push_back(std::move(g));
  }
  // V' side: only the d-arcs, of width |V'|y/k; one unit of weight at the
  // start of d_k's arc loses d_k
  {
    Rat dk_start = vp_width * (k - 1);
    dk_start -= rat_floor(dk_start / vp_size) * vp_size;
    if (dk_start + 1 > vp_size) dk_start = vp_size - 1;  // keep the unit inside the circle
    // extra cuts at [dk_start, dk_start + 1) carve out the removed voter
    std::vector<CircleAtom> atoms = cyclic_arcs(vp_size, vp_width, k);
    std::vector<CircleAtom> final_atoms;
    Rat pos = 0;
    for (auto& atom : atoms) {
      Rat a = pos, b = pos + atom.length;
      pos = b;
      // split at dk_start and dk_start + 1 where they fall inside
      std::vector<Rat> cuts{a, b};
      if (dk_start > a && dk_start < b) cuts.push_back(dk_start);
      if (dk_start + 1 > a && dk_start + 1 < b) cuts.push_back(dk_start + 1);
      std::sort(cuts.begin(), cuts.end());
      for (size_t s = 0; s + 1 < cuts.size(); ++s) {
        CircleAtom piece;
        piece.length = cuts[s + 1] - cuts[s];
        piece.covers = atom.covers;
        if (cuts[s] >= dk_start && cuts[s + 1] <= dk_start + 1)
          std::erase(piece.covers, k);  // the removed unit of weight
        final_atoms.push_back(std::move(piece));
      }
    }
    for (auto& atom : final_atoms) {
      if (atom.covers.empty()) continue;  // voters approving nothing are dropped
      VoterGroup g;
      g.weight = atom.length;
      for (int i : atom.covers) g.approved.push_back(k + i);
      groups.push_back(std::move(g));
    }
  }
  auto profile = make_profile(2 * k, std::move(groups));
  InstanceSpec spec;
  spec.family = "thiele-upper";
  spec.ell = ell;
  spec.k = k;
  spec.n = profile.total_weight();
  spec.m = 2 * k;
  spec.predicted = x;
  spec.y = y;
  spec.w1 = range_block(1, k);       // B
  spec.w2 = range_block(k + 1, 2 * k);  // D
  spec.cohesive_group = groups_approving(profile, 1);
  spec.adversarial = TieBreak::adversarial(spec.w2);
  return {std::move(profile), std::move(spec)};
}

GenResult gen_efficiency_witness(const LambdaWeights& lambda, int k, int voters_per_block) {
  if (k < 2) throw usage_error("k must be at least 2");
  if (voters_per_block < 1) throw usage_error("voters_per_block must be positive");
  auto eff = thiele_efficiency_upper(lambda, k);
  Rat alpha = rationalize(eff.alpha, 100000);
  Rat v_size = Rat(voters_per_block) / alpha;  // |V| k alpha = n - |V| = k * block
  std::vector<VoterGroup> groups;
  groups.push_back({v_size, range_block(1, k)});
  for (int i = 1; i <= k; ++i) groups.push_back({Rat(voters_per_block), {k + i}});
  auto profile = make_profile(2 * k, std::move(groups));
  InstanceSpec spec;
  spec.family = "efficiency-witness";
  spec.k = k;
  spec.n = profile.total_weight();
  spec.m = 2 * k;
  spec.y = alpha;
  spec.predicted = 2 * alpha - alpha * alpha;
  spec.w1 = range_block(1, k);
  spec.w2 = range_block(k + 1, 2 * k);
  spec.cohesive_group = groups_approving(profile, 1);
  spec.adversarial = TieBreak::adversarial(spec.w2);
  return {std::move(profile), std::move(spec)};
}

GenResult gen_seqpav_hard(const ApprovalProfile& base, int k, int big_l, int ell) {
  if (big_l < 1) throw usage_error("L must be positive");
  if (ell < 1) throw usage_error("ell must be positive");
  if (int64_t(big_l) * k <= ell) throw usage_error("need L*k > ell");
  int mb = base.num_candidates;
  Rat nb = base.total_weight();
  Rat y = Rat(big_l) * nb * ell / (Rat(big_l) * k - ell);
  std::vector<VoterGroup> groups;
  for (int t = 0; t < big_l; ++t)
    for (const auto& g : base.groups) {
      VoterGroup copy;
      copy.weight = g.weight;
      for (int c : g.approved) copy.approved.push_back(t * mb + c);
      groups.push_back(std::move(copy));
    }
  VoterGroup fresh;
  fresh.weight = y;
  fresh.approved = range_block(big_l * mb + 1, big_l * mb + ell);
  groups.push_back(std::move(fresh));
  auto profile = make_profile(big_l * mb + ell, std::move(groups));

  InstanceSpec spec;
  spec.family = "seqpav-hard";
  spec.ell = ell;
  spec.k = big_l * k;  // committee size for the appended instance
  spec.n = profile.total_weight();
  spec.m = big_l * mb + ell;
  spec.big_l = big_l;
  spec.y = y;
  spec.cohesive_group = groups_approving(profile, big_l * mb + 1);
  spec.adversarial = TieBreak::adversarial(range_block(1, big_l * mb));
  return {std::move(profile), std::move(spec)};
}

}  // namespace abc
