#include "abc/profile.hpp"

#include <algorithm>
#include <sstream>

namespace abc {

Rat ApprovalProfile::total_weight() const {
  Rat n = 0;
  for (const auto& g : groups) n += g.weight;
  return n;
}

Rat ApprovalProfile::approver_weight(int candidate) const {
  Rat w = 0;
  for (const auto& g : groups)
    if (std::binary_search(g.approved.begin(), g.approved.end(), candidate)) w += g.weight;
  return w;
}

bool ApprovalProfile::approves(int group, int candidate) const {
  const auto& a = groups[group].approved;
  return std::binary_search(a.begin(), a.end(), candidate);
}

std::vector<uint64_t> ApprovalProfile::group_mask(int group) const {
  std::vector<uint64_t> mask((num_candidates + 63) / 64, 0);
  for (int c : groups[group].approved) mask[(c - 1) / 64] |= uint64_t(1) << ((c - 1) % 64);
  return mask;
}

Rat SubPopulation::weight() const {
  Rat w = 0;
  for (const auto& [g, s] : shares) w += s;
  return w;
}

SubPopulation whole_population(const ApprovalProfile& p) {
  SubPopulation v;
  for (size_t g = 0; g < p.groups.size(); ++g) v.shares.emplace_back(int(g), p.groups[g].weight);
  return v;
}

ApprovalProfile make_profile(int num_candidates, std::vector<VoterGroup> groups) {
  if (num_candidates < 0) throw usage_error("negative candidate count");
  for (auto& g : groups) {
    if (g.weight <= 0) throw usage_error("non-positive group weight");
    std::sort(g.approved.begin(), g.approved.end());
    g.approved.erase(std::unique(g.approved.begin(), g.approved.end()), g.approved.end());
    for (int c : g.approved)
      if (c < 1 || c > num_candidates) throw usage_error("candidate index out of range");
  }
  std::sort(groups.begin(), groups.end(),
            [](const VoterGroup& a, const VoterGroup& b) { return a.approved < b.approved; });
  // merge duplicate approval sets
  std::vector<VoterGroup> merged;
  for (auto& g : groups) {
    if (!merged.empty() && merged.back().approved == g.approved)
      merged.back().weight += g.weight;
    else
      merged.push_back(std::move(g));
  }
  ApprovalProfile p;
  p.num_candidates = num_candidates;
  p.groups = std::move(merged);
  return p;
}

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

[[noreturn]] void fail(int line, const std::string& msg) {
  throw usage_error("line " + std::to_string(line) + ": " + msg);
}

}  // namespace

ApprovalProfile parse_profile(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  int m = -1;
  std::vector<VoterGroup> groups;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    if (m < 0) {
      if (line.rfind("m=", 0) != 0) fail(lineno, "expected \"m=<int>\" header");
      try {
        size_t used = 0;
        m = std::stoi(line.substr(2), &used);
        if (used != line.size() - 2) fail(lineno, "malformed candidate count");
      } catch (const std::exception&) {
        fail(lineno, "malformed candidate count");
      }
      if (m < 0) fail(lineno, "negative candidate count");
      continue;
    }
    size_t colon = line.find(':');
    if (colon == std::string::npos) fail(lineno, "malformed line (missing ':')");
    auto w = rat_parse(trim(line.substr(0, colon)));
    if (!w) fail(lineno, "malformed weight");
    if (*w <= 0) fail(lineno, "non-positive weight");
    VoterGroup g;
    g.weight = *w;
    std::istringstream rest(line.substr(colon + 1));
    std::string tok;
    while (rest >> tok) {
      try {
        size_t used = 0;
        int c = std::stoi(tok, &used);
        if (used != tok.size()) fail(lineno, "malformed candidate index");
        if (c < 1 || c > m) fail(lineno, "candidate index out of range");
        g.approved.push_back(c);
      } catch (const usage_error&) {
        throw;
      } catch (const std::exception&) {
        fail(lineno, "malformed candidate index");
      }
    }
    groups.push_back(std::move(g));
  }
  if (m < 0) throw usage_error("missing \"m=<int>\" header");
  return make_profile(m, std::move(groups));
}

std::string write_profile(const ApprovalProfile& p) {
  std::ostringstream out;
  out << "m=" << p.num_candidates;
  for (const auto& g : p.groups) {
    out << '\n' << rat_str(g.weight) << ':';
    for (int c : g.approved) out << ' ' << c;
  }
  return out.str();
}

ApprovalProfile example1_profile() {
  auto block = [](int lo, int hi) {
    std::vector<int> v;
    for (int c = lo; c <= hi; ++c) v.push_back(c);
    return v;
  };
  return make_profile(30, {{Rat(60), block(1, 10)}, {Rat(30), block(11, 20)}, {Rat(10), block(21, 30)}});
}

}  // namespace abc
