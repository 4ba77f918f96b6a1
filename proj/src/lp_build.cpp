#include <algorithm>
#include <cmath>
#include <sstream>

#include "abc/lp.hpp"

namespace abc {

void LpProblem::add_term(int64_t var, double coef) {
  if (coef == 0) return;
  col.push_back(int32_t(var));
  val.push_back(coef);
}

void LpProblem::end_row(Rel r, double b, std::string name) {
  rel.push_back(r);
  rhs.push_back(b);
  row_start.push_back(int64_t(col.size()));
  if (!name.empty()) row_names.push_back(std::move(name));
}

namespace {

std::string set_name(const char* prefix, uint32_t mask) {
  std::ostringstream s;
  s << prefix;
  if (mask == 0) {
    s << "_empty";
    return s.str();
  }
  for (int c = 0; mask; ++c, mask >>= 1)
    if (mask & 1) s << '_' << (c + 1);
  return s.str();
}

}  // namespace

LpProblem build_exact_lp(int k, bool include_empty_set, int max_k) {
  if (k < 1) throw usage_error("k must be positive");
  if (k > max_k)
    throw computation_error("exact LP budget exceeded: 2^" + std::to_string(k) +
                            " set variables (max k " + std::to_string(max_k) + ")");
  LpProblem p;
  p.tag = "exact-h";
  p.k = k;
  p.include_empty_set = include_empty_set;
  uint32_t full = (uint32_t(1) << k) - 1;
  // variable per subset T; without the empty set, index(T) = mask(T) - 1
  int first_mask = include_empty_set ? 0 : 1;
  auto var_of = [&](uint32_t mask) { return int64_t(mask) - first_mask; };
  p.num_vars = int64_t(full) + 1 - first_mask;
  p.objective.assign(p.num_vars, 0.0);
  for (uint32_t t = first_mask; t <= full; ++t) {
    p.var_names.push_back(set_name("x", t));
    if (t & (uint32_t(1) << (k - 1)))
      p.objective[var_of(t)] = double(k) / __builtin_popcount(t);
  }
  p.row_start.push_back(0);
  // (a) cluster proportions sum to one
  for (uint32_t t = first_mask; t <= full; ++t) p.add_term(var_of(t), 1.0);
  p.end_row(Rel::Eq, 1.0, "mass");
  // (b) at step i the marginal gain of candidate i beats every later candidate j
  for (int i = 1; i <= k; ++i)
    for (int j = i + 1; j <= k; ++j) {
      uint32_t bi = uint32_t(1) << (i - 1), bj = uint32_t(1) << (j - 1);
      uint32_t prefix_i = (uint32_t(1) << i) - 1;           // [i]
      uint32_t prefix_im1_j = ((uint32_t(1) << (i - 1)) - 1) | bj;  // [i-1] u {j}
      for (uint32_t t = std::max<uint32_t>(first_mask, 1); t <= full; ++t) {
        double coef = 0;
        if (t & bi) coef += 1.0 / __builtin_popcount(t & prefix_i);
        if (t & bj) coef -= 1.0 / __builtin_popcount(t & prefix_im1_j);
        p.add_term(var_of(t), coef);
      }
      p.end_row(Rel::Ge, 0.0, "dom_" + std::to_string(i) + "_" + std::to_string(j));
    }
  return p;
}

RelaxedIndex::RelaxedIndex(int kk) : k(kk) {
  int64_t next = k;  // a_1..a_k first
  b_base.assign(k + 1, std::vector<int64_t>(k + 1, -1));
  c_base.assign(k + 1, std::vector<int64_t>(k + 1, -1));
  for (int i = 1; i <= k; ++i)
    for (int j = 0; j <= k; ++j) {
      b_base[i][j] = next;
      next += pmax(i, j) + 1;  // p in [min(i,j)]_0
    }
  for (int i = 1; i <= k; ++i)
    for (int j = 1; j <= k; ++j) {
      c_base[i][j] = next;
      next += pmax(i, j);  // p in [min(i,j)]
    }
  d0 = next;
  total = next + k;
}

LpProblem build_relaxed_lp(int k, int max_k) {
  if (k < 1) throw usage_error("k must be positive");
  if (k > max_k)
    throw computation_error("relaxed LP budget exceeded (max k " + std::to_string(max_k) + ")");
  RelaxedIndex ix(k);
  LpProblem p;
  p.tag = "relaxed-h";
  p.k = k;
  p.num_vars = ix.total;
  p.objective.assign(p.num_vars, 0.0);
  p.objective[ix.d(k)] = double(k);
  bool names = ix.total <= 200000;
  if (names) {
    p.var_names.resize(ix.total);
    for (int i = 1; i <= k; ++i) p.var_names[ix.a(i)] = "a_" + std::to_string(i);
    for (int i = 1; i <= k; ++i)
      for (int j = 0; j <= k; ++j)
        for (int q = 0; q <= ix.pmax(i, j); ++q)
          p.var_names[ix.b(i, j, q)] = "b_" + std::to_string(i) + "_" + std::to_string(j) + "_" +
                                       std::to_string(q);
    for (int i = 1; i <= k; ++i)
      for (int j = 1; j <= k; ++j)
        for (int q = 1; q <= ix.pmax(i, j); ++q)
          p.var_names[ix.c(i, j, q)] = "c_" + std::to_string(i) + "_" + std::to_string(j) + "_" +
                                       std::to_string(q);
    for (int j = 1; j <= k; ++j) p.var_names[ix.d(j)] = "d_" + std::to_string(j);
  }
  p.row_start.push_back(0);
  auto rn = [&](const char* fam, int i, int j, int q) {
    if (!names) return std::string();
    std::ostringstream s;
    s << fam << '_' << i;
    if (j >= 0) s << '_' << j;
    if (q >= 0) s << '_' << q;
    return s.str();
  };
  // (a2)
  for (int i = 1; i <= k; ++i) p.add_term(ix.a(i), 1.0);
  p.end_row(Rel::Eq, 1.0, names ? "a2" : "");
  // (b1): before the first step nobody is represented; at the end everyone
  // with i approvals has i representatives
  for (int i = 1; i <= k; ++i) {
    p.add_term(ix.b(i, 0, 0), 1.0);
    p.add_term(ix.a(i), -1.0);
    p.end_row(Rel::Eq, 0.0, rn("b1s", i, -1, -1));
    p.add_term(ix.b(i, k, i), 1.0);
    p.add_term(ix.a(i), -1.0);
    p.end_row(Rel::Eq, 0.0, rn("b1e", i, -1, -1));
  }
  // (b2)
  for (int i = 1; i <= k; ++i)
    for (int q = 0; q < i; ++q) {
      p.add_term(ix.b(i, k, q), 1.0);
      p.end_row(Rel::Eq, 0.0, rn("b2", i, q, -1));
    }
  // (c2)
  for (int i = 1; i <= k; ++i)
    for (int j = 1; j <= k; ++j)
      for (int q = 1; q <= ix.pmax(i, j); ++q) {
        p.add_term(ix.c(i, j, q), 1.0);
        p.add_term(ix.b(i, j - 1, q - 1), -1.0);
        p.end_row(Rel::Le, 0.0, rn("c2", i, j, q));
      }
  // (d1)
  for (int i = 1; i <= k; ++i)
    for (int j = 1; j <= i; ++j) {
      p.add_term(ix.b(i, j, j), 1.0);
      p.add_term(ix.c(i, j, j), -1.0);
      p.end_row(Rel::Eq, 0.0, rn("d1", i, j, -1));
    }
  // (d2); the b(i,j-1,i) term is absent at j = i (out of range)
  for (int i = 1; i <= k; ++i)
    for (int j = i; j <= k; ++j) {
      p.add_term(ix.b(i, j, i), 1.0);
      if (i <= j - 1) p.add_term(ix.b(i, j - 1, i), -1.0);
      p.add_term(ix.c(i, j, i), -1.0);
      p.end_row(Rel::Eq, 0.0, rn("d2", i, j, -1));
    }
  // (d3)
  for (int i = 1; i <= k; ++i)
    for (int j = 1; j <= k; ++j) {
      p.add_term(ix.b(i, j, 0), 1.0);
      p.add_term(ix.b(i, j - 1, 0), -1.0);
      p.add_term(ix.c(i, j, 1), 1.0);
      p.end_row(Rel::Eq, 0.0, rn("d3", i, j, -1));
    }
  // (d4)
  for (int i = 1; i <= k; ++i)
    for (int j = 1; j <= k; ++j)
      for (int q = 1; q <= std::min(i - 1, j - 1); ++q) {
        p.add_term(ix.b(i, j, q), 1.0);
        p.add_term(ix.b(i, j - 1, q), -1.0);
        p.add_term(ix.c(i, j, q + 1), 1.0);
        p.add_term(ix.c(i, j, q), -1.0);
        p.end_row(Rel::Eq, 0.0, rn("d4", i, j, q));
      }
  // (e1)
  for (int j = 1; j <= k; ++j) {
    p.add_term(ix.d(j), 1.0);
    for (int i = 1; i <= k; ++i)
      for (int q = 1; q <= ix.pmax(i, j); ++q) p.add_term(ix.c(i, j, q), -1.0 / q);
    p.end_row(Rel::Eq, 0.0, rn("e1", j, -1, -1));
  }
  // (e2): pigeonhole over the k-j+1 candidates still unselected
  for (int j = 1; j <= k; ++j) {
    p.add_term(ix.d(j), 1.0);
    for (int i = 1; i <= k; ++i)
      for (int q = 0; q <= ix.pmax(i, j - 1); ++q)
        p.add_term(ix.b(i, j - 1, q), -double(i - q) / (double(q + 1) * double(k - j + 1)));
    p.end_row(Rel::Ge, 0.0, rn("e2", j, -1, -1));
  }
  return p;
}

LpProblem build_abstract_f_lp(int k, bool submodular, int max_k) {
  if (k < 1) throw usage_error("k must be positive");
  if (k > max_k)
    throw computation_error("abstract-f LP budget exceeded (max k " + std::to_string(max_k) + ")");
  LpProblem p;
  p.tag = "abstract-f";
  p.k = k;
  p.submodular = submodular;
  uint32_t full = (uint32_t(1) << k) - 1;
  p.num_vars = int64_t(full) + 1;  // f_S for every S, index = mask
  p.objective.assign(p.num_vars, 0.0);
  uint32_t prefix_k1 = full >> 1;  // [k-1]
  p.objective[full] = double(k);
  p.objective[prefix_k1] -= double(k);
  for (uint32_t s = 0; s <= full; ++s) p.var_names.push_back(set_name("f", s));
  p.row_start.push_back(0);
  // monotone
  for (uint32_t s = 0; s <= full; ++s)
    for (int c = 0; c < k; ++c) {
      uint32_t bit = uint32_t(1) << c;
      if (s & bit) continue;
      p.add_term(s, 1.0);
      p.add_term(s | bit, -1.0);
      p.end_row(Rel::Le, 0.0);
    }
  // marginal contributions of the members of S sum to at most 1
  for (uint32_t s = 1; s <= full; ++s) {
    p.add_term(s, double(__builtin_popcount(s)));
    for (int c = 0; c < k; ++c)
      if (s & (uint32_t(1) << c)) p.add_term(s ^ (uint32_t(1) << c), -1.0);
    p.end_row(Rel::Le, 1.0);
  }
  // greedy dominance: candidate i is picked at step i
  for (int i = 1; i <= k; ++i) {
    uint32_t prefix_i = (uint32_t(1) << i) - 1;
    uint32_t prefix_im1 = prefix_i >> 1;
    for (int j = i + 1; j <= k; ++j) {
      p.add_term(prefix_im1 | (uint32_t(1) << (j - 1)), 1.0);
      p.add_term(prefix_i, -1.0);
      p.end_row(Rel::Le, 0.0);
    }
  }
  if (submodular) {
    for (uint32_t s = 0; s <= full; ++s)
      for (int c = 0; c < k; ++c) {
        uint32_t bc = uint32_t(1) << c;
        if (s & bc) continue;
        for (int d = c + 1; d < k; ++d) {
          uint32_t bd = uint32_t(1) << d;
          if (s & bd) continue;
          p.add_term(s | bc | bd, 1.0);
          p.add_term(s, 1.0);
          p.add_term(s | bc, -1.0);
          p.add_term(s | bd, -1.0);
          p.end_row(Rel::Le, 0.0);
        }
      }
  }
  return p;
}

double max_violation(const LpProblem& p, const std::vector<double>& x) {
  double worst = 0;
  for (int64_t v = 0; v < p.num_vars; ++v) worst = std::max(worst, -x[v]);
  for (int64_t r = 0; r < p.rows(); ++r) {
    double lhs = 0;
    for (int64_t t = p.row_start[r]; t < p.row_start[r + 1]; ++t) lhs += p.val[t] * x[p.col[t]];
    double d = lhs - p.rhs[r];
    switch (p.rel[r]) {
      case Rel::Le:
        worst = std::max(worst, d);
        break;
      case Rel::Ge:
        worst = std::max(worst, -d);
        break;
      case Rel::Eq:
        worst = std::max(worst, std::fabs(d));
        break;
    }
  }
  return worst;
}

std::string lp_format(const LpProblem& p) {
  if (int64_t(p.var_names.size()) != p.num_vars)
    throw usage_error("lp_format requires variable names");
  std::ostringstream out;
  out.precision(17);
  auto term = [&](std::ostringstream& o, double coef, const std::string& name, bool first) {
    if (coef >= 0 && !first) o << " + ";
    if (coef < 0) o << (first ? "- " : " - ");
    double a = std::fabs(coef);
    if (a != 1.0) o << a << ' ';
    o << name;
  };
  out << "\\ " << (p.tag.empty() ? "lp" : p.tag) << " k=" << p.k << "\nMaximize\n obj: ";
  bool first = true;
  for (int64_t v = 0; v < p.num_vars; ++v)
    if (p.objective[v] != 0) {
      term(out, p.objective[v], p.var_names[v], first);
      first = false;
    }
  if (first) out << "0 " << p.var_names[0];
  out << "\nSubject To\n";
  for (int64_t r = 0; r < p.rows(); ++r) {
    out << ' ';
    if (int64_t(p.row_names.size()) == p.rows() && !p.row_names[r].empty())
      out << p.row_names[r];
    else
      out << 'r' << r;
    out << ": ";
    first = true;
    for (int64_t t = p.row_start[r]; t < p.row_start[r + 1]; ++t) {
      term(out, p.val[t], p.var_names[p.col[t]], first);
      first = false;
    }
    if (first) out << "0 " << p.var_names[0];
    out << (p.rel[r] == Rel::Le ? " <= " : p.rel[r] == Rel::Ge ? " >= " : " = ") << p.rhs[r]
        << '\n';
  }
  out << "End\n";
  return out.str();
}

std::string solution_csv(const LpProblem& p, const LpSolution& sol) {
  std::ostringstream out;
  out << "status,"
      << (sol.status == LpSolution::Status::Optimal
              ? "optimal"
              : sol.status == LpSolution::Status::Infeasible ? "infeasible" : "unbounded")
      << "\nobjective,";
  out.precision(12);
  out << sol.objective_value << "\nvariable,value\n";
  for (int64_t v = 0; v < int64_t(sol.assignment.size()); ++v) {
    if (sol.assignment[v] == 0) continue;  // nonzeros only
    if (int64_t(p.var_names.size()) == p.num_vars)
      out << p.var_names[v];
    else
      out << 'v' << v;
    out << ',';
    if (!sol.exact.empty())
      out << rat_str(sol.exact[v]);
    else
      out << sol.assignment[v];
    out << '\n';
  }
  return out.str();
}

}  // namespace abc
