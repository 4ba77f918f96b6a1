// Command-line front end: run committee rules on profile files, audit
// committees, compute proportionality/efficiency bounds, build and solve the
// LPs, generate worst-case instances, and emit the table/curve data.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "abc/audit.hpp"
#include "abc/bounds.hpp"
#include "abc/gen.hpp"
#include "abc/lp.hpp"
#include "abc/profile.hpp"
#include "abc/rules.hpp"

using namespace abc;

namespace {

int64_t enum_budget() {
  if (const char* env = std::getenv("ABC_BUDGET")) {
    char* end = nullptr;
    long long v = std::strtoll(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
    throw usage_error("ABC_BUDGET must be a positive integer");
  }
  return kDefaultEnumBudget;
}

std::string fmt6(double x) {
  std::ostringstream s;
  s.precision(6);
  s << x;
  return s.str();
}

std::string num(const Rat& r, bool exact) { return exact ? rat_str(r) : fmt6(rat_double(r)); }

ApprovalProfile load_profile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw usage_error("cannot open profile file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_profile(buf.str());
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw usage_error("cannot write output file: " + out_path);
  out << text;
}

LambdaWeights parse_lambda(const std::string& s) {
  if (s.empty() || s == "pav") return LambdaWeights::pav();
  if (s.rfind("power:", 0) == 0) return LambdaWeights::power(std::stod(s.substr(6)));
  // comma-separated rational list
  std::vector<Rat> vals;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    auto r = rat_parse(tok);
    if (!r) throw usage_error("bad lambda value: " + tok);
    vals.push_back(*r);
  }
  if (vals.empty()) throw usage_error("empty lambda list");
  return LambdaWeights::custom(std::move(vals));
}

Committee parse_committee(const std::string& s) {
  Committee w;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    w.push_back(std::stoi(tok));
  }
  std::sort(w.begin(), w.end());
  return w;
}

TieBreak parse_tiebreak(const std::string& policy, const std::string& oracle) {
  if (policy == "lexmin") return TieBreak::lex_min();
  if (policy == "lexmax") return TieBreak::lex_max();
  if (policy == "adversarial") {
    if (oracle.empty()) throw usage_error("adversarial tie-breaking needs --oracle");
    return TieBreak::adversarial(parse_committee(oracle));
  }
  throw usage_error("unknown tie policy: " + policy);
}

std::string committee_str(const Committee& w) {
  std::ostringstream s;
  for (size_t i = 0; i < w.size(); ++i) s << (i ? " " : "") << w[i];
  return s.str();
}

struct ElectArgs {
  std::string rule, file, lambda = "pav", tie = "lexmin", oracle, format = "text", output;
  int k = 0;
  bool all_optima = false, trace = false, exact = false;
};

int cmd_elect(const ElectArgs& a) {
  auto p = load_profile(a.file);
  TieBreak tb = parse_tiebreak(a.tie, a.oracle);
  int64_t budget = enum_budget();
  std::ostringstream out;
  bool csv = a.format == "csv";
  auto emit_committee = [&](const Committee& w) {
    if (csv) {
      out << "candidate\n";
      for (int c : w) out << c << "\n";
    } else {
      out << "committee: " << committee_str(w) << "\n";
    }
  };
  if (a.rule == "pav" || a.rule == "thiele") {
    auto lambda = a.rule == "pav" ? LambdaWeights::pav() : parse_lambda(a.lambda);
    auto r = thiele_exact(p, lambda, a.k, tb, a.all_optima, budget);
    emit_committee(r.winner);
    if (!csv) out << "score: " << num(r.score, a.exact) << "\n";
    if (a.all_optima) {
      for (const auto& w : r.optima) out << "optimum: " << committee_str(w) << "\n";
    }
  } else if (a.rule == "seq-pav" || a.rule == "seq-phragmen" || a.rule == "seq-phragmen-load") {
    ElectionResult r = a.rule == "seq-pav"             ? seq_pav(p, a.k, tb)
                       : a.rule == "seq-phragmen"      ? seq_phragmen_credit(p, a.k, tb)
                                                       : seq_phragmen_load(p, a.k, tb);
    Committee sorted = r.committee;
    std::sort(sorted.begin(), sorted.end());
    emit_committee(sorted);
    if (!csv) out << "order: " << committee_str(r.committee) << "\n";
    if (a.trace) out << trace_log(r.trace);
  } else if (a.rule == "max-phragmen") {
    auto r = max_phragmen(p, a.k, budget);
    emit_committee(r.optima.front());
    if (!csv) {
      out << "max-load: " << num(r.max_load, a.exact) << "\n";
      for (const auto& w : r.optima) out << "optimum: " << committee_str(w) << "\n";
    }
  } else {
    throw usage_error("unknown rule: " + a.rule);
  }
  emit(out.str(), a.output);
  return 0;
}

struct AuditArgs {
  std::string file, committee, queries, ejr_alpha, format = "text", output;
  int k = 0, seeds = 3;
  bool exact = false;
};

int cmd_audit(const AuditArgs& a) {
  auto p = load_profile(a.file);
  Committee w = parse_committee(a.committee);
  GroupSearchOptions opts;
  opts.max_seed_sets = a.seeds;
  std::vector<PropQuery> queries;
  if (!a.queries.empty()) {
    std::stringstream ss(a.queries);
    std::string tok;
    while (std::getline(ss, tok, ';')) {
      auto colon = tok.find(':');
      if (colon == std::string::npos) throw usage_error("query must be ell:threshold");
      PropQuery q;
      q.ell = std::stoi(tok.substr(0, colon));
      auto r = rat_parse(tok.substr(colon + 1));
      if (!r) throw usage_error("bad threshold in query: " + tok);
      q.threshold = *r;
      queries.push_back(q);
    }
  } else {
    for (int ell = 1; ell <= a.k; ++ell) queries.push_back({ell, Rat(ell - 1)});
  }
  auto rep = empirical_prop_degree(p, w, a.k, queries, opts);
  std::ostringstream out;
  if (a.format == "csv") {
    out << audit_csv(rep, a.exact);
  } else {
    out << "utilitarian_ratio: " << num(rep.utilitarian_ratio, a.exact) << "\n";
    out << "search: " << rep.search_note << "\n";
    for (const auto& row : rep.rows) {
      out << "ell=" << row.ell << " threshold=" << num(row.threshold, a.exact) << " anchor={";
      for (size_t i = 0; i < row.anchor.size(); ++i) out << (i ? "," : "") << row.anchor[i];
      out << "} weight=" << num(row.group_weight, a.exact)
          << " avg_sat=" << num(row.avg_satisfaction, a.exact)
          << (row.violation ? " VIOLATION" : "") << "\n";
    }
    if (rep.worst_violation)
      out << "worst violation: ell=" << rep.worst_violation->ell
          << " avg_sat=" << num(rep.worst_violation->avg_satisfaction, a.exact) << "\n";
  }
  if (!a.ejr_alpha.empty()) {
    auto alpha = rat_parse(a.ejr_alpha);
    if (!alpha) throw usage_error("bad EJR alpha");
    auto ejr = check_ejr(p, w, a.k, *alpha, opts);
    out << "ejr(" << a.ejr_alpha << "): " << (ejr.satisfied ? "satisfied" : "violated");
    if (!ejr.satisfied) {
      out << " witness ell=" << ejr.witness->ell << " anchor={";
      for (size_t i = 0; i < ejr.witness->anchor.size(); ++i)
        out << (i ? "," : "") << ejr.witness->anchor[i];
      out << "}";
    }
    out << "\n";
  }
  emit(out.str(), a.output);
  return 0;
}

struct BoundsArgs {
  std::string rule, lambda = "pav", output;
  int ell = 0, k = 0;
  bool lower = false, upper = false, csv = false;
};

int cmd_bounds(const BoundsArgs& a) {
  std::vector<GuaranteeReport> reports;
  std::ostringstream out;
  if (a.rule == "phragmen") {
    if (a.lower) reports.push_back(phragmen_lower(a.ell));
    if (a.upper) reports.push_back(phragmen_upper(a.ell, a.k));
  } else if (a.rule == "max-phragmen") {
    reports.push_back(maxphragmen_upper(a.ell));
  } else if (a.rule == "thiele") {
    auto lambda = parse_lambda(a.lambda);
    if (a.lower) reports.push_back(thiele_guarantee(lambda, a.ell, a.k));
    if (a.upper) reports.push_back(thiele_upper(lambda, a.ell, a.k));
  } else if (a.rule == "efficiency") {
    auto lambda = parse_lambda(a.lambda);
    if (a.lower) {
      auto r = thiele_efficiency_lower(lambda, a.k);
      out << "alpha: " << fmt6(r.alpha) << "\nguarantee: " << fmt6(r.guarantee) << "\n";
    }
    if (a.upper) {
      auto r = thiele_efficiency_upper(lambda, a.k);
      out << "alpha: " << fmt6(r.alpha) << "\nguarantee: " << fmt6(r.guarantee) << "\n";
    }
    emit(out.str(), a.output);
    return 0;
  } else {
    throw usage_error("unknown rule: " + a.rule);
  }
  if (a.csv) {
    out << bounds_csv(reports);
  } else {
    for (const auto& r : reports) {
      out << fmt6(r.value) << "\n";
      if (!r.notes.empty()) out << "# " << r.notes << "\n";
    }
  }
  emit(out.str(), a.output);
  return 0;
}

struct LpArgs {
  std::string kind, output, to_profile;
  int k = 0;
  bool dump = false, solution = false, include_empty = false;
};

int cmd_lp(const LpArgs& a) {
  LpProblem prob;
  if (a.kind == "exact")
    prob = build_exact_lp(a.k, a.include_empty);
  else if (a.kind == "relaxed")
    prob = build_relaxed_lp(a.k);
  else if (a.kind == "abstract-f")
    prob = build_abstract_f_lp(a.k, false);
  else if (a.kind == "abstract-f-submodular")
    prob = build_abstract_f_lp(a.k, true);
  else
    throw usage_error("unknown LP kind: " + a.kind);
  std::ostringstream out;
  if (a.dump) {
    emit(lp_format(prob), a.output);
    return 0;
  }
  auto sol = solve_lp(prob);
  if (sol.status != LpSolution::Status::Optimal) {
    out << "status,"
        << (sol.status == LpSolution::Status::Infeasible ? "infeasible" : "unbounded") << "\n";
    emit(out.str(), a.output);
    return 2;
  }
  if (a.solution) {
    out << solution_csv(prob, sol);
  } else {
    out << fmt6(1.0 / sol.objective_value) << "\n";
  }
  if (!a.to_profile.empty()) {
    auto p = lp_to_profile(prob, sol);
    std::ofstream f(a.to_profile);
    if (!f) throw usage_error("cannot write profile: " + a.to_profile);
    f << write_profile(p) << "\n";
  }
  emit(out.str(), a.output);
  return 0;
}

struct TableArgs {
  std::string kind, output;
  int kmin = 1, kmax = 1;
};

int cmd_table(const TableArgs& a) {
  std::ostringstream out;
  out << "k,coefficient\n";
  for (int k = a.kmin; k <= a.kmax; ++k) {
    double coef;
    if (a.kind == "seqpav-exact")
      coef = h_seqpav(k, "exact").coefficient;
    else if (a.kind == "seqpav-relaxed")
      coef = h_seqpav(k, "relaxed").coefficient;
    else if (a.kind == "abstract-f")
      coef = abstract_f_value(k, false).coefficient;
    else if (a.kind == "abstract-f-submodular")
      coef = abstract_f_value(k, true).coefficient;
    else
      throw usage_error("unknown table kind: " + a.kind);
    out << k << ',' << fmt6(coef) << "\n";
  }
  emit(out.str(), a.output);
  return 0;
}

struct CurveArgs {
  std::string kind, ks, lambda = "pav", output;
  int ell = 1, k = 50, kmax = 200;
};

int cmd_curve(const CurveArgs& a) {
  std::ostringstream out;
  if (a.kind == "seqpav-relaxed-vs-k") {
    std::vector<int> ks;
    if (!a.ks.empty()) {
      std::stringstream ss(a.ks);
      std::string tok;
      while (std::getline(ss, tok, ',')) ks.push_back(std::stoi(tok));
    } else {
      ks = {1, 2, 3, 4, 5, 6, 8, 10, 12, 15, 20, 30, 50, 75, 100, 150, 200};
    }
    out << "k,coefficient\n";
    for (int k : ks) out << k << ',' << fmt6(h_seqpav(k, "relaxed").coefficient) << "\n";
  } else if (a.kind == "phragmen-upper-vs-k") {
    out << "k,bound\n";
    for (int k = a.ell * 2 + 1; k <= a.kmax; ++k) {
      if (k % a.ell != 0) continue;
      out << k << ',' << fmt6(phragmen_upper(a.ell, k).value) << "\n";
    }
  } else if (a.kind == "thiele-guarantee-vs-ell") {
    std::vector<LambdaWeights> fams = {LambdaWeights::pav(), LambdaWeights::power(0.5),
                                       LambdaWeights::power(2.0 / 3.0), LambdaWeights::power(2)};
    out << "ell,pav,sqrt,twothirds,square\n";
    for (int ell = 1; ell <= a.k; ++ell) {
      out << ell;
      for (const auto& lam : fams) out << ',' << fmt6(thiele_guarantee(lam, ell, a.k).value);
      out << "\n";
    }
  } else {
    throw usage_error("unknown curve kind: " + a.kind);
  }
  emit(out.str(), a.output);
  return 0;
}

int cmd_gen(CLI::App* gen, const std::string& output, const std::string& lambda_s, int ell, int k,
            long n, int block, int big_l, const std::string& weights, int per_party,
            const std::string& base_file) {
  ApprovalProfile profile;
  std::string note;
  if (gen->got_subcommand("party-list")) {
    std::vector<Rat> w;
    std::stringstream ss(weights);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      auto r = rat_parse(tok);
      if (!r) throw usage_error("bad weight: " + tok);
      w.push_back(*r);
    }
    profile = gen_party_list(w, per_party);
  } else if (gen->got_subcommand("phragmen-hard")) {
    auto [p, spec] = gen_phragmen_hard(ell, k);
    profile = p;
    note = "# predicted " + rat_str(spec.predicted) + ", x=" + std::to_string(spec.x) +
           ", L=" + std::to_string(spec.big_l);
  } else if (gen->got_subcommand("maxphragmen-tie")) {
    auto [p, spec] = gen_maxphragmen_tie(k, block);
    profile = p;
    note = "# W1=1.." + std::to_string(k) + " W2=" + std::to_string(k + 1) + ".." +
           std::to_string(2 * k);
  } else if (gen->got_subcommand("thiele-upper")) {
    auto [p, spec] = gen_thiele_upper_witness(parse_lambda(lambda_s), ell, k, n);
    profile = p;
    note = "# predicted " + rat_str(spec.predicted);
  } else if (gen->got_subcommand("efficiency-witness")) {
    auto [p, spec] = gen_efficiency_witness(parse_lambda(lambda_s), k, block);
    profile = p;
    note = "# predicted " + rat_str(spec.predicted) + " with alpha " + rat_str(spec.y);
  } else if (gen->got_subcommand("seqpav-hard")) {
    auto base = load_profile(base_file);
    auto [p, spec] = gen_seqpav_hard(base, k, big_l, ell);
    profile = p;
    note = "# committee size " + std::to_string(spec.k) + ", y=" + rat_str(spec.y);
  } else {
    throw usage_error("gen requires a family subcommand");
  }
  std::string text = (note.empty() ? "" : note + "\n") + write_profile(profile) + "\n";
  emit(text, output);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"approval-based committee elections: rules, audits, bounds, LPs, generators"};
  app.require_subcommand(1);

  ElectArgs ea;
  auto* elect = app.add_subcommand("elect", "run a committee rule on a profile file");
  elect->add_option("--rule", ea.rule, "pav|thiele|seq-pav|seq-phragmen|seq-phragmen-load|max-phragmen")->required();
  elect->add_option("--file", ea.file)->required();
  elect->add_option("-k", ea.k)->required();
  elect->add_option("--lambda", ea.lambda, "pav, power:P, or comma-separated rationals");
  elect->add_option("--tie", ea.tie, "lexmin|lexmax|adversarial");
  elect->add_option("--oracle", ea.oracle, "adversarial target committee, comma-separated");
  elect->add_flag("--all-optima", ea.all_optima);
  elect->add_flag("--trace", ea.trace);
  elect->add_flag("--exact", ea.exact);
  elect->add_option("--format", ea.format, "text|csv");
  elect->add_option("-o,--output", ea.output);

  AuditArgs aa;
  auto* audit = app.add_subcommand("audit", "proportionality and efficiency audit of a committee");
  audit->add_option("--file", aa.file)->required();
  audit->add_option("-k", aa.k)->required();
  audit->add_option("--committee", aa.committee)->required();
  audit->add_option("--queries", aa.queries, "semicolon-separated ell:threshold pairs");
  audit->add_option("--ejr", aa.ejr_alpha, "check alpha-EJR");
  audit->add_option("--seeds", aa.seeds, "anchor search: max approval sets per intersection");
  audit->add_flag("--exact", aa.exact);
  audit->add_option("--format", aa.format, "text|csv");
  audit->add_option("-o,--output", aa.output);

  BoundsArgs ba;
  auto* bounds = app.add_subcommand("bounds", "closed-form and root-finding bounds");
  bounds->add_option("--rule", ba.rule, "phragmen|max-phragmen|thiele|efficiency")->required();
  bounds->add_flag("--lower", ba.lower);
  bounds->add_flag("--upper", ba.upper);
  bounds->add_option("-l", ba.ell);
  bounds->add_option("-k", ba.k);
  bounds->add_option("--lambda", ba.lambda);
  bounds->add_flag("--csv", ba.csv);
  bounds->add_option("-o,--output", ba.output);

  LpArgs la;
  auto* lp = app.add_subcommand("lp", "build and solve the bounding linear programs");
  lp->add_option("--kind", la.kind, "exact|relaxed|abstract-f|abstract-f-submodular")->required();
  lp->add_option("-k", la.k)->required();
  lp->add_flag("--dump", la.dump, "emit the LP in text format instead of solving");
  lp->add_flag("--solution", la.solution, "emit the full solution as CSV");
  lp->add_flag("--include-empty", la.include_empty, "keep the empty-set variable (exact LP)");
  lp->add_option("--to-profile", la.to_profile, "convert the exact-LP optimum into a profile file");
  lp->add_option("-o,--output", la.output);

  std::string g_output, g_lambda = "pav", g_weights, g_base;
  int g_ell = 1, g_k = 4, g_block = 1, g_L = 1, g_per = 1;
  long g_n = 16;
  auto* gen = app.add_subcommand("gen", "generate worst-case instances");
  gen->require_subcommand(1);
  gen->add_option("-o,--output", g_output);
  auto* pl = gen->add_subcommand("party-list");
  pl->add_option("--weights", g_weights)->required();
  pl->add_option("--per-party", g_per)->required();
  auto* ph = gen->add_subcommand("phragmen-hard");
  ph->add_option("-l", g_ell)->required();
  ph->add_option("-k", g_k)->required();
  auto* mp = gen->add_subcommand("maxphragmen-tie");
  mp->add_option("-k", g_k)->required();
  mp->add_option("--block", g_block)->required();
  auto* tu = gen->add_subcommand("thiele-upper");
  tu->add_option("-l", g_ell)->required();
  tu->add_option("-k", g_k)->required();
  tu->add_option("-n", g_n)->required();
  tu->add_option("--lambda", g_lambda);
  auto* ew = gen->add_subcommand("efficiency-witness");
  ew->add_option("-k", g_k)->required();
  ew->add_option("--block", g_block)->required();
  ew->add_option("--lambda", g_lambda);
  auto* sh = gen->add_subcommand("seqpav-hard");
  sh->add_option("--base", g_base)->required();
  sh->add_option("-k", g_k)->required();
  sh->add_option("-L", g_L)->required();
  sh->add_option("-l", g_ell)->required();

  TableArgs ta;
  auto* table = app.add_subcommand("table", "reproduce the coefficient tables");
  table->add_option("--kind", ta.kind,
                    "seqpav-exact|seqpav-relaxed|abstract-f|abstract-f-submodular")->required();
  table->add_option("--kmin", ta.kmin);
  table->add_option("--kmax", ta.kmax)->required();
  table->add_option("-o,--output", ta.output);

  CurveArgs ca;
  auto* curve = app.add_subcommand("curve", "emit figure data as CSV");
  curve->add_option("--kind", ca.kind,
                    "seqpav-relaxed-vs-k|phragmen-upper-vs-k|thiele-guarantee-vs-ell")->required();
  curve->add_option("--ks", ca.ks, "comma-separated committee sizes");
  curve->add_option("-l", ca.ell);
  curve->add_option("-k", ca.k);
  curve->add_option("--kmax", ca.kmax);
  curve->add_option("-o,--output", ca.output);

  try {
    app.parse(argc, argv);
    if (app.got_subcommand(elect)) return cmd_elect(ea);
    if (app.got_subcommand(audit)) return cmd_audit(aa);
    if (app.got_subcommand(bounds)) return cmd_bounds(ba);
    if (app.got_subcommand(lp)) return cmd_lp(la);
    if (app.got_subcommand(gen))
      return cmd_gen(gen, g_output, g_lambda, g_ell, g_k, g_n, g_block, g_L, g_weights, g_per,
                     g_base);
    if (app.got_subcommand(table)) return cmd_table(ta);
    if (app.got_subcommand(curve)) return cmd_curve(ca);
    throw usage_error("no command given");
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const usage_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const computation_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
