#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <vector>

#include "abc/lp.hpp"

namespace abc::lpdetail {

namespace {

// Inequality-form copy of the problem: maximize c'x s.t. Ax <= b, with the
// implicit x >= 0 appended as -x <= 0 rows and >=/= rows converted.
struct IneqForm {
  int64_t n = 0, m = 0;
  std::vector<int64_t> row_start{0};
  std::vector<int32_t> col;
  std::vector<double> val;
  std::vector<double> b;

  void push_row(const LpProblem& p, int64_t r, double sign) {
    for (int64_t t = p.row_start[r]; t < p.row_start[r + 1]; ++t) {
      col.push_back(p.col[t]);
      val.push_back(sign * p.val[t]);
    }
    b.push_back(sign * p.rhs[r]);
    row_start.push_back(int64_t(col.size()));
    ++m;
  }
};

IneqForm to_ineq(const LpProblem& p) {
  IneqForm f;
  f.n = p.num_vars;
  for (int64_t r = 0; r < p.rows(); ++r) {
    switch (p.rel[r]) {
      case Rel::Le:
        f.push_row(p, r, 1.0);
        break;
      case Rel::Ge:
        f.push_row(p, r, -1.0);
        break;
      case Rel::Eq:
        f.push_row(p, r, 1.0);
        f.push_row(p, r, -1.0);
        break;
    }
  }
  for (int64_t v = 0; v < f.n; ++v) {
    f.col.push_back(int32_t(v));
    f.val.push_back(-1.0);
    f.b.push_back(0.0);
    f.row_start.push_back(int64_t(f.col.size()));
    ++f.m;
  }
  return f;
}

}  // namespace

// Mehrotra predictor-corrector on the inequality form.  The normal matrix
// A' diag(y/s) A is dense n x n; one Cholesky per iteration, two solves.
LpSolution ipm_solve(const LpProblem& prob) {
  IneqForm f = to_ineq(prob);
  const int64_t n = f.n, m = f.m;
  Eigen::VectorXd c(n);
  for (int64_t v = 0; v < n; ++v) c[v] = prob.objective[v];

  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd s(m), y = Eigen::VectorXd::Ones(m);
  for (int64_t r = 0; r < m; ++r) s[r] = std::max(f.b[r], 1.0);

  auto a_times = [&](const Eigen::VectorXd& v) {
    Eigen::VectorXd out(m);
    for (int64_t r = 0; r < m; ++r) {
      double acc = 0;
      for (int64_t t = f.row_start[r]; t < f.row_start[r + 1]; ++t) acc += f.val[t] * v[f.col[t]];
      out[r] = acc;
    }
    return out;
  };
  auto at_times = [&](const Eigen::VectorXd& v) {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
    for (int64_t r = 0; r < m; ++r)
      for (int64_t t = f.row_start[r]; t < f.row_start[r + 1]; ++t)
        out[f.col[t]] += f.val[t] * v[r];
    return out;
  };

  double bnorm = 1.0, cnorm = 1.0;
  for (double v : f.b) bnorm = std::max(bnorm, std::fabs(v));
  for (int64_t v = 0; v < n; ++v) cnorm = std::max(cnorm, std::fabs(c[v]));

  Eigen::MatrixXd M(n, n);
  LpSolution best;
  best.status = LpSolution::Status::Optimal;
  double best_err = 1e30;

  const int max_iter = 120;
  for (int iter = 0; iter < max_iter; ++iter) {
    Eigen::VectorXd rp(m);
    {
      Eigen::VectorXd ax = a_times(x);
      for (int64_t r = 0; r < m; ++r) rp[r] = f.b[r] - ax[r] - s[r];
    }
    Eigen::VectorXd rd = c - at_times(y);
    double mu = s.dot(y) / double(m);
    double pinf = rp.lpNorm<Eigen::Infinity>() / bnorm;
    double dinf = rd.lpNorm<Eigen::Infinity>() / cnorm;
    double obj = c.dot(x);
    double gap = s.dot(y) / (1.0 + std::fabs(obj));

    double err = std::max({pinf, dinf, gap});
    if (err < best_err) {
      best_err = err;
      best.objective_value = obj;
      best.assignment.assign(x.data(), x.data() + n);
    }
    if (pinf < 1e-10 && dinf < 1e-10 && gap < 1e-11) break;

    // normal matrix with diagonal weights y/s
    M.setZero();
    for (int64_t r = 0; r < m; ++r) {
      double w = y[r] / s[r];
      for (int64_t t1 = f.row_start[r]; t1 < f.row_start[r + 1]; ++t1) {
        double wv = w * f.val[t1];
        int32_t i = f.col[t1];
        for (int64_t t2 = f.row_start[r]; t2 < f.row_start[r + 1]; ++t2) {
          int32_t j = f.col[t2];
          if (j <= i) M(i, j) += wv * f.val[t2];
        }
      }
    }
    double ridge = 1e-12 * M.diagonal().maxCoeff();
    Eigen::LLT<Eigen::MatrixXd> llt;
    for (int tries = 0; tries < 6; ++tries) {
      Eigen::MatrixXd Mreg = M;
      Mreg.diagonal().array() += ridge;
      llt.compute(Mreg.selfadjointView<Eigen::Lower>());
      if (llt.info() == Eigen::Success) break;
      ridge *= 100;
    }
    if (llt.info() != Eigen::Success) throw computation_error("ipm: normal matrix not positive definite");

    auto solve_dirs = [&](const Eigen::VectorXd& rc, Eigen::VectorXd& dx, Eigen::VectorXd& dy,
                          Eigen::VectorXd& ds) {
      // M dx = rd + A'(S^-1 Y rp) - A'(S^-1 rc)
      Eigen::VectorXd tmp(m);
      for (int64_t r = 0; r < m; ++r) tmp[r] = (y[r] * rp[r] - rc[r]) / s[r];
      Eigen::VectorXd rhs = rd + at_times(tmp);
      dx = llt.solve(rhs);
      Eigen::VectorXd adx = a_times(dx);
      dy.resize(m);
      ds.resize(m);
      for (int64_t r = 0; r < m; ++r) {
        dy[r] = (y[r] * (adx[r] - rp[r]) + rc[r]) / s[r];
        ds[r] = rp[r] - adx[r];
      }
    };
    auto step_len = [&](const Eigen::VectorXd& v, const Eigen::VectorXd& dv) {
      double a = 1.0;
      for (int64_t r = 0; r < m; ++r)
        if (dv[r] < 0) a = std::min(a, -v[r] / dv[r]);
      return a;
    };

    // predictor: complementarity target 0, so r_comp = -SYe
    Eigen::VectorXd rc(m), dx, dy, ds;
    for (int64_t r = 0; r < m; ++r) rc[r] = -s[r] * y[r];
    solve_dirs(rc, dx, dy, ds);
    double ap = step_len(s, ds), ad = step_len(y, dy);
    double mu_aff = 0;
    for (int64_t r = 0; r < m; ++r) mu_aff += (s[r] + ap * ds[r]) * (y[r] + ad * dy[r]);
    mu_aff /= double(m);
    double sigma = std::pow(mu_aff / mu, 3.0);

    // corrector
    for (int64_t r = 0; r < m; ++r) rc[r] = sigma * mu - s[r] * y[r] - ds[r] * dy[r];
    solve_dirs(rc, dx, dy, ds);
    ap = 0.995 * step_len(s, ds);
    ad = 0.995 * step_len(y, dy);
    x += ap * dx;
    s += ap * ds;
    y += ad * dy;
  }

  if (best_err > 3e-5)
    throw computation_error("ipm did not converge: residual " + std::to_string(best_err));
  // snap small negatives introduced by the interior path
  for (auto& v : best.assignment)
    if (v < 0 && v > -1e-9) v = 0;
  best.solver = "ipm";
  return best;
}

}  // namespace abc::lpdetail
