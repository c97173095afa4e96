#include "cbandit/optim/qp.hpp"

#include <cmath>
#include <string>

#include "cbandit/core/errors.hpp"

namespace cbandit {

QuadraticProgram::QuadraticProgram(int n)
    : target(Eigen::VectorXd::Zero(n)),
      lower(Eigen::VectorXd::Constant(n, -kInf)),
      upper(Eigen::VectorXd::Constant(n, kInf)) {}

void QuadraticProgram::add_row(Eigen::VectorXd a, RowType type, double b) {
  if (a.size() != lower.size()) throw InvalidArgument("QP row length does not match variable count");
  rows.push_back({std::move(a), type, b});
}

namespace {

// All constraints as a_i x (= or <=) b_i.
struct Lowered {
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  std::vector<bool> is_eq;
};

Lowered lower_constraints(const QuadraticProgram& qp) {
  const int n = qp.num_vars();
  std::vector<Eigen::VectorXd> rows;
  std::vector<double> rhs;
  std::vector<bool> eq;
  for (const auto& r : qp.rows) {
    const double sgn = r.type == RowType::Ge ? -1.0 : 1.0;
    rows.push_back(sgn * r.a);
    rhs.push_back(sgn * r.b);
    eq.push_back(r.type == RowType::Eq);
  }
  for (int j = 0; j < n; ++j)
    if (std::isfinite(qp.lower[j])) {
      Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
      e[j] = -1.0;
      rows.push_back(e);
      rhs.push_back(-qp.lower[j]);
      eq.push_back(false);
    }
  for (int j = 0; j < n; ++j)
    if (std::isfinite(qp.upper[j])) {
      Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
      e[j] = 1.0;
      rows.push_back(e);
      rhs.push_back(qp.upper[j]);
      eq.push_back(false);
    }
  Lowered L;
  L.A.resize(static_cast<Eigen::Index>(rows.size()), n);
  L.b.resize(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    L.A.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
    L.b[static_cast<Eigen::Index>(i)] = rhs[i];
  }
  L.is_eq = std::move(eq);
  return L;
}

Eigen::MatrixXd working_matrix(const Lowered& L, const std::vector<int>& W, int n) {
  Eigen::MatrixXd AW(static_cast<Eigen::Index>(W.size()), n);
  for (std::size_t k = 0; k < W.size(); ++k) AW.row(static_cast<Eigen::Index>(k)) = L.A.row(W[k]);
  return AW;
}

}  // namespace

QpResult solve_constrained_ls(const QuadraticProgram& qp, const NumericSettings& s) {
  const int n = qp.num_vars();
  if (qp.upper.size() != n) throw InvalidArgument("QP bound vectors have wrong length");
  const Eigen::MatrixXd D = qp.D.size() == 0 ? Eigen::MatrixXd::Identity(n, n) : qp.D;
  if (D.cols() != n || D.rows() != qp.target.size()) throw InvalidArgument("QP design map has wrong shape");
  const Eigen::VectorXd& y = qp.target;

  // Feasible starting point from LP phase I.
  LinearProgram lp(n);
  lp.rows = qp.rows;
  lp.lower = qp.lower;
  lp.upper = qp.upper;
  const LpResult p1 = solve_lp(lp, s);
  QpResult res;
  if (p1.status != LpStatus::Optimal) return res;  // Infeasible
  Eigen::VectorXd x = p1.x;

  const Lowered L = lower_constraints(qp);
  const int m = static_cast<int>(L.b.size());
  const double scale = 1.0 + L.b.lpNorm<Eigen::Infinity>();

  // Linearly independent working set: equalities first, then active inequalities.
  std::vector<int> W;
  std::vector<bool> inW(static_cast<std::size_t>(m), false);
  // Orthonormal basis of the working rows, grown by Gram-Schmidt (twice, for
  // stability) so the independence test is O(n |W|).
  std::vector<Eigen::VectorXd> basis;
  auto try_add = [&](int i) {
    Eigen::VectorXd r = L.A.row(i).transpose();
    const double norm0 = r.norm();
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& q : basis) r -= q.dot(r) * q;
    if (!(r.norm() > 1e-10 * norm0)) return false;
    basis.push_back(r / r.norm());
    W.push_back(i);
    inW[static_cast<std::size_t>(i)] = true;
    return true;
  };
  for (int i = 0; i < m; ++i)
    if (L.is_eq[static_cast<std::size_t>(i)]) try_add(i);
  for (int i = 0; i < m; ++i)
    if (!L.is_eq[static_cast<std::size_t>(i)] && std::abs(L.A.row(i).dot(x) - L.b[i]) <= s.qp_feas_tol * scale)
      try_add(i);

  const int max_iter = 10 * (n + m);
  for (int it = 1; it <= max_iter; ++it) {
    res.iterations = it;
    const Eigen::MatrixXd AW = working_matrix(L, W, n);
    Eigen::MatrixXd Z;
    if (W.empty()) {
      Z = Eigen::MatrixXd::Identity(n, n);
    } else {
      Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(AW.transpose());
      qr.setThreshold(1e-10);
      const auto r = qr.rank();
      const Eigen::MatrixXd Q = qr.householderQ();
      Z = Q.rightCols(n - r);
    }
    const Eigen::VectorXd resid = y - D * x;
    Eigen::VectorXd p = Eigen::VectorXd::Zero(n);
    if (Z.cols() > 0) {
      const Eigen::MatrixXd DZ = D * Z;
      Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(DZ);
      cod.setThreshold(1e-12);
      p = Z * cod.solve(resid);
    }
    const double pnorm = p.lpNorm<Eigen::Infinity>();
    if (pnorm <= 1e-11 * (1.0 + x.lpNorm<Eigen::Infinity>())) {
      // Stationary on the working set: check multiplier signs.
      const Eigen::VectorXd grad = -D.transpose() * resid;
      Eigen::VectorXd lambda;
      if (!W.empty()) {
        Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(AW.transpose());
        lambda = cod.solve(-grad);
      }
      int drop = -1;
      double most_neg = -s.qp_kkt_tol * (1.0 + grad.lpNorm<Eigen::Infinity>());
      for (std::size_t k = 0; k < W.size(); ++k) {
        if (L.is_eq[static_cast<std::size_t>(W[k])]) continue;
        if (lambda[static_cast<Eigen::Index>(k)] < most_neg) {
          most_neg = lambda[static_cast<Eigen::Index>(k)];
          drop = static_cast<int>(k);
        }
      }
      if (drop < 0) {
        res.status = QpStatus::Optimal;
        res.x = x;
        res.residual = (y - D * x).squaredNorm();
        res.active = W;
        res.multipliers = W.empty() ? Eigen::VectorXd() : lambda;
        return res;
      }
      inW[static_cast<std::size_t>(W[static_cast<std::size_t>(drop)])] = false;
      W.erase(W.begin() + drop);
      continue;
    }
    double alpha = 1.0;
    int block = -1;
    for (int i = 0; i < m; ++i) {
      if (inW[static_cast<std::size_t>(i)] || L.is_eq[static_cast<std::size_t>(i)]) continue;
      const double ap = L.A.row(i).dot(p);
      if (ap <= 1e-14 * (1.0 + pnorm)) continue;
      const double step = std::max(0.0, (L.b[i] - L.A.row(i).dot(x)) / ap);
      if (step < alpha) {
        alpha = step;
        block = i;
      }
    }
    x += alpha * p;
    if (block >= 0) {
      W.push_back(block);
      inW[static_cast<std::size_t>(block)] = true;
    }
  }
  throw NumericalError("active-set QP did not converge within " + std::to_string(max_iter) + " iterations");
}

}  // namespace cbandit
