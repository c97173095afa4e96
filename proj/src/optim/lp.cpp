#include "cbandit/optim/lp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cbandit/core/errors.hpp"
#include "cbandit/simd/kernels.hpp"

namespace cbandit {

const NumericSettings& default_settings() {
  static const NumericSettings s;
  return s;
}

LinearProgram::LinearProgram(int n)
    : c(Eigen::VectorXd::Zero(n)), lower(Eigen::VectorXd::Zero(n)), upper(Eigen::VectorXd::Constant(n, kInf)) {}

void LinearProgram::add_row(Eigen::VectorXd a, RowType type, double b) {
  if (a.size() != c.size()) throw InvalidArgument("LP row length does not match variable count");
  rows.push_back({std::move(a), type, b});
}

std::string_view to_string(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
  }
  return "?";
}

double lp_violation(const LinearProgram& lp, const Eigen::VectorXd& x) {
  double v = 0.0;
  for (const auto& r : lp.rows) {
    const double ax = r.a.dot(x);
    switch (r.type) {
      case RowType::Le: v = std::max(v, ax - r.b); break;
      case RowType::Ge: v = std::max(v, r.b - ax); break;
      case RowType::Eq: v = std::max(v, std::abs(ax - r.b)); break;
    }
  }
  for (int j = 0; j < x.size(); ++j) {
    v = std::max(v, lp.lower[j] - x[j]);
    v = std::max(v, x[j] - lp.upper[j]);
  }
  return v;
}

namespace {

// x_j = offset_j + sum coef * x'_col, every x' >= 0.
struct VarMap {
  double offset = 0.0;
  int col = -1;
  double coef = 1.0;
  int neg_col = -1;  // free variables: x = x'_col - x'_neg_col
};

struct StdRow {
  std::vector<double> a;
  RowType type;
  double b;
  int origin;  // original row index, -1 for bound rows
  double flip;  // +1 or -1
};

class Tableau {
 public:
  Tableau(int m, int ncols) : m_(m), w_(ncols + 1), t_(static_cast<std::size_t>(m) * (ncols + 1), 0.0) {}

  double& at(int i, int j) { return t_[static_cast<std::size_t>(i) * w_ + j]; }
  double at(int i, int j) const { return t_[static_cast<std::size_t>(i) * w_ + j]; }
  double* row(int i) { return t_.data() + static_cast<std::size_t>(i) * w_; }
  const double* row(int i) const { return t_.data() + static_cast<std::size_t>(i) * w_; }
  double& rhs(int i) { return at(i, w_ - 1); }
  int rows() const { return m_; }
  int width() const { return w_; }

  void pivot(int r, int col, std::vector<double>& cost) {
    const auto& k = simd::kernels();
    double* pr = row(r);
    k.scale(pr, 1.0 / pr[col], static_cast<std::size_t>(w_));
    pr[col] = 1.0;
    for (int i = 0; i < m_; ++i) {
      if (i == r) continue;
      const double f = at(i, col);
      if (f != 0.0) {
        k.axpy(-f, pr, row(i), static_cast<std::size_t>(w_));
        at(i, col) = 0.0;
        // Roundoff below zero would give negative ratios next time, which
        // breaks the monotonicity Bland's rule relies on.
        if (std::abs(rhs(i)) < 1e-13) rhs(i) = 0.0;
      }
    }
    const double f = cost[static_cast<std::size_t>(col)];
    if (f != 0.0) {
      k.axpy(-f, pr, cost.data(), static_cast<std::size_t>(w_));
      cost[static_cast<std::size_t>(col)] = 0.0;
    }
  }

  void drop_row(int r) {
    t_.erase(t_.begin() + static_cast<std::ptrdiff_t>(r) * w_, t_.begin() + static_cast<std::ptrdiff_t>(r + 1) * w_);
    --m_;
  }

 private:
  int m_;
  int w_;
  std::vector<double> t_;
};

enum class PhaseOutcome { Optimal, Unbounded };

// Reduced-cost row (length width, last entry = -objective) for costs c.
std::vector<double> reduced_costs(const Tableau& T, const std::vector<int>& basis, const std::vector<double>& c) {
  std::vector<double> z(static_cast<std::size_t>(T.width()), 0.0);
  std::copy(c.begin(), c.end(), z.begin());
  const auto& k = simd::kernels();
  for (int i = 0; i < T.rows(); ++i) {
    const double cb = c[static_cast<std::size_t>(basis[static_cast<std::size_t>(i)])];
    if (cb != 0.0) k.axpy(-cb, T.row(i), z.data(), z.size());
  }
  return z;
}

PhaseOutcome run_phase(Tableau& T, std::vector<int>& basis, std::vector<double>& z, int allowed_cols,
                       const NumericSettings& s, int& iterations) {
  const int max_iter = 50000 + 50 * (T.rows() + T.width());
  while (true) {
    if (++iterations > max_iter) throw NumericalError("simplex iteration limit reached");
    int enter = -1;
    for (int j = 0; j < allowed_cols; ++j)
      if (z[static_cast<std::size_t>(j)] < -s.lp_cost_tol) {
        enter = j;
        break;
      }
    if (enter < 0) return PhaseOutcome::Optimal;
    int leave = -1;
    double best = kInf;
    for (int i = 0; i < T.rows(); ++i) {
      const double a = T.at(i, enter);
      if (a <= s.lp_pivot_tol) continue;
      const double ratio = std::max(0.0, T.at(i, T.width() - 1)) / a;
      if (leave < 0 || ratio < best - 1e-12) {
        best = ratio;
        leave = i;
      } else if (ratio <= best + 1e-12 &&
                 basis[static_cast<std::size_t>(i)] < basis[static_cast<std::size_t>(leave)]) {
        leave = i;
      }
    }
    if (leave < 0) return PhaseOutcome::Unbounded;
    T.pivot(leave, enter, z);
    basis[static_cast<std::size_t>(leave)] = enter;
  }
}

}  // namespace

LpResult solve_lp(const LinearProgram& lp, const NumericSettings& s) {
  const int n = lp.num_vars();
  if (lp.lower.size() != n || lp.upper.size() != n) throw InvalidArgument("LP bound vectors have wrong length");
  for (const auto& r : lp.rows)
    if (r.a.size() != n) throw InvalidArgument("LP row length does not match variable count");

  // Variable substitution.
  std::vector<VarMap> vm(static_cast<std::size_t>(n));
  std::vector<int> upper_rows;
  int ncols = 0;
  for (int j = 0; j < n; ++j) {
    auto& v = vm[static_cast<std::size_t>(j)];
    const double lo = lp.lower[j], hi = lp.upper[j];
    if (lo > hi) return {};
    if (std::isfinite(lo)) {
      v.offset = lo;
      v.col = ncols++;
      if (std::isfinite(hi)) upper_rows.push_back(j);
    } else if (std::isfinite(hi)) {
      v.offset = hi;
      v.col = ncols++;
      v.coef = -1.0;
    } else {
      v.col = ncols++;
      v.neg_col = ncols++;
    }
  }
  std::vector<StdRow> all;
  all.reserve(lp.rows.size() + upper_rows.size());
  auto lower_row = [&](const double* a, RowType type, double b, int origin) {
    StdRow r{std::vector<double>(static_cast<std::size_t>(ncols), 0.0), type, b, origin, 1.0};
    for (int j = 0; j < n; ++j) {
      const double aj = a[j];
      if (aj == 0.0) continue;
      const auto& v = vm[static_cast<std::size_t>(j)];
      r.b -= aj * v.offset;
      r.a[static_cast<std::size_t>(v.col)] += aj * v.coef;
      if (v.neg_col >= 0) r.a[static_cast<std::size_t>(v.neg_col)] -= aj;
    }
    if (r.b < 0.0) {
      for (double& x : r.a) x = -x;
      r.b = -r.b;
      r.flip = -1.0;
      if (r.type == RowType::Le) r.type = RowType::Ge;
      else if (r.type == RowType::Ge) r.type = RowType::Le;
    }
    all.push_back(std::move(r));
  };
  for (std::size_t i = 0; i < lp.rows.size(); ++i)
    lower_row(lp.rows[i].a.data(), lp.rows[i].type, lp.rows[i].b, static_cast<int>(i));
  for (int j : upper_rows) {
    std::vector<double> a(static_cast<std::size_t>(n), 0.0);
    a[static_cast<std::size_t>(j)] = 1.0;
    lower_row(a.data(), RowType::Le, lp.upper[j], -1);
  }

  const int m = static_cast<int>(all.size());
  double obj_sign = lp.sense == Sense::Maximize ? -1.0 : 1.0;
  std::vector<double> cstd(static_cast<std::size_t>(ncols), 0.0);
  double cconst = 0.0;
  for (int j = 0; j < n; ++j) {
    const double cj = obj_sign * lp.c[j];
    const auto& v = vm[static_cast<std::size_t>(j)];
    cconst += cj * v.offset;
    cstd[static_cast<std::size_t>(v.col)] += cj * v.coef;
    if (v.neg_col >= 0) cstd[static_cast<std::size_t>(v.neg_col)] -= cj;
  }

  // Columns: structural | slack/surplus | artificial.
  int nslack = 0, nart = 0;
  for (const auto& r : all) {
    if (r.type != RowType::Eq) ++nslack;
    if (r.type != RowType::Le) ++nart;
  }
  const int art0 = ncols + nslack;
  const int total = art0 + nart;
  Tableau T(m, total);
  std::vector<int> basis(static_cast<std::size_t>(m));
  std::vector<int> row_origin(static_cast<std::size_t>(m));
  std::vector<double> row_flip(static_cast<std::size_t>(m));
  Eigen::MatrixXd Astd = Eigen::MatrixXd::Zero(m, total);
  Eigen::VectorXd bstd(m);
  {
    int sl = ncols, ar = art0;
    for (int i = 0; i < m; ++i) {
      const auto& r = all[static_cast<std::size_t>(i)];
      for (int j = 0; j < ncols; ++j) T.at(i, j) = r.a[static_cast<std::size_t>(j)];
      if (r.type == RowType::Le) {
        T.at(i, sl) = 1.0;
        basis[static_cast<std::size_t>(i)] = sl++;
      } else {
        if (r.type == RowType::Ge) T.at(i, sl++) = -1.0;
        T.at(i, ar) = 1.0;
        basis[static_cast<std::size_t>(i)] = ar++;
      }
      T.rhs(i) = r.b;
      row_origin[static_cast<std::size_t>(i)] = r.origin;
      row_flip[static_cast<std::size_t>(i)] = r.flip;
      for (int j = 0; j < total; ++j) Astd(i, j) = T.at(i, j);
      bstd[i] = r.b;
    }
  }

  LpResult res;
  int iters = 0;

  if (nart > 0) {
    std::vector<double> c1(static_cast<std::size_t>(total), 0.0);
    for (int j = art0; j < total; ++j) c1[static_cast<std::size_t>(j)] = 1.0;
    auto z = reduced_costs(T, basis, c1);
    run_phase(T, basis, z, total, s, iters);
    const double infeas = -z.back();
    if (infeas > s.lp_feas_tol * (1.0 + bstd.lpNorm<Eigen::Infinity>())) {
      res.status = LpStatus::Infeasible;
      res.iterations = iters;
      return res;
    }
    // Drive remaining artificials out of the basis; drop redundant rows.
    for (int i = 0; i < T.rows();) {
      if (basis[static_cast<std::size_t>(i)] < art0) {
        ++i;
        continue;
      }
      int col = -1;
      double best = s.lp_pivot_tol;
      for (int j = 0; j < art0; ++j)
        if (std::abs(T.at(i, j)) > best) {
          best = std::abs(T.at(i, j));
          col = j;
        }
      if (col >= 0) {
        T.pivot(i, col, z);
        basis[static_cast<std::size_t>(i)] = col;
        ++i;
      } else {
        T.drop_row(i);
        basis.erase(basis.begin() + i);
        row_origin.erase(row_origin.begin() + i);
        row_flip.erase(row_flip.begin() + i);
        Eigen::MatrixXd A2(Astd.rows() - 1, Astd.cols());
        A2 << Astd.topRows(i), Astd.bottomRows(Astd.rows() - i - 1);
        Astd = A2;
        Eigen::VectorXd b2(bstd.size() - 1);
        b2 << bstd.head(i), bstd.tail(bstd.size() - i - 1);
        bstd = b2;
      }
    }
  }

  std::vector<double> c2(static_cast<std::size_t>(total), 0.0);
  std::copy(cstd.begin(), cstd.end(), c2.begin());
  auto z = reduced_costs(T, basis, c2);
  if (run_phase(T, basis, z, art0, s, iters) == PhaseOutcome::Unbounded) {
    res.status = LpStatus::Unbounded;
    res.iterations = iters;
    return res;
  }

  // Refine the basic solution and multipliers from the basis matrix.
  const int mr = T.rows();
  Eigen::VectorXd xs = Eigen::VectorXd::Zero(total);
  Eigen::VectorXd y = Eigen::VectorXd::Zero(mr);
  if (mr > 0) {
    Eigen::MatrixXd B(mr, mr);
    Eigen::VectorXd cB(mr);
    for (int i = 0; i < mr; ++i) {
      B.col(i) = Astd.col(basis[static_cast<std::size_t>(i)]);
      cB[i] = c2[static_cast<std::size_t>(basis[static_cast<std::size_t>(i)])];
    }
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(B);
    Eigen::VectorXd xb = lu.solve(bstd);
    if (!xb.allFinite()) {
      for (int i = 0; i < mr; ++i) xb[i] = T.rhs(i);
    }
    for (int i = 0; i < mr; ++i) xs[basis[static_cast<std::size_t>(i)]] = std::max(0.0, xb[i]);
    y = lu.transpose().solve(cB);
    if (!y.allFinite()) y.setZero();
  }

  res.status = LpStatus::Optimal;
  res.iterations = iters;
  res.x.resize(n);
  for (int j = 0; j < n; ++j) {
    const auto& v = vm[static_cast<std::size_t>(j)];
    double xj = v.offset + v.coef * xs[v.col];
    if (v.neg_col >= 0) xj -= xs[v.neg_col];
    res.x[j] = xj;
  }
  res.value = lp.c.dot(res.x);
  res.duals = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(lp.rows.size()));
  double dual_std = cconst;
  for (int i = 0; i < mr; ++i) {
    dual_std += y[i] * bstd[i];
    const int o = row_origin[static_cast<std::size_t>(i)];
    if (o >= 0) res.duals[o] = obj_sign * row_flip[static_cast<std::size_t>(i)] * y[i];
  }
  res.dual_value = obj_sign * dual_std;
  return res;
}

}  // namespace cbandit
