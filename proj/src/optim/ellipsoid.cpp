#include "cbandit/optim/ellipsoid.hpp"

#include <cmath>
#include <deque>
#include <sstream>

#include "cbandit/core/errors.hpp"
#include "cbandit/simd/kernels.hpp"

namespace cbandit {

int ellipsoid_cap(int n, double R, double Delta) {
  if (n < 1 || !(R > 0.0) || !(Delta > 0.0)) throw InvalidArgument("ellipsoid_cap needs n >= 1, R > 0, Delta > 0");
  const double lr = std::log(R / Delta);
  const double core = lr > 0.0 ? std::ceil(2.0 * n * (n + 1) * lr) : 0.0;
  return static_cast<int>(core) + n;
}

namespace {

double log_det_chol(const Eigen::MatrixXd& P, bool& ok) {
  Eigen::LLT<Eigen::MatrixXd> llt(P);
  ok = llt.info() == Eigen::Success;
  if (!ok) return 0.0;
  double s = 0.0;
  const Eigen::MatrixXd& Lm = llt.matrixLLT();
  for (Eigen::Index i = 0; i < P.rows(); ++i) {
    const double d = Lm(i, i);
    if (!(d > 0.0)) {
      ok = false;
      return 0.0;
    }
    s += 2.0 * std::log(d);
  }
  return s;
}

}  // namespace

EllipsoidResult ellipsoid_find(const SeparationOracle& oracle, int n, double R, double Delta,
                               const EllipsoidOptions& opt) {
  EllipsoidResult res;
  res.cap = opt.max_calls > 0 ? opt.max_calls : ellipsoid_cap(n, R, Delta);
  EllipsoidState st;
  st.center = opt.center ? *opt.center : Eigen::VectorXd::Zero(n);
  if (st.center.size() != n) throw InvalidArgument("ellipsoid center has wrong dimension");
  // Row-major storage is irrelevant for a symmetric matrix; kernels see a flat n*n array.
  st.shape = Eigen::MatrixXd::Identity(n, n) * (R * R);
  res.log_det = n * std::log(R * R);

  const auto& k = simd::kernels();
  const double nd = n;
  const double max_ratio = -1.0 / (2.0 * (nd + 1.0));  // log det bound per cut
  std::deque<std::string> trace;
  Eigen::VectorXd Pa(n);

  auto fail = [&](const std::string& what) {
    std::ostringstream os;
    os << "ellipsoid: " << what << " at iteration " << st.iteration << "; recent steps:";
    for (const auto& t : trace) os << "\n  " << t;
    throw NumericalError(os.str());
  };

  while (res.calls < res.cap) {
    const SeparationResult sep = oracle(st.center);
    ++res.calls;
    if (sep.inside) {
      res.found = true;
      res.point = st.center;
      return res;
    }
    if (sep.a.size() != n) throw InvalidArgument("separating hyperplane has wrong dimension");
    if (!(sep.a.lpNorm<Eigen::Infinity>() > 0.0)) throw InvalidArgument("separating hyperplane has zero normal");

    k.gemv(st.shape.data(), sep.a.data(), Pa.data(), static_cast<std::size_t>(n));
    const double aPa = k.dot(sep.a.data(), Pa.data(), static_cast<std::size_t>(n));
    if (!(aPa > 0.0)) fail("nonpositive a^T P a");
    const double root = std::sqrt(aPa);
    double alpha = (sep.a.dot(st.center) - sep.c) / root;
    if (alpha < -1e-9) throw InvalidArgument("oracle returned a hyperplane that does not separate the query");
    alpha = std::max(alpha, 0.0);
    if (alpha >= 1.0) {
      res.proven_empty = true;
      return res;
    }

    const double prev_log_det = res.log_det;
    if (n == 1) {
      // Interval [lo, hi] intersected with the cut.
      const double half = std::sqrt(st.shape(0, 0));
      double lo = st.center[0] - half, hi = st.center[0] + half;
      const double bound = sep.c / sep.a[0];
      if (sep.a[0] > 0.0) hi = std::min(hi, bound);
      else lo = std::max(lo, bound);
      st.center[0] = 0.5 * (lo + hi);
      st.shape(0, 0) = 0.25 * (hi - lo) * (hi - lo);
    } else {
      const Eigen::VectorXd b = Pa / root;
      const double tau = (1.0 + nd * alpha) / (nd + 1.0);
      const double sigma = 2.0 * (1.0 + nd * alpha) / ((nd + 1.0) * (1.0 + alpha));
      const double delta = nd * nd * (1.0 - alpha * alpha) / (nd * nd - 1.0);
      st.center -= tau * b;
      k.rank1_update(st.shape.data(), b.data(), sigma, static_cast<std::size_t>(n));
      k.scale(st.shape.data(), delta, static_cast<std::size_t>(n) * n);
      st.shape = 0.5 * (st.shape + st.shape.transpose()).eval();
    }
    ++st.iteration;

    bool ok = false;
    res.log_det = log_det_chol(st.shape, ok);
    {
      std::ostringstream os;
      os << "iter " << st.iteration << " alpha=" << alpha << " log_det=" << res.log_det;
      trace.push_back(os.str());
      if (trace.size() > 8) trace.pop_front();
    }
    if (!ok) fail("shape matrix lost positive definiteness");
    const double ratio = res.log_det - prev_log_det;
    if (ratio > max_ratio + opt.volume_slack * (1.0 + std::abs(prev_log_det)))
      fail("volume did not contract by the classical factor");
  }
  return res;
}

}  // namespace cbandit
