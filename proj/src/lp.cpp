#include "capflow/lp.hpp"

#include <algorithm>
#include <cmath>

namespace capflow {

namespace {

using Eigen::ArrayXd;
using Eigen::MatrixXd;
using Eigen::VectorXd;

// Largest step in [0, 1] keeping x + a*dx componentwise positive.
double max_step(const ArrayXd& x, const ArrayXd& dx) {
  double a = 1.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (dx[i] < 0.0) a = std::min(a, -x[i] / dx[i]);
  }
  return a;
}

}  // namespace

LpResult solve_box_lp(const MatrixXd& G, double upper_bound, double opt_tol,
                      int max_iterations) {
  const Eigen::Index R = G.rows();
  const Eigen::Index N = G.cols();
  LpResult res;
  res.m = VectorXd::Zero(N);
  if (N == 0) {
    res.status = LpStatus::optimal;
    return res;
  }

  const double U = upper_bound;
  // Interior start: small masses keep both slack sides well positive.
  double row_scale = 1.0;
  if (R > 0) row_scale = std::max(1.0, G.cwiseAbs().rowwise().sum().maxCoeff());
  ArrayXd m = ArrayXd::Constant(N, std::min(0.25 / row_scale, 0.5 * U));
  ArrayXd ll = ArrayXd::Ones(R), lu = ArrayXd::Ones(R);  // row duals (lo, up)
  ArrayXd zl = ArrayXd::Ones(N), zu = ArrayXd::Ones(N);  // bound duals

  VectorXd Gm = G * m.matrix();
  ArrayXd sl = 1.0 + Gm.array();
  ArrayXd su = 1.0 - Gm.array();

  const double pairs = static_cast<double>(2 * R + 2 * N);
  MatrixXd M(N, N);
  VectorXd dm(N), dm_cc(N);

  for (int it = 1; it <= max_iterations; ++it) {
    res.iterations = it;

    // Dual residual of  max 1.m  <=>  min -1.m.
    VectorXd rc = VectorXd::Constant(N, -1.0);
    if (R > 0) rc += G.transpose() * (lu - ll).matrix();
    rc -= zl.matrix();
    rc += zu.matrix();

    double mu = (((sl * ll).sum() + (su * lu).sum() + (m * zl).sum() +
                  ((U - m) * zu).sum())) /
                pairs;
    double obj = m.sum();
    res.objective = obj;
    res.rel_gap = mu * pairs / (1.0 + std::abs(obj));
    double dual_inf = rc.cwiseAbs().maxCoeff();
    if (res.rel_gap <= opt_tol && dual_inf <= opt_tol * row_scale) {
      res.status = LpStatus::optimal;
      break;
    }
    if (obj > 0.9 * U * static_cast<double>(N)) {
      res.status = LpStatus::unbounded;
      break;
    }

    // Normal matrix: G^T diag(ll/sl + lu/su) G + diag(zl/m + zu/(U-m)).
    // Weight clamping keeps the endgame factorizable on degenerate faces.
    const double w_cap = 1e13;
    ArrayXd row_w = (R > 0) ? (ll / sl + lu / su).min(w_cap).eval() : ArrayXd();
    ArrayXd diag_w = (zl / m + zu / (U - m)).min(w_cap).max(1e-13);
    if (R > 0) {
      MatrixXd W = row_w.sqrt().matrix().asDiagonal() * G;
      M.noalias() = W.transpose() * W;
    } else {
      M.setZero();
    }
    M.diagonal() += diag_w.matrix();
    Eigen::LDLT<MatrixXd> llt(M);
    bool solver_ok = (llt.info() == Eigen::Success && llt.isPositive());
    if (!solver_ok) {
      M.diagonal().array() += 1e-12 * M.diagonal().maxCoeff();
      llt.compute(M);
      solver_ok = (llt.info() == Eigen::Success);
    }
    if (!solver_ok) {
      // Factorization lost: keep the current (feasible) iterate.
      res.status = (it > 1) ? LpStatus::max_iterations : LpStatus::failed;
      break;
    }

    // rhs for targets tl, tu (rows) and tm, tU (bounds):
    //   M dm = -rc - G^T (tu/su - tl/sl) + tm/m - tU/(U-m).
    auto solve_with_targets = [&](const ArrayXd& tl, const ArrayXd& tu,
                                  const ArrayXd& tm, const ArrayXd& tU,
                                  VectorXd& out) {
      VectorXd rhs = -rc;
      if (R > 0) rhs -= G.transpose() * (tu / su - tl / sl).matrix();
      rhs += (tm / m).matrix();
      rhs -= (tU / (U - m)).matrix();
      out = llt.solve(rhs);
    };

    // Affine direction (all targets drive complementarity to zero).
    ArrayXd tl = -(sl * ll), tu = -(su * lu), tm = -(m * zl), tU = -((U - m) * zu);
    solve_with_targets(tl, tu, tm, tU, dm);
    if (!dm.allFinite()) {
      res.status = (it > 1) ? LpStatus::max_iterations : LpStatus::failed;
      break;
    }

    ArrayXd Gdm = (R > 0) ? (G * dm).array().eval() : ArrayXd();
    ArrayXd dsl = Gdm, dsu = -Gdm;
    ArrayXd dll = (tl - ll * dsl) / sl;
    ArrayXd dlu = (tu - lu * dsu) / su;
    ArrayXd dzl = (tm - zl * dm.array()) / m;
    ArrayXd dzu = (tU + zu * dm.array()) / (U - m);

    double a_aff = 1.0;
    if (R > 0) {
      a_aff = std::min({a_aff, max_step(sl, dsl), max_step(su, dsu),
                        max_step(ll, dll), max_step(lu, dlu)});
    }
    a_aff = std::min({a_aff, max_step(m, dm.array()), max_step(U - m, -dm.array()),
                      max_step(zl, dzl), max_step(zu, dzu)});

    double mu_aff =
        (((sl + a_aff * dsl) * (ll + a_aff * dll)).sum() +
         ((su + a_aff * dsu) * (lu + a_aff * dlu)).sum() +
         ((m + a_aff * dm.array()) * (zl + a_aff * dzl)).sum() +
         ((U - m - a_aff * dm.array()) * (zu + a_aff * dzu)).sum()) /
        pairs;
    double sigma = std::pow(mu_aff / mu, 3);
    double target = sigma * mu;

    // Corrector: recenter and subtract the second-order terms.
    tl = target - sl * ll - dsl * dll;
    tu = target - su * lu - dsu * dlu;
    tm = target - m * zl - dm.array() * dzl;
    tU = target - (U - m) * zu + dm.array() * dzu;
    solve_with_targets(tl, tu, tm, tU, dm_cc);
    if (!dm_cc.allFinite()) {
      res.status = (it > 1) ? LpStatus::max_iterations : LpStatus::failed;
      break;
    }

    Gdm = (R > 0) ? (G * dm_cc).array().eval() : ArrayXd();
    dsl = Gdm;
    dsu = -Gdm;
    dll = (tl - ll * dsl) / sl;
    dlu = (tu - lu * dsu) / su;
    dzl = (tm - zl * dm_cc.array()) / m;
    dzu = (tU + zu * dm_cc.array()) / (U - m);

    double a = 1.0;
    if (R > 0) {
      a = std::min({a, max_step(sl, dsl), max_step(su, dsu), max_step(ll, dll),
                    max_step(lu, dlu)});
    }
    a = std::min({a, max_step(m, dm_cc.array()), max_step(U - m, -dm_cc.array()),
                  max_step(zl, dzl), max_step(zu, dzu)});
    a *= 0.995;

    m += a * dm_cc.array();
    ll += a * dll;
    lu += a * dlu;
    zl += a * dzl;
    zu += a * dzu;
    Gm = G * m.matrix();
    sl = 1.0 + Gm.array();
    su = 1.0 - Gm.array();

    if (it == max_iterations) res.status = LpStatus::max_iterations;
  }

  res.m = m.matrix();
  res.objective = m.sum();
  return res;
}

}  // namespace capflow
