#include <doctest.h>

#include <cmath>

#include "capflow/capacity.hpp"
#include "capflow/kernels.hpp"
#include "capflow/lp.hpp"
#include "capflow/measures.hpp"
#include "capflow/sets.hpp"

using namespace capflow;

namespace {

PointCloud two_atoms(double sep) {
  PointCloud c;
  c.d = 2;
  c.points = {0.0, 0.0, sep, 0.0};
  c.weights = {0.5, 0.5};
  return c;
}

PointCloud segment_cloud(int n) {
  SetSpec spec;
  spec.kind = SetKind::segment;
  spec.n_samples = n;
  return sample_curve(spec);
}

}  // namespace

TEST_CASE("box LP: hand-checkable instances") {
  // |m_0| <= 1 and |m_1| <= 1 rows: optimum 1 + 1 = 2.
  Eigen::MatrixXd G = Eigen::MatrixXd::Identity(2, 2);
  LpResult r = solve_box_lp(G, 100.0, 1e-8);
  CHECK(r.status == LpStatus::optimal);
  CHECK(r.objective == doctest::Approx(2.0).epsilon(1e-6));

  // |m_0 + m_1| <= 1: optimum 1 along a degenerate face; the default
  // tolerance is reachable there.
  Eigen::MatrixXd row(1, 2);
  row << 1.0, 1.0;
  LpResult r2 = solve_box_lp(row, 100.0, 1e-7);
  CHECK(r2.status == LpStatus::optimal);
  CHECK(r2.rel_gap <= 1e-7);
  CHECK(r2.objective == doctest::Approx(1.0).epsilon(1e-6));

  // m_0 - m_1 bounded but the sum is free: hits the box, flagged unbounded.
  Eigen::MatrixXd skew(1, 2);
  skew << 1.0, -1.0;
  LpResult r3 = solve_box_lp(skew, 50.0, 1e-8);
  CHECK(r3.status == LpStatus::unbounded);
}

TEST_CASE("gamma_plus_lp: single atom closed form and delta dependence") {
  PointCloud atom;
  atom.d = 2;
  atom.points = {0.0, 0.0};
  atom.weights = {1.0};
  KernelParams params(0.5, 1, 2);

  LPConfig cfg;
  cfg.h = 0.25;
  cfg.separation_factor = 0.5;
  CapacityEstimate est = gamma_plus_lp(atom, params, cfg);
  CHECK(est.diagnostics.success);

  // One-variable LP: m* = 1 / max_{grid,axis} |K_i(y - x)|.
  double pad = 2.0 * std::max(0.0, 4.0 * cfg.h);
  GridPoints grid = constraint_grid(atom, cfg.h, pad, cfg.separation_factor * cfg.h);
  double kmax = 0.0;
  std::vector<double> kv(2);
  for (int k = 0; k < grid.size(); ++k) {
    std::vector<double> dvec{grid.point(k)[0], grid.point(k)[1]};
    kernel_vector(params, dvec, kv);
    kmax = std::max({kmax, std::abs(kv[0]), std::abs(kv[1])});
  }
  CHECK(est.value == doctest::Approx(1.0 / kmax).epsilon(1e-6));

  // Halving h halves delta = factor * h: constraints move closer to the
  // atom and cap the mass harder (single points are null in the limit).
  LPConfig tighter = cfg;
  tighter.h = 0.5 * cfg.h;
  CapacityEstimate est2 = gamma_plus_lp(atom, params, tighter);
  CHECK(est2.value < est.value);
}

TEST_CASE("gamma_plus_lp: feasibility, monotonicity, scaling, refinement") {
  KernelParams params(0.5, 1, 2);
  LPConfig cfg;
  cfg.h = 0.125;

  PointCloud coarse = segment_cloud(16);
  PointCloud fine = segment_cloud(31);  // contains the 16-point set's bbox
  CapacityEstimate a = gamma_plus_lp(coarse, params, cfg);
  CapacityEstimate b = gamma_plus_lp(fine, params, cfg);
  CHECK(a.diagnostics.success);
  CHECK(b.diagnostics.success);
  CHECK(a.diagnostics.max_violation <= cfg.feasibility_tol);
  CHECK(b.value >= a.value * (1.0 - 1e-6));  // support monotonicity

  // Masses reported match the objective.
  double mass_sum = 0.0;
  for (double m : a.masses) mass_sum += m;
  CHECK(mass_sum == doctest::Approx(a.value).epsilon(1e-12));

  // Dilation by 2 with co-dilated grid: value scales by 2^alpha.
  PointCloud dil = coarse;
  for (double& c : dil.points) c *= 2.0;
  LPConfig cfg2 = cfg;
  cfg2.h = 0.25;
  CapacityEstimate c = gamma_plus_lp(dil, params, cfg2);
  CHECK(c.value == doctest::Approx(a.value * std::pow(2.0, 0.5)).epsilon(1e-6));

  // Refinement stability: 32 vs 64 samples, matched grid.
  CapacityEstimate r32 = gamma_plus_lp(segment_cloud(32), params, cfg);
  CapacityEstimate r64 = gamma_plus_lp(segment_cloud(64), params, cfg);
  CHECK(std::abs(r64.value - r32.value) / r32.value < 0.10);
}

TEST_CASE("riesz_capacity_wolff: two-atom analytic case and scan oracle") {
  WolffParams wp(1.0, 1.5);  // gamma = 0.5, q-1 = 2
  EnergyOptConfig cfg;
  cfg.seed = 7;

  // Scan oracle over the one-parameter family (m, 1-m): the leave-one-out
  // energy is m(1-m), maximized at uniform with E = 1/4.
  double scan_best = 0.0;
  for (int i = 1; i < 200; ++i) {
    double m = i / 200.0;
    DiscreteMeasure mu(2, {0, 0, 1, 0}, {m, 1.0 - m});
    scan_best = std::max(scan_best, wolff_energy(mu, wp));
  }
  CHECK(scan_best == doctest::Approx(0.25).epsilon(1e-4));

  CapacityEstimate est = riesz_capacity_wolff(two_atoms(1.0), wp, cfg);
  CHECK(est.diagnostics.success);
  CHECK(est.diagnostics.objective == doctest::Approx(0.25).epsilon(1e-6));
  CHECK(est.value == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(est.masses[0] == doctest::Approx(0.5).epsilon(1e-4));

  // The optimizer's objective agrees with the measures-module energy at
  // the returned masses.
  DiscreteMeasure at_opt(2, {0, 0, 1, 0}, est.masses);
  CHECK(wolff_energy(at_opt, wp) == doctest::Approx(est.diagnostics.objective).epsilon(1e-12));

  // Dilation: value scales as lambda^{2 - s p} = lambda^{1/2}.
  CapacityEstimate dil = riesz_capacity_wolff(two_atoms(4.0), wp, cfg);
  CHECK(dil.value == doctest::Approx(est.value * 2.0).epsilon(1e-6));

  // Degenerate support.
  PointCloud one;
  one.d = 2;
  one.points = {0, 0};
  one.weights = {1};
  CapacityEstimate deg = riesz_capacity_wolff(one, wp, cfg);
  CHECK(deg.diagnostics.status == "degenerate_support");
  CHECK_THROWS_AS(riesz_capacity_wolff(two_atoms(1.0), WolffParams(4.0 / 3, 1.5), cfg),
                  ValidationError);  // s p = 2 -> gamma = 0
}

TEST_CASE("riesz_capacity_wolff: multi-start agreement on a circle") {
  SetSpec spec;
  spec.kind = SetKind::circle;
  spec.n_samples = 24;
  PointCloud cloud = sample_curve(spec);
  EnergyOptConfig cfg;
  cfg.seed = 11;
  CapacityEstimate est = riesz_capacity_wolff(cloud, wolff_params_for_alpha(0.5), cfg);
  CHECK(est.diagnostics.success);
  CHECK(est.diagnostics.max_violation < 0.01);  // spread across converged starts
}

TEST_CASE("gamma_plus_energy: collinear reduction, invariance, objective oracle") {
  KernelParams params(1.0, 2, 2);
  EnergyOptConfig cfg;
  cfg.seed = 13;

  PointCloud seg = segment_cloud(12);
  CapacityEstimate est = gamma_plus_energy(seg, params, cfg);
  CHECK(est.diagnostics.success);
  CHECK(est.value > 0.0);

  // Collinear support at alpha = 1: the permutation part vanishes, so the
  // optimized energy must match the growth-only sym energy at the masses.
  DiscreteMeasure at_opt(2, seg.points, est.masses);
  double e = sym_energy(at_opt, params);
  CHECK(e == doctest::Approx(est.diagnostics.objective).epsilon(1e-10));
  CHECK(perm_triple_sum(at_opt, params) == 0.0);

  // Rigid motion invariance (n = 1 kernels are isotropic in the sum).
  KernelParams p1(0.5, 1, 2);
  CapacityEstimate base = gamma_plus_energy(seg, p1, cfg);
  PointCloud moved = seg;
  for (std::size_t i = 0; i < moved.points.size(); i += 2) {
    double x = moved.points[i], y = moved.points[i + 1];
    moved.points[i] = std::cos(0.4) * x - std::sin(0.4) * y + 2.0;
    moved.points[i + 1] = std::sin(0.4) * x + std::cos(0.4) * y - 1.0;
  }
  CapacityEstimate rot = gamma_plus_energy(moved, p1, cfg);
  CHECK(rot.value == doctest::Approx(base.value).epsilon(1e-6));

  PointCloud pair = two_atoms(1.0);
  CapacityEstimate deg = gamma_plus_energy(pair, p1, cfg);
  CHECK(deg.diagnostics.status == "degenerate_support");
}

TEST_CASE("comparability_experiment: schema and row arithmetic") {
  std::vector<NamedCloud> sets;
  sets.push_back({"segment", 16, segment_cloud(16)});
  sets.push_back({"cantor4", 2, cantor4(2, 0.25)});
  LPConfig lp_cfg;
  lp_cfg.h = 0.125;
  EnergyOptConfig opt_cfg;
  opt_cfg.seed = 3;

  auto rows = comparability_experiment(sets, {0.5}, {1}, lp_cfg, opt_cfg);
  REQUIRE(rows.size() == 2);
  for (const auto& r : rows) {
    CHECK(r.ok);
    CHECK(r.lp.value > 0.0);
    CHECK(r.energy.value > 0.0);
    CHECK(r.wolff.value > 0.0);
    CHECK(r.ratio_lp_wolff == doctest::Approx(r.lp.value / r.wolff.value));
  }

  auto rows8 = comparability_experiment(sets, {0.3, 0.7}, {1, 2}, lp_cfg, opt_cfg);
  CHECK(rows8.size() == 8);

  std::string csv = experiment_csv(rows);
  CHECK(csv.substr(0, csv.find('\n')) ==
        "set,generation,alpha,n,gamma_lp,gamma_energy,riesz_wolff,ratio_lp_wolff,"
        "ratio_energy_wolff,status");

  CHECK_THROWS_AS(comparability_experiment({}, {0.5}, {1}, lp_cfg, opt_cfg),
                  ValidationError);
  CHECK_THROWS_AS(comparability_experiment(sets, {1.0}, {1}, lp_cfg, opt_cfg),
                  ValidationError);
}
