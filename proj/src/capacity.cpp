#include "capflow/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "capflow/errors.hpp"
#include "capflow/io.hpp"
#include "capflow/lp.hpp"
#include "capflow/symmetrization.hpp"

namespace capflow {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Bounds {
  std::vector<double> lo, hi;
  double extent = 0.0;  // largest axis extent
  double diam = 0.0;    // bounding-box diagonal
};

Bounds bounding_box(const PointCloud& cloud) {
  const int d = cloud.d;
  Bounds b;
  b.lo.assign(d, kInf);
  b.hi.assign(d, -kInf);
  for (int i = 0; i < cloud.size(); ++i) {
    auto p = cloud.point(i);
    for (int c = 0; c < d; ++c) {
      b.lo[c] = std::min(b.lo[c], p[c]);
      b.hi[c] = std::max(b.hi[c], p[c]);
    }
  }
  double diag2 = 0.0;
  for (int c = 0; c < d; ++c) {
    double e = b.hi[c] - b.lo[c];
    b.extent = std::max(b.extent, e);
    diag2 += e * e;
  }
  b.diam = std::sqrt(diag2);
  return b;
}

}  // namespace

std::string estimator_method_name(EstimatorMethod m) {
  switch (m) {
    case EstimatorMethod::lp: return "lp";
    case EstimatorMethod::wolff_energy: return "wolff_energy";
    case EstimatorMethod::sym_energy: return "sym_energy";
  }
  return "lp";
}

WolffParams wolff_params_for_alpha(double alpha) {
  return WolffParams(2.0 * (2.0 - alpha) / 3.0, 1.5);
}

// ---------------------------------------------------------------------------
// LP estimator
// ---------------------------------------------------------------------------

CapacityEstimate gamma_plus_lp(const PointCloud& support, const KernelParams& params,
                               const LPConfig& cfg) {
  CapacityEstimate est;
  est.method = EstimatorMethod::lp;
  est.diagnostics.support_size = support.size();
  if (support.size() == 0) throw ValidationError("LP estimator needs a nonempty support");
  if (support.d != params.d) {
    throw DimensionMismatch("support dimension does not match kernel params");
  }
  if (!(cfg.separation_factor > 0.0) || !(cfg.feasibility_tol > 0.0) ||
      !(cfg.optimality_tol > 0.0)) {
    throw ValidationError("LP config entries must be positive");
  }
  if (params.d > 2) est.diagnostics.note = "experimental: d > 2";

  const int n_atoms = support.size();
  const int d = params.d;
  Bounds bb = bounding_box(support);
  double h = cfg.h > 0.0 ? cfg.h : (bb.extent > 0.0 ? bb.extent / 16.0 : 0.0625);
  double pad = 2.0 * std::max(bb.extent, 4.0 * h);
  double delta = cfg.separation_factor * h;

  GridPoints grid = constraint_grid(support, h, pad, delta);
  const int n_grid = grid.size();
  if (n_grid == 0) {
    est.value = kInf;
    est.diagnostics.status = "unbounded";
    return est;
  }

  // Kernel rows are generated on demand from the grid/support geometry.
  auto kernel_row = [&](int k, std::vector<double>& row_block) {
    // row_block: d rows of length n_atoms, axis-major.
    auto y = grid.point(k);
    std::vector<double> diff(d), kern(d);
    for (int j = 0; j < n_atoms; ++j) {
      auto x = support.point(j);
      for (int c = 0; c < d; ++c) diff[c] = y[c] - x[c];
      kernel_vector(params, diff, kern);
      for (int c = 0; c < d; ++c) {
        row_block[static_cast<std::size_t>(c) * n_atoms + j] = kern[c];
      }
    }
  };

  // Active rows keyed by (grid index, axis).
  std::vector<std::pair<int, int>> active;
  std::vector<char> is_active(static_cast<std::size_t>(n_grid) * d, 0);
  auto add_row = [&](int k, int axis) {
    std::size_t key = static_cast<std::size_t>(k) * d + axis;
    if (is_active[key]) return;
    is_active[key] = 1;
    active.emplace_back(k, axis);
  };

  // Seed: the nearest grid point to every atom, all axes.
  for (int j = 0; j < n_atoms; ++j) {
    double best = kInf;
    int best_k = 0;
    for (int k = 0; k < n_grid; ++k) {
      double r = dist(grid.point(k), support.point(j));
      if (r < best) {
        best = r;
        best_k = k;
      }
    }
    for (int c = 0; c < d; ++c) add_row(best_k, c);
  }

  const double mass_box = 1e3 * (1.0 + std::pow(std::max(bb.diam, 1.0), params.alpha));
  std::vector<double> row_block(static_cast<std::size_t>(d) * n_atoms);
  Eigen::MatrixXd G(0, n_atoms);
  std::size_t built_rows = 0;
  Eigen::VectorXd masses = Eigen::VectorXd::Zero(n_atoms);
  std::vector<double> potential(static_cast<std::size_t>(n_grid) * d, 0.0);
  LpStatus lp_status = LpStatus::failed;

  for (int round = 0; round < cfg.max_rounds; ++round) {
    // Append any newly activated rows to G.
    if (active.size() > built_rows) {
      G.conservativeResize(static_cast<Eigen::Index>(active.size()), n_atoms);
      int last_k = -1;
      for (std::size_t r = built_rows; r < active.size(); ++r) {
        auto [k, axis] = active[r];
        if (k != last_k) {
          kernel_row(k, row_block);
          last_k = k;
        }
        for (int j = 0; j < n_atoms; ++j) {
          G(static_cast<Eigen::Index>(r), j) =
              row_block[static_cast<std::size_t>(axis) * n_atoms + j];
        }
      }
      built_rows = active.size();
    }

    LpResult lp = solve_box_lp(G, mass_box, cfg.optimality_tol);
    est.diagnostics.iterations += lp.iterations;
    masses = lp.m;
    lp_status = lp.status;
    if (lp.status == LpStatus::failed) break;
    if (lp.status == LpStatus::unbounded) break;

    // Full feasibility sweep over the grid.
    parallel_for(n_grid, [&](std::int64_t k) {
      std::vector<double> block(static_cast<std::size_t>(d) * n_atoms);
      kernel_row(static_cast<int>(k), block);
      for (int c = 0; c < d; ++c) {
        double acc = 0.0;
        for (int j = 0; j < n_atoms; ++j) {
          acc += block[static_cast<std::size_t>(c) * n_atoms + j] * masses[j];
        }
        potential[static_cast<std::size_t>(k) * d + c] = acc;
      }
    });

    std::vector<std::pair<double, std::pair<int, int>>> violations;
    for (int k = 0; k < n_grid; ++k) {
      for (int c = 0; c < d; ++c) {
        double v = std::abs(potential[static_cast<std::size_t>(k) * d + c]);
        if (v > 1.0 + cfg.feasibility_tol &&
            !is_active[static_cast<std::size_t>(k) * d + c]) {
          violations.push_back({v, {k, c}});
        }
      }
    }
    if (violations.empty()) break;
    std::sort(violations.begin(), violations.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
    int added = 0;
    for (const auto& v : violations) {
      add_row(v.second.first, v.second.second);
      if (++added >= cfg.max_added_per_round) break;
    }
  }

  double max_violation = 0.0;
  for (double v : potential) max_violation = std::max(max_violation, std::abs(v) - 1.0);
  est.diagnostics.max_violation = std::max(0.0, max_violation);
  est.diagnostics.constraint_count = static_cast<int>(2 * active.size());
  est.value = masses.sum();
  est.masses.assign(masses.data(), masses.data() + masses.size());

  if (lp_status == LpStatus::unbounded) {
    est.value = kInf;
    est.diagnostics.status = "unbounded";
  } else if (lp_status == LpStatus::failed) {
    est.diagnostics.status = "solver_failure";
  } else if (est.diagnostics.max_violation > cfg.feasibility_tol) {
    est.diagnostics.status = "max_rounds";
  } else if (lp_status == LpStatus::max_iterations) {
    est.diagnostics.status = "max_iterations";
  } else {
    est.diagnostics.status = "optimal";
    est.diagnostics.success = true;
  }
  return est;
}

// ---------------------------------------------------------------------------
// Energy objectives
// ---------------------------------------------------------------------------

namespace {

// Leave-one-out Wolff energy with cached neighbor order per atom.
class WolffObjective final : public SimplexObjective {
 public:
  WolffObjective(const PointCloud& cloud, const WolffParams& wp)
      : n_(cloud.size()), e_(wp.gamma() * wp.q_minus_1()), qm1_(wp.q_minus_1()) {
    order_.resize(static_cast<std::size_t>(n_) * (n_ - 1));
    powers_.resize(static_cast<std::size_t>(n_) * (n_ - 1));
    std::vector<std::pair<double, int>> tmp(n_ - 1);
    for (int j = 0; j < n_; ++j) {
      int t = 0;
      for (int k = 0; k < n_; ++k) {
        if (k == j) continue;
        tmp[t++] = {dist(cloud.point(j), cloud.point(k)), k};
      }
      std::sort(tmp.begin(), tmp.end());
      for (int i = 0; i < n_ - 1; ++i) {
        order_[slot(j, i)] = tmp[i].second;
        powers_[slot(j, i)] = std::pow(tmp[i].first, -e_);
      }
    }
    cum_.resize(n_ - 1);
    shell_.resize(n_ - 1);
  }

  int size() const override { return n_; }

  double eval(std::span<const double> m, std::span<double> grad) override {
    std::fill(grad.begin(), grad.end(), 0.0);
    const bool square = (qm1_ == 2.0);
    double energy = 0.0;
    std::vector<double> W(n_, 0.0);
    for (int j = 0; j < n_; ++j) {
      double cum = 0.0;
      double w = 0.0;
      for (int i = 0; i < n_ - 1; ++i) {
        cum += m[order_[slot(j, i)]];
        double hi = (i + 1 < n_ - 1) ? powers_[slot(j, i + 1)] : 0.0;
        double width = (powers_[slot(j, i)] - hi) / e_;
        cum_[i] = cum;
        shell_[i] = width;
        w += (square ? cum * cum : std::pow(cum, qm1_)) * width;
      }
      W[j] = w;
      energy += m[j] * w;
      // Suffix pass: atom at sorted position i sits inside every shell >= i.
      double suffix = 0.0;
      for (int i = n_ - 2; i >= 0; --i) {
        double dcum = square ? 2.0 * cum_[i] : qm1_ * std::pow(cum_[i], qm1_ - 1.0);
        suffix += m[j] * dcum * shell_[i];
        grad[order_[slot(j, i)]] += suffix;
      }
    }
    for (int j = 0; j < n_; ++j) grad[j] += W[j];
    return energy;
  }

 private:
  std::size_t slot(int j, int i) const {
    return static_cast<std::size_t>(j) * (n_ - 1) + i;
  }

  int n_;
  double e_;
  double qm1_;
  std::vector<int> order_;
  std::vector<double> powers_;
  std::vector<double> cum_;
  std::vector<double> shell_;
};

// Symmetrization energy: growth maximal part plus the cubic permutation
// part with a cached unordered-triple tensor.
class SymEnergyObjective final : public SimplexObjective {
 public:
  SymEnergyObjective(const PointCloud& cloud, const KernelParams& params,
                     int partition_count)
      : n_(cloud.size()), alpha_(params.alpha) {
    // Neighbor order and radii for the growth part.
    order_.resize(static_cast<std::size_t>(n_) * (n_ - 1));
    radii_.resize(static_cast<std::size_t>(n_) * (n_ - 1));
    std::vector<std::pair<double, int>> tmp(n_ - 1);
    for (int j = 0; j < n_; ++j) {
      int t = 0;
      for (int k = 0; k < n_; ++k) {
        if (k == j) continue;
        tmp[t++] = {dist(cloud.point(j), cloud.point(k)), k};
      }
      std::sort(tmp.begin(), tmp.end());
      for (int i = 0; i < n_ - 1; ++i) {
        order_[slot(j, i)] = tmp[i].second;
        radii_[slot(j, i)] = std::pow(tmp[i].first, -alpha_);
      }
    }

    // Triple tensor p(x_i, x_j, x_k) over i < j < k.
    const int d = params.d;
    const int N = params.odd_exponent();
    tensor_.resize(static_cast<std::size_t>(n_) * (n_ - 1) * (n_ - 2) / 6);
    DiscreteMeasure mu(cloud.d, cloud.points, std::vector<double>(n_, 1.0));
    const double expo = N + params.alpha;
    std::vector<double> diff(static_cast<std::size_t>(n_) * n_ * d);
    std::vector<double> pw(static_cast<std::size_t>(n_) * n_);
    for (int i = 0; i < n_; ++i) {
      for (int j = 0; j < n_; ++j) {
        if (i == j) continue;
        double r2 = 0.0;
        for (int c = 0; c < d; ++c) {
          double v = mu.atom(j)[c] - mu.atom(i)[c];
          diff[(static_cast<std::size_t>(i) * n_ + j) * d + c] = v;
          r2 += v * v;
        }
        pw[static_cast<std::size_t>(i) * n_ + j] = std::pow(std::sqrt(r2), expo);
      }
    }
    parallel_for(n_, [&](std::int64_t li) {
      int i = static_cast<int>(li);
      for (int j = i + 1; j < n_; ++j) {
        const double* a = &diff[(static_cast<std::size_t>(i) * n_ + j) * d];
        double pa = pw[static_cast<std::size_t>(i) * n_ + j];
        for (int k = j + 1; k < n_; ++k) {
          const double* b = &diff[(static_cast<std::size_t>(j) * n_ + k) * d];
          const double* s = &diff[(static_cast<std::size_t>(i) * n_ + k) * d];
          double pb = pw[static_cast<std::size_t>(j) * n_ + k];
          double ps = pw[static_cast<std::size_t>(i) * n_ + k];
          double p = 0.0;
          for (int c = 0; c < d; ++c) {
            p += perm_component_core(a[c], b[c], s[c], pa, pb, ps, N).value;
          }
          tensor_[triple_slot(i, j, k)] = p;
        }
      }
    });
    (void)partition_count;
  }

  int size() const override { return n_; }

  double eval(std::span<const double> m, std::span<double> grad) override {
    std::fill(grad.begin(), grad.end(), 0.0);
    double energy = 0.0;

    // Growth part: g_j = max over shells of cum / r^alpha (as cum * r^-alpha).
    std::vector<double> g(n_, 0.0);
    std::vector<int> argmax(n_, 0);
    for (int j = 0; j < n_; ++j) {
      double cum = 0.0, best = 0.0;
      int best_i = 0;
      for (int i = 0; i < n_ - 1; ++i) {
        cum += m[order_[slot(j, i)]];
        double v = cum * radii_[slot(j, i)];
        if (v > best) {
          best = v;
          best_i = i;
        }
      }
      g[j] = best;
      argmax[j] = best_i;
      energy += m[j] * best;
    }
    for (int j = 0; j < n_; ++j) {
      grad[j] += g[j];
      double w = m[j] * radii_[slot(j, argmax[j])];
      for (int i = 0; i <= argmax[j]; ++i) grad[order_[slot(j, i)]] += w;
    }

    // Permutation part: 6 sum_{i<j<k} p m_i m_j m_k.
    double perm = 0.0;
    for (int i = 0; i < n_; ++i) {
      for (int j = i + 1; j < n_; ++j) {
        double mij = m[i] * m[j];
        const double* t = tensor_.data() + triple_slot(i, j, j + 1);
        for (int k = j + 1; k < n_; ++k) {
          double p6 = 6.0 * t[k - j - 1];
          perm += p6 * mij * m[k];
          grad[i] += p6 * m[j] * m[k];
          grad[j] += p6 * m[i] * m[k];
          grad[k] += p6 * mij;
        }
      }
    }
    return energy + perm;
  }

 private:
  std::size_t slot(int j, int i) const {
    return static_cast<std::size_t>(j) * (n_ - 1) + i;
  }
  // Index of (i < j < k) in lexicographic order.
  std::size_t triple_slot(int i, int j, int k) const {
    std::size_t n = n_;
    std::size_t ti = static_cast<std::size_t>(i);
    std::size_t tj = static_cast<std::size_t>(j);
    // count of triples with first index < i
    std::size_t before_i =
        (n * (n - 1) * (n - 2) - (n - ti) * (n - ti - 1) * (n - ti - 2)) / 6;
    std::size_t before_j = (tj - ti - 1) * (2 * n - ti - tj - 2) / 2;
    return before_i + before_j + (static_cast<std::size_t>(k) - tj - 1);
  }

  int n_;
  double alpha_;
  std::vector<int> order_;
  std::vector<double> radii_;
  std::vector<double> tensor_;
};

PointCloud subsample(const PointCloud& cloud, int cap) {
  if (cloud.size() <= cap) return cloud;
  PointCloud out;
  out.d = cloud.d;
  out.provenance = cloud.provenance;
  int stride = (cloud.size() + cap - 1) / cap;
  double kept_weight = 0.0;
  for (int i = 0; i < cloud.size(); i += stride) {
    auto p = cloud.point(i);
    out.points.insert(out.points.end(), p.begin(), p.end());
    out.weights.push_back(cloud.weights[i]);
    kept_weight += cloud.weights[i];
  }
  // Preserve total weight so the subsample stands in for the same measure.
  double rescale = cloud.total_weight() / kept_weight;
  for (double& w : out.weights) w *= rescale;
  return out;
}

}  // namespace

CapacityEstimate riesz_capacity_wolff(const PointCloud& support, const WolffParams& wp,
                                      const EnergyOptConfig& cfg) {
  CapacityEstimate est;
  est.method = EstimatorMethod::wolff_energy;
  est.diagnostics.support_size = support.size();
  if (!(wp.gamma() > 0.0)) {
    throw ValidationError("wolff estimator needs gamma = 2 - s p > 0");
  }
  if (support.size() < 2) {
    est.diagnostics.status = "degenerate_support";
    return est;
  }
  WolffObjective obj(support, wp);
  OptimizerConfig ocfg;
  ocfg.max_steps = cfg.opt_steps;
  ocfg.random_starts = cfg.random_starts;
  ocfg.seed = cfg.seed;
  OptResult r = maximize_on_simplex(obj, ocfg);
  est.diagnostics.iterations = r.iterations;
  est.diagnostics.objective = r.objective;
  est.diagnostics.status = r.converged ? "converged" : "max_steps";
  est.diagnostics.success = r.converged;
  est.diagnostics.max_violation = r.spread;
  est.masses = r.masses;
  if (r.objective > 0.0) {
    est.value = std::pow(r.objective, -(wp.p - 1.0));
  } else {
    est.diagnostics.status = "degenerate_support";
    est.diagnostics.success = false;
  }
  return est;
}

CapacityEstimate gamma_plus_energy(const PointCloud& support, const KernelParams& params,
                                   const EnergyOptConfig& cfg) {
  CapacityEstimate est;
  est.method = EstimatorMethod::sym_energy;
  if (support.size() < 3) {
    est.diagnostics.status = "degenerate_support";
    est.diagnostics.support_size = support.size();
    return est;
  }
  if (support.d != params.d) {
    throw DimensionMismatch("support dimension does not match kernel params");
  }
  PointCloud sub = subsample(support, cfg.subsample_cap);
  est.diagnostics.support_size = sub.size();
  if (sub.size() < support.size()) {
    est.diagnostics.note = "subsampled from " + std::to_string(support.size());
  }
  SymEnergyObjective obj(sub, params, cfg.partition_count);
  OptimizerConfig ocfg;
  ocfg.max_steps = cfg.opt_steps;
  ocfg.random_starts = cfg.random_starts;
  ocfg.seed = cfg.seed;
  OptResult r = maximize_on_simplex(obj, ocfg);
  est.diagnostics.iterations = r.iterations;
  est.diagnostics.objective = r.objective;
  est.diagnostics.status = r.converged ? "converged" : "max_steps";
  est.diagnostics.success = r.converged;
  est.diagnostics.max_violation = r.spread;
  est.masses = r.masses;
  if (r.objective > 0.0) {
    est.value = 1.0 / r.objective;
  } else {
    est.diagnostics.status = "degenerate_support";
    est.diagnostics.success = false;
  }
  return est;
}

std::vector<ExperimentRow> comparability_experiment(
    const std::vector<NamedCloud>& sets, const std::vector<double>& alphas,
    const std::vector<int>& ns, const LPConfig& lp_cfg, const EnergyOptConfig& opt_cfg) {
  if (sets.empty() || alphas.empty() || ns.empty()) {
    throw ValidationError("experiment needs at least one set, alpha, and n");
  }
  for (double a : alphas) {
    if (!(a > 0.0 && a < 1.0)) {
      throw ValidationError("experiment alphas must lie in (0, 1)");
    }
  }
  std::vector<ExperimentRow> rows;
  for (const NamedCloud& set : sets) {
    for (double alpha : alphas) {
      for (int n : ns) {
        ExperimentRow row;
        row.set_name = set.name;
        row.generation = set.generation;
        row.alpha = alpha;
        row.n = n;
        KernelParams params(alpha, n, set.cloud.d);
        std::vector<std::string> failures;
        try {
          row.lp = gamma_plus_lp(set.cloud, params, lp_cfg);
          if (!row.lp.diagnostics.success) failures.push_back("lp=" + row.lp.diagnostics.status);
        } catch (const std::exception& e) {
          row.lp.diagnostics.status = std::string("error: ") + e.what();
          failures.push_back("lp=error");
        }
        try {
          row.energy = gamma_plus_energy(set.cloud, params, opt_cfg);
          if (!row.energy.diagnostics.success) {
            failures.push_back("energy=" + row.energy.diagnostics.status);
          }
        } catch (const std::exception& e) {
          row.energy.diagnostics.status = std::string("error: ") + e.what();
          failures.push_back("energy=error");
        }
        try {
          row.wolff = riesz_capacity_wolff(set.cloud, wolff_params_for_alpha(alpha), opt_cfg);
          if (!row.wolff.diagnostics.success) {
            failures.push_back("wolff=" + row.wolff.diagnostics.status);
          }
        } catch (const std::exception& e) {
          row.wolff.diagnostics.status = std::string("error: ") + e.what();
          failures.push_back("wolff=error");
        }
        row.ratio_lp_wolff = row.lp.value / row.wolff.value;
        row.ratio_energy_wolff = row.energy.value / row.wolff.value;
        row.ok = failures.empty();
        if (row.ok) {
          row.status = "ok";
        } else {
          std::string joined;
          for (std::size_t i = 0; i < failures.size(); ++i) {
            if (i) joined += ';';
            joined += failures[i];
          }
          row.status = joined;
        }
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

std::string experiment_csv(const std::vector<ExperimentRow>& rows) {
  std::string out = kCompareCsvHeader;
  out += '\n';
  for (const ExperimentRow& r : rows) {
    out += r.set_name;
    out += ',';
    out += std::to_string(r.generation);
    out += ',';
    out += fmt17(r.alpha);
    out += ',';
    out += std::to_string(r.n);
    out += ',';
    out += fmt17(r.lp.value);
    out += ',';
    out += fmt17(r.energy.value);
    out += ',';
    out += fmt17(r.wolff.value);
    out += ',';
    out += fmt17(r.ratio_lp_wolff);
    out += ',';
    out += fmt17(r.ratio_energy_wolff);
    out += ',';
    out += r.status;
    out += '\n';
  }
  return out;
}

}  // namespace capflow
