#include "capflow/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "capflow/sampling.hpp"
#include "capflow/symmetrization.hpp"

namespace capflow {

namespace {

struct Envelope {
  double lower_min = std::numeric_limits<double>::infinity();
  double lower_max = -std::numeric_limits<double>::infinity();
  double upper_min = std::numeric_limits<double>::infinity();
  double upper_max = -std::numeric_limits<double>::infinity();
  double total_min = std::numeric_limits<double>::infinity();
  double total_max = -std::numeric_limits<double>::infinity();
  double curv_min = std::numeric_limits<double>::infinity();
  std::int64_t violations = 0;
  std::int64_t negatives = 0;
  std::int64_t components = 0;
  std::int64_t curv_count = 0;

  void merge(const Envelope& o) {
    lower_min = std::min(lower_min, o.lower_min);
    lower_max = std::max(lower_max, o.lower_max);
    upper_min = std::min(upper_min, o.upper_min);
    upper_max = std::max(upper_max, o.upper_max);
    total_min = std::min(total_min, o.total_min);
    total_max = std::max(total_max, o.total_max);
    curv_min = std::min(curv_min, o.curv_min);
    violations += o.violations;
    negatives += o.negatives;
    components += o.components;
    curv_count += o.curv_count;
  }
};

}  // namespace

HarnessResult run_perm_harness(const HarnessConfig& cfg) {
  KernelParams params(cfg.alpha, cfg.n, cfg.d);
  const int d = cfg.d;
  const int N = params.odd_exponent();
  const double two_alpha = 2.0 * cfg.alpha;
  const int parts = std::max(1, cfg.partition_count);

  TripleSampleConfig sample_cfg;
  sample_cfg.d = d;

  std::vector<Envelope> env(parts);

#pragma omp parallel for schedule(static)
  for (int p = 0; p < parts; ++p) {
    std::int64_t lo = cfg.samples * p / parts;
    std::int64_t hi = cfg.samples * (p + 1) / parts;
    Envelope& e = env[p];
    std::vector<double> a(d), b(d), s(d), pcomp(d), pscale(d);
    for (std::int64_t idx = lo; idx < hi; ++idx) {
      SplitMix64 g = stream_at(cfg.seed, static_cast<std::uint64_t>(idx));
      Triple t = random_triple(g, sample_cfg);
      for (int i = 0; i < d; ++i) {
        a[i] = t.y[i] - t.x[i];
        b[i] = t.z[i] - t.y[i];
        s[i] = t.z[i] - t.x[i];
      }
      double e_pow = N + cfg.alpha;
      double pa = std::pow(norm(a), e_pow);
      double pb = std::pow(norm(b), e_pow);
      double ps = std::pow(norm(s), e_pow);
      double L = largest_side(t);
      double L2a = std::pow(L, two_alpha);

      double total = 0.0;
      for (int i = 0; i < d; ++i) {
        PermValue pv = perm_component_core(a[i], b[i], s[i], pa, pb, ps, N);
        pcomp[i] = pv.value;
        pscale[i] = pv.scale;
        total += pv.value;
        ++e.components;
        if (pv.value < 0.0) ++e.negatives;
        if (pv.value < -1e-12 * pv.scale) ++e.violations;

        double Mi = coordinate_spread(t, i);
        double upper = pv.value * L2a;
        e.upper_min = std::min(e.upper_min, upper);
        e.upper_max = std::max(e.upper_max, upper);
        if (Mi > 0.0) {
          double lower = pv.value * std::pow(L, two_alpha + 2.0 * cfg.n) /
                         int_pow(Mi, 2 * cfg.n);
          e.lower_min = std::min(e.lower_min, lower);
          e.lower_max = std::max(e.lower_max, lower);
        }
      }
      e.total_min = std::min(e.total_min, total * L2a);
      e.total_max = std::max(e.total_max, total * L2a);

      if (cfg.alpha == 1.0) {
        double c = menger_curvature(t);
        if (c > 0.0) {
          double c2 = c * c;
          for (int j = 0; j < d; ++j) {
            double angles = line_hyperplane_angle(t.x, t.y, j) +
                            line_hyperplane_angle(t.x, t.z, j) +
                            line_hyperplane_angle(t.y, t.z, j);
            if (angles < cfg.theta0) continue;
            double others = total - pcomp[j];
            e.curv_min = std::min(e.curv_min, others / c2);
            ++e.curv_count;
          }
        }
      }
    }
  }

  Envelope all;
  for (const Envelope& e : env) all.merge(e);

  HarnessResult r;
  r.lower_ratio_min = all.lower_min;
  r.lower_ratio_max = all.lower_max;
  r.upper_ratio_min = all.upper_min;
  r.upper_ratio_max = all.upper_max;
  r.total_scaled_min = all.total_min;
  r.total_scaled_max = all.total_max;
  r.sign_violations = all.violations;
  r.negative_components = all.negatives;
  r.component_count = all.components;
  r.curvature_ratio_min = all.curv_min;
  r.curvature_samples = all.curv_count;
  return r;
}

}  // namespace capflow
