#include "capflow/symmetrization.hpp"

#include <cmath>
#include <vector>

namespace capflow {

namespace {

struct DiffData {
  std::vector<double> a, b, s;
  double pa, pb, ps;  // norms raised to N + alpha
};

DiffData difference_data(const KernelParams& params, const Triple& t) {
  detail::require_distinct(t);
  if (t.dim() != params.d) {
    throw DimensionMismatch("triple dimension does not match kernel params");
  }
  int d = params.d;
  DiffData dd;
  dd.a.resize(d);
  dd.b.resize(d);
  dd.s.resize(d);
  for (int i = 0; i < d; ++i) {
    dd.a[i] = t.y[i] - t.x[i];
    dd.b[i] = t.z[i] - t.y[i];
    dd.s[i] = t.z[i] - t.x[i];
  }
  double e = params.odd_exponent() + params.alpha;
  dd.pa = std::pow(norm(dd.a), e);
  dd.pb = std::pow(norm(dd.b), e);
  dd.ps = std::pow(norm(dd.s), e);
  return dd;
}

}  // namespace

PermValue perm_component_scaled(const KernelParams& params, int axis, const Triple& t) {
  if (axis < 0 || axis >= params.d) throw DimensionMismatch("axis out of range");
  DiffData dd = difference_data(params, t);
  return perm_component_core(dd.a[axis], dd.b[axis], dd.s[axis], dd.pa, dd.pb,
                             dd.ps, params.odd_exponent());
}

double perm_component(const KernelParams& params, int axis, const Triple& t) {
  return perm_component_scaled(params, axis, t).value;
}

double perm_total(const KernelParams& params, const Triple& t) {
  DiffData dd = difference_data(params, t);
  int N = params.odd_exponent();
  double sum = 0.0;
  for (int i = 0; i < params.d; ++i) {
    sum += perm_component_core(dd.a[i], dd.b[i], dd.s[i], dd.pa, dd.pb, dd.ps, N).value;
  }
  return sum;
}

PermReport bound_report(const KernelParams& params, int axis, const Triple& t) {
  if (axis < 0 || axis >= params.d) throw DimensionMismatch("axis out of range");
  DiffData dd = difference_data(params, t);
  int N = params.odd_exponent();

  PermReport rep;
  rep.value = perm_component_core(dd.a[axis], dd.b[axis], dd.s[axis], dd.pa,
                                  dd.pb, dd.ps, N)
                  .value;

  double L = largest_side(t);
  double Mi = coordinate_spread(t, axis);
  double two_alpha = 2.0 * params.alpha;
  rep.upper_ratio = rep.value * std::pow(L, two_alpha);
  if (Mi == 0.0) {
    rep.lower_ratio = std::numeric_limits<double>::infinity();
  } else {
    rep.lower_ratio =
        rep.value * std::pow(L, two_alpha + 2.0 * params.n) / int_pow(Mi, 2 * params.n);
  }

  if (params.alpha == 1.0) {
    double c = menger_curvature(t);
    if (c > 0.0) {
      double others = 0.0;
      for (int i = 0; i < params.d; ++i) {
        if (i == axis) continue;
        others +=
            perm_component_core(dd.a[i], dd.b[i], dd.s[i], dd.pa, dd.pb, dd.ps, N).value;
      }
      rep.curvature_ratio = others / (c * c);
    }
  }
  return rep;
}

}  // namespace capflow
