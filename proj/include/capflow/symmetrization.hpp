#pragma once

// Three-point symmetrization of the kernels: p_i(x,y,z) is the sum of the
// three products K_i(x-y)K_i(x-z) + K_i(y-x)K_i(y-z) + K_i(z-x)K_i(z-y).
// Evaluated in the difference variables a = y-x, b = z-y, a+b = z-x:
//
//   p_i = [ s_i^N a_i^N |b|^{N+al} + s_i^N b_i^N |a|^{N+al}
//           - a_i^N b_i^N |s|^{N+al} ] / (|a| |b| |s|)^{N+al},
//
// with N = 2n-1 and s = a+b. The numerator cancels to zero on collinear
// triples (al = 1) and on triples with a_i = b_i = 0.

#include <cmath>
#include <limits>
#include <optional>

#include "capflow/geometry.hpp"
#include "capflow/kernels.hpp"

namespace capflow {

// Residues within this many ulps of the term magnitudes are roundoff of an
// exact cancellation and snap to zero. The floor is machine-epsilon scaled,
// far below every tolerance used by callers (1e-10 and up).
inline constexpr double kCancellationFloor =
    64.0 * std::numeric_limits<double>::epsilon();

struct PermValue {
  double value = 0.0;  // p_i
  double scale = 0.0;  // largest |term| / denominator, for normalized checks
};

// Core evaluation on packed difference data. ai, bi, si are the axis
// components of a, b, s; pa, pb, ps are |a|^{N+alpha} etc.
inline PermValue perm_component_core(double ai, double bi, double si, double pa,
                                     double pb, double ps, int N) {
  double aiN = int_pow(ai, N);
  double biN = int_pow(bi, N);
  double siN = int_pow(si, N);
  double t1 = siN * aiN * pb;
  double t2 = siN * biN * pa;
  double t3 = aiN * biN * ps;
  double num = t1 + t2 - t3;
  double mag = std::max({std::abs(t1), std::abs(t2), std::abs(t3)});
  double denom = pa * pb * ps;
  if (std::abs(num) <= kCancellationFloor * mag) {
    return {0.0, mag / denom};
  }
  return {num / denom, mag / denom};
}

PermValue perm_component_scaled(const KernelParams& params, int axis, const Triple& t);

// p_i(x,y,z); symmetric in the triple, homogeneous of degree -2 alpha.
double perm_component(const KernelParams& params, int axis, const Triple& t);

// Sum of perm_component over all axes.
double perm_total(const KernelParams& params, const Triple& t);

// Ratios diagnosing the two-sided comparability bounds for the given axis.
struct PermReport {
  double value = 0.0;        // p_axis
  double lower_ratio = 0.0;  // p_axis L^{2al+2n} / M_axis^{2n}, +inf if M_axis = 0
  double upper_ratio = 0.0;  // p_axis L^{2al}
  // (sum over i != axis of p_i) / c^2; only for alpha = 1 on non-collinear
  // triples.
  std::optional<double> curvature_ratio;
};

PermReport bound_report(const KernelParams& params, int axis, const Triple& t);

}  // namespace capflow
