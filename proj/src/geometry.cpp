#include "capflow/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "capflow/dd.hpp"

namespace capflow {

double dist(std::span<const double> p, std::span<const double> q) {
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    double dx = p[i] - q[i];
    acc += dx * dx;
  }
  return std::sqrt(acc);
}

double norm(std::span<const double> v) {
  double acc = 0.0;
  for (double c : v) acc += c * c;
  return std::sqrt(acc);
}

namespace detail {

void require_same_dim(const Triple& t) {
  if (t.x.size() != t.y.size() || t.y.size() != t.z.size() || t.x.size() < 2) {
    throw DimensionMismatch("triple points must share a dimension >= 2");
  }
}

void require_distinct(const Triple& t) {
  require_same_dim(t);
  if (t.x == t.y || t.y == t.z || t.x == t.z) {
    throw DegenerateTriple("triple has coincident points");
  }
}

}  // namespace detail

double largest_side(const Triple& t) {
  detail::require_distinct(t);
  double xy = dist(t.x, t.y);
  double yz = dist(t.y, t.z);
  double xz = dist(t.x, t.z);
  return std::max({xy, yz, xz});
}

double coordinate_spread(const Triple& t, int axis) {
  detail::require_same_dim(t);
  if (axis < 0 || axis >= t.dim()) {
    throw DimensionMismatch("axis out of range");
  }
  double a = std::abs(t.y[axis] - t.x[axis]);
  double b = std::abs(t.z[axis] - t.y[axis]);
  double c = std::abs(t.z[axis] - t.x[axis]);
  return std::max({a, b, c});
}

double stable_gram_area_sq(std::span<const double> a, std::span<const double> b) {
  dd::Double2 aa = dd::dot(a, a);
  dd::Double2 bb = dd::dot(b, b);
  dd::Double2 ab = dd::dot(a, b);
  dd::Double2 g = dd::sub(dd::mul(aa, bb), dd::mul(ab, ab));
  double v = g.hi + g.lo;
  return v > 0.0 ? v : 0.0;  // clamp the roundoff tail of collinear inputs
}

double triangle_area(const Triple& t) {
  detail::require_distinct(t);
  int d = t.dim();
  std::vector<double> a(d), b(d);
  for (int i = 0; i < d; ++i) {
    a[i] = t.y[i] - t.x[i];
    b[i] = t.z[i] - t.y[i];
  }
  return 0.5 * std::sqrt(stable_gram_area_sq(a, b));
}

double menger_curvature(const Triple& t) {
  double area = triangle_area(t);
  double xy = dist(t.x, t.y);
  double yz = dist(t.y, t.z);
  double xz = dist(t.x, t.z);
  return 4.0 * area / (xy * yz * xz);
}

double melnikov_sum(const Triple& t) {
  detail::require_distinct(t);
  if (t.dim() != 2) {
    throw DimensionMismatch("permutation identity is planar (d = 2)");
  }
  std::complex<double> z[3] = {{t.x[0], t.x[1]}, {t.y[0], t.y[1]}, {t.z[0], t.z[1]}};
  static constexpr int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                      {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  std::complex<double> acc = 0.0;
  double max_term = 0.0;
  for (const auto& s : perms) {
    std::complex<double> term =
        1.0 / ((z[s[1]] - z[s[0]]) * std::conj(z[s[2]] - z[s[0]]));
    acc += term;
    max_term = std::max(max_term, std::abs(term));
  }
  // The imaginary parts cancel pairwise; a large residue means the input
  // overwhelmed double precision.
  if (std::abs(acc.imag()) > 1e-9 * std::max(std::abs(acc.real()), max_term)) {
    throw NumericConsistencyError("imaginary residue in permutation sum");
  }
  return acc.real();
}

double line_hyperplane_angle(const Point& p, const Point& q, int axis) {
  if (p.size() != q.size() || p.size() < 2) {
    throw DimensionMismatch("points must share a dimension >= 2");
  }
  if (axis < 0 || axis >= static_cast<int>(p.size())) {
    throw DimensionMismatch("axis out of range");
  }
  if (p == q) throw DegenerateTriple("coincident points define no line");
  double ratio = std::abs(p[axis] - q[axis]) / dist(p, q);
  return std::asin(std::min(ratio, 1.0));
}

}  // namespace capflow
