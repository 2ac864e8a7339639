#pragma once

// Compensated (double-double) primitives for the few places where a naive
// double evaluation cancels badly: Gram-determinant areas of needle
// triangles and alternating coefficient sums.

#include <cmath>
#include <span>

namespace capflow::dd {

struct Double2 {
  double hi = 0.0;
  double lo = 0.0;
};

inline Double2 two_sum(double a, double b) {
  double s = a + b;
  double bb = s - a;
  double err = (a - (s - bb)) + (b - bb);
  return {s, err};
}

inline Double2 two_prod(double a, double b) {
  double p = a * b;
  double err = std::fma(a, b, -p);
  return {p, err};
}

inline Double2 add(const Double2& a, const Double2& b) {
  Double2 s = two_sum(a.hi, b.hi);
  double lo = a.lo + b.lo + s.lo;
  Double2 r = two_sum(s.hi, lo);
  return r;
}

inline Double2 sub(const Double2& a, const Double2& b) {
  return add(a, {-b.hi, -b.lo});
}

inline Double2 mul(const Double2& a, const Double2& b) {
  Double2 p = two_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  Double2 r = two_sum(p.hi, p.lo);
  return r;
}

// Dot product accumulated in double-double.
inline Double2 dot(std::span<const double> u, std::span<const double> v) {
  Double2 acc{0.0, 0.0};
  for (std::size_t i = 0; i < u.size(); ++i) {
    acc = add(acc, two_prod(u[i], v[i]));
  }
  return acc;
}

}  // namespace capflow::dd
