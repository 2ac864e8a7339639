#include "capflow/kernels.hpp"

#include <cmath>

#include "capflow/geometry.hpp"

namespace capflow {

KernelParams::KernelParams(double alpha_, int n_, int d_)
    : alpha(alpha_), n(n_), d(d_) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw ValidationError("alpha must lie in (0, 1]");
  }
  if (n < 1) throw ValidationError("n must be >= 1");
  if (d < 2) throw ValidationError("dimension must be >= 2");
}

double kernel_component(const KernelParams& params, int axis,
                        std::span<const double> x) {
  if (axis < 0 || axis >= params.d || static_cast<int>(x.size()) != params.d) {
    throw DimensionMismatch("kernel axis/point dimension mismatch");
  }
  double r = norm(x);
  if (r == 0.0) throw SingularPoint("kernel evaluated at the origin");
  int N = params.odd_exponent();
  return int_pow(x[axis], N) / std::pow(r, N + params.alpha);
}

void kernel_vector(const KernelParams& params, std::span<const double> x,
                   std::span<double> out) {
  if (static_cast<int>(x.size()) != params.d ||
      static_cast<int>(out.size()) != params.d) {
    throw DimensionMismatch("kernel point dimension mismatch");
  }
  double r = norm(x);
  if (r == 0.0) throw SingularPoint("kernel evaluated at the origin");
  int N = params.odd_exponent();
  double denom = std::pow(r, N + params.alpha);
  for (int i = 0; i < params.d; ++i) {
    out[i] = int_pow(x[i], N) / denom;
  }
}

namespace {

// Exact factorials; (2n-1)! stays within the 64-bit mantissa for n <= 8.
long double factorial_ld(int k) {
  long double f = 1.0L;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

// (1-a)(3-a)...(2m-1-a)
long double odd_shift_product(int m, long double a) {
  long double p = 1.0L;
  for (int j = 1; j <= m; ++j) p *= (2.0L * j - 1.0L - a);
  return p;
}

long double pow2_ld(int k) { return std::exp2l(static_cast<long double>(k)); }

long double coeff_lhs(int n, int l, long double a) {
  long double sum = 0.0L;
  for (int k = 1; k <= l + 1; ++k) {
    long double term = odd_shift_product(k, a) /
                       (pow2_ld(n - k) * factorial_ld(2 * k - 1) * factorial_ld(l + 1 - k));
    sum += (k % 2 == 0) ? term : -term;
  }
  return sum;
}

long double coeff_rhs(int n, int l, long double a) {
  long double prod = 1.0L;  // a(a+2)...(a+2(l-1)), empty for l = 0
  for (int j = 0; j < l; ++j) prod *= (a + 2.0L * j);
  return -(1.0L - a) * prod / (pow2_ld(n - 1 - l) * factorial_ld(2 * l + 1));
}

void check_coeff_args(int n, int l, double alpha) {
  if (n < 1) throw ValidationError("n must be >= 1");
  if (l < 0 || l > n - 1) throw ValidationError("need 0 <= l <= n-1");
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw ValidationError("alpha must lie in (0, 1)");
  }
}

}  // namespace

FourierPoly fourier_poly_coeffs(int n, double alpha) {
  if (n < 1) throw ValidationError("n must be >= 1");
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw ValidationError("alpha must lie in (0, 1) for the Fourier polynomial");
  }
  long double a = alpha;
  FourierPoly poly{n, alpha, {}, {}};
  poly.a.resize(n);
  poly.b.resize(n);
  for (int k = 0; k <= n - 1; ++k) {
    long double v = odd_shift_product(n - k, a) /
                    (factorial_ld(2 * n - 1 - 2 * k) * pow2_ld(k) * factorial_ld(k));
    poly.a[k] = static_cast<double>(((n - k) % 2 == 0) ? v : -v);
  }
  for (int l = 0; l <= n - 1; ++l) {
    // b_{2l} = LHS(n, l) / (n-l-1)!; the alternating sum is the delicate part.
    long double b = coeff_lhs(n, l, a) / factorial_ld(n - l - 1);
    poly.b[l] = static_cast<double>(b);
  }
  return poly;
}

double coeff_identity_residual(int n, int l, double alpha) {
  check_coeff_args(n, l, alpha);
  long double a = alpha;
  return static_cast<double>(coeff_lhs(n, l, a) - coeff_rhs(n, l, a));
}

double coeff_identity_rhs_magnitude(int n, int l, double alpha) {
  check_coeff_args(n, l, alpha);
  return static_cast<double>(std::fabs(coeff_rhs(n, l, static_cast<long double>(alpha))));
}

}  // namespace capflow
