#pragma once

// The vector-valued kernels K_i(x) = x_i^(2n-1)/|x|^(2n-1+alpha) and the
// coefficient identities of their Fourier-side polynomial.

#include <span>
#include <vector>

#include "capflow/errors.hpp"

namespace capflow {

struct KernelParams {
  double alpha;  // in (0, 1]
  int n;         // >= 1; the kernel exponent is 2n-1
  int d;         // ambient dimension >= 2

  KernelParams(double alpha_, int n_, int d_);

  int odd_exponent() const { return 2 * n - 1; }
};

// x_i^(2n-1)/|x|^(2n-1+alpha); odd in x, homogeneous of degree -alpha.
// axis 0-based. Throws SingularPoint at x = 0.
double kernel_component(const KernelParams& params, int axis, std::span<const double> x);

// All d components at once (shares the norm computation).
void kernel_vector(const KernelParams& params, std::span<const double> x,
                   std::span<double> out);

// Coefficients of the degree-2(n-1) polynomial appearing in the Fourier
// transform of the kernel, up to its global constant. a holds a_0..a_{n-1},
// b holds b_0, b_2, ..., b_{2(n-1)}; every b entry is negative for
// 0 < alpha < 1.
struct FourierPoly {
  int n;
  double alpha;
  std::vector<double> a;
  std::vector<double> b;
};

FourierPoly fourier_poly_coeffs(int n, double alpha);

// LHS - RHS of the coefficient identity
//   sum_{k=1}^{l+1} (-1)^k (1-a)(3-a)...(2k-1-a) / (2^{n-k} (2k-1)! (l+1-k)!)
//     = -(1-a) a(a+2)...(a+2(l-1)) / (2^{n-1-l} (2l+1)!),
// evaluated in extended precision. Zero up to roundoff.
double coeff_identity_residual(int n, int l, double alpha);

// |RHS| of the same identity, for normalizing the residual.
double coeff_identity_rhs_magnitude(int n, int l, double alpha);

// x^k for small integer k by repeated multiplication.
inline double int_pow(double x, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

}  // namespace capflow
