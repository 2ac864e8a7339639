#include <doctest.h>

#include <cmath>
#include <vector>

#include "capflow/kernels.hpp"
#include "capflow/rng.hpp"
#include "capflow/sampling.hpp"

using namespace capflow;

namespace {

// Expands sum_k a_k x1^{2(n-k-1)} (x1^2 + x2^2)^k into monomial
// coefficients of x1^{2l} x2^{2(n-1-l)}; the independent route to b_{2l}.
std::vector<double> expand_poly(const FourierPoly& poly) {
  int n = poly.n;
  std::vector<long double> coeff(n, 0.0L);
  for (int k = 0; k <= n - 1; ++k) {
    // binomials C(k, j)
    long double binom = 1.0L;
    for (int j = 0; j <= k; ++j) {
      // x1 exponent 2(n-k-1) + 2j = 2l -> l = n-k-1+j
      coeff[n - k - 1 + j] += static_cast<long double>(poly.a[k]) * binom;
      binom = binom * (k - j) / (j + 1);
    }
  }
  return {coeff.begin(), coeff.end()};
}

}  // namespace

TEST_CASE("kernel_component direct values and symmetry") {
  KernelParams p11(1.0, 1, 2);
  CHECK(kernel_component(p11, 0, std::vector<double>{3, 4}) == doctest::Approx(0.12));

  for (int n : {1, 2, 3}) {
    KernelParams p(0.7, n, 3);
    CHECK(kernel_component(p, 1, std::vector<double>{0, 1, 0}) == doctest::Approx(1.0));
  }
  CHECK_THROWS_AS(kernel_component(p11, 0, std::vector<double>{0, 0}), SingularPoint);

  SplitMix64 g(21);
  for (int i = 0; i < 300; ++i) {
    int d = 2 + static_cast<int>(g.next() % 3);
    KernelParams p(0.25 + 0.75 * g.uniform(), 1 + static_cast<int>(g.next() % 3), d);
    Point x = ball_point(g, d);
    if (norm(x) < 1e-6) continue;
    Point neg(x);
    for (double& c : neg) c = -c;
    for (int ax = 0; ax < d; ++ax) {
      double v = kernel_component(p, ax, x);
      CHECK(kernel_component(p, ax, neg) == doctest::Approx(-v).epsilon(1e-12));
      // |K_i(x)| <= |x|^{-alpha}
      CHECK(std::abs(v) <= std::pow(norm(x), -p.alpha) * (1 + 1e-12));
    }
  }
}

TEST_CASE("kernel_vector values and homogeneity") {
  KernelParams p(1.0, 1, 2);
  std::vector<double> out(2);
  kernel_vector(p, std::vector<double>{1, 0}, out);
  CHECK(out[0] == doctest::Approx(1.0));
  CHECK(out[1] == doctest::Approx(0.0));
  kernel_vector(p, std::vector<double>{1, 1}, out);
  CHECK(out[0] == doctest::Approx(0.5));
  CHECK(out[1] == doctest::Approx(0.5));

  SplitMix64 g(22);
  for (int i = 0; i < 300; ++i) {
    KernelParams q(0.25 + 0.75 * g.uniform(), 1 + static_cast<int>(g.next() % 3), 2);
    Point x = ball_point(g, 2);
    if (norm(x) < 1e-3) continue;
    double lam = 0.5 + 3.0 * g.uniform();
    std::vector<double> kx(2), kl(2);
    kernel_vector(q, x, kx);
    Point xl(x);
    for (double& c : xl) c *= lam;
    kernel_vector(q, xl, kl);
    double scale = std::pow(lam, -q.alpha);
    CHECK(kl[0] == doctest::Approx(kx[0] * scale).epsilon(1e-12));
    CHECK(kl[1] == doctest::Approx(kx[1] * scale).epsilon(1e-12));
  }
}

TEST_CASE("fourier_poly_coeffs: n=1 closed form, negativity, expansion oracle") {
  FourierPoly p1 = fourier_poly_coeffs(1, 0.5);
  CHECK(p1.a[0] == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(p1.b[0] == doctest::Approx(-0.5).epsilon(1e-15));

  for (double alpha : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    FourierPoly p2 = fourier_poly_coeffs(2, alpha);
    CHECK(p2.b[0] < 0.0);
    CHECK(p2.b[1] < 0.0);
  }

  // b coefficients match the brute-force binomial expansion.
  for (int n = 1; n <= 8; ++n) {
    for (double alpha : {0.05, 0.25, 0.5, 0.75, 0.95}) {
      FourierPoly poly = fourier_poly_coeffs(n, alpha);
      std::vector<double> expanded = expand_poly(poly);
      for (int l = 0; l <= n - 1; ++l) {
        CHECK(poly.b[l] == doctest::Approx(expanded[l]).epsilon(1e-12));
        CHECK(poly.b[l] < 0.0);
      }
    }
  }

  CHECK_THROWS_AS(fourier_poly_coeffs(1, 1.0), ValidationError);
  CHECK_THROWS_AS(fourier_poly_coeffs(0, 0.5), ValidationError);
}

TEST_CASE("coefficient identity residual") {
  // n=1, l=0: both sides are -(1-alpha)/2^{n-1}.
  CHECK(coeff_identity_residual(1, 0, 0.5) == doctest::Approx(0.0).epsilon(1e-15));

  // n=2, l=1, alpha=1/2: both sides equal -alpha(1-alpha)/6 = -1/24.
  CHECK(coeff_identity_rhs_magnitude(2, 1, 0.5) == doctest::Approx(1.0 / 24).epsilon(1e-15));
  CHECK(std::abs(coeff_identity_residual(2, 1, 0.5)) <= 1e-16);

  double r = coeff_identity_residual(6, 3, 0.9);
  CHECK(std::abs(r) <= 1e-12 * coeff_identity_rhs_magnitude(6, 3, 0.9));

  CHECK_THROWS_AS(coeff_identity_residual(3, 3, 0.5), ValidationError);
  CHECK_THROWS_AS(coeff_identity_residual(3, 1, 1.5), ValidationError);
}

TEST_CASE("alpha = 1 allowed in params, rejected by the Fourier polynomial") {
  CHECK_NOTHROW(KernelParams(1.0, 3, 2));
  CHECK_THROWS_AS(KernelParams(1.5, 1, 2), ValidationError);
  CHECK_THROWS_AS(KernelParams(0.5, 1, 1), ValidationError);
}
