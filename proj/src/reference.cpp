#include "capflow/reference.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "capflow/errors.hpp"

namespace capflow::reference {

double heron_area(const Triple& t) {
  double a = dist(t.y, t.z);
  double b = dist(t.x, t.z);
  double c = dist(t.x, t.y);
  // Kahan: sort a >= b >= c, then group the factors so nothing large is
  // subtracted from anything small.
  if (a < b) std::swap(a, b);
  if (a < c) std::swap(a, c);
  if (b < c) std::swap(b, c);
  double f = (a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c));
  return 0.25 * std::sqrt(std::max(f, 0.0));
}

double perm_component_direct(const KernelParams& params, int axis, const Triple& t) {
  detail::require_distinct(t);
  const int d = params.d;
  std::vector<double> v(d);
  auto K = [&](const Point& from, const Point& to) {
    for (int c = 0; c < d; ++c) v[c] = from[c] - to[c];
    return kernel_component(params, axis, v);
  };
  return K(t.x, t.y) * K(t.x, t.z) + K(t.y, t.x) * K(t.y, t.z) +
         K(t.z, t.x) * K(t.z, t.y);
}

double perm_total_direct(const KernelParams& params, const Triple& t) {
  double sum = 0.0;
  for (int i = 0; i < params.d; ++i) sum += perm_component_direct(params, i, t);
  return sum;
}

double triple_perm_energy_naive(const DiscreteMeasure& mu, int n) {
  const int m = mu.size();
  if (m < 3) return 0.0;
  KernelParams params(1.0, n, mu.dim());
  double sum = 0.0;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (j == i) continue;
      for (int k = 0; k < m; ++k) {
        if (k == i || k == j) continue;
        Triple t{Point(mu.atom(i).begin(), mu.atom(i).end()),
                 Point(mu.atom(j).begin(), mu.atom(j).end()),
                 Point(mu.atom(k).begin(), mu.atom(k).end())};
        sum += perm_total_direct(params, t) * mu.mass(i) * mu.mass(j) * mu.mass(k);
      }
    }
  }
  return sum;
}

double perm_potential_sq_naive(const DiscreteMeasure& mu, std::span<const double> x,
                               const KernelParams& params) {
  const int m = mu.size();
  Point px(x.begin(), x.end());
  double sum = 0.0;
  for (int i = 0; i < m; ++i) {
    Point pi(mu.atom(i).begin(), mu.atom(i).end());
    if (pi == px) continue;
    for (int j = 0; j < m; ++j) {
      if (j == i) continue;
      Point pj(mu.atom(j).begin(), mu.atom(j).end());
      if (pj == px) continue;
      Triple t{px, pi, pj};
      sum += perm_total_direct(params, t) * mu.mass(i) * mu.mass(j);
    }
  }
  return sum;
}

double maximal_growth_scan(const DiscreteMeasure& mu, std::span<const double> x,
                           double alpha, bool exclude_self) {
  double best = 0.0;
  for (int i = 0; i < mu.size(); ++i) {
    double r = dist(mu.atom(i), x);
    if (r == 0.0) {
      if (!exclude_self && mu.mass(i) > 0.0) {
        return std::numeric_limits<double>::infinity();
      }
      continue;
    }
    double bm = ball_mass(mu, x, r);
    if (exclude_self) bm -= ball_mass(mu, x, 0.0);
    best = std::max(best, bm / std::pow(r, alpha));
  }
  return best;
}

double sym_energy_naive(const DiscreteMeasure& mu, const KernelParams& params) {
  double total = 0.0;
  for (int j = 0; j < mu.size(); ++j) {
    if (mu.mass(j) == 0.0) continue;
    double growth = maximal_growth_scan(mu, mu.atom(j), params.alpha, true);
    double psq = perm_potential_sq_naive(mu, mu.atom(j), params);
    total += mu.mass(j) * (growth + psq);
  }
  return total;
}

namespace {

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double fa, double fm, double fb, double whole, double tol,
                        int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m);
  double rm = 0.5 * (m + b);
  double flm = f(lm);
  double frm = f(rm);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
  double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

}  // namespace

double wolff_potential_quadrature(const DiscreteMeasure& mu, std::span<const double> x,
                                  const WolffParams& wp, bool exclude_self,
                                  double rel_tol) {
  double g = wp.gamma();
  if (!(g > 0.0)) throw ValidationError("gamma must be positive");
  double qm1 = wp.q_minus_1();

  std::vector<double> radii;
  for (int i = 0; i < mu.size(); ++i) {
    double r = dist(mu.atom(i), x);
    if (r == 0.0) {
      if (!exclude_self && mu.mass(i) > 0.0) {
        return std::numeric_limits<double>::infinity();
      }
      continue;
    }
    if (mu.mass(i) > 0.0) radii.push_back(r);
  }
  if (radii.empty()) return 0.0;
  std::sort(radii.begin(), radii.end());
  radii.erase(std::unique(radii.begin(), radii.end()), radii.end());

  // Substitute r = e^v: integral of (mu(B(x, e^v)) e^{-g v})^{q-1} dv over
  // pieces between atom radii, plus an exponentially truncated tail.
  auto integrand = [&](double v) {
    double r = std::exp(v);
    double bm = ball_mass(mu, x, r);
    if (exclude_self) bm -= ball_mass(mu, x, 0.0);
    if (bm <= 0.0) return 0.0;
    return std::pow(bm / std::pow(r, g), qm1);
  };

  double e = g * qm1;
  double scale_guess = std::pow(ball_mass(mu, x, radii.back()), qm1) *
                       std::pow(radii.front(), -e);
  double tol = rel_tol * std::max(scale_guess, 1e-300);

  double total = 0.0;
  for (std::size_t i = 0; i + 1 < radii.size(); ++i) {
    // Open the interval a hair: the integrand is right-continuous at atom
    // radii, and Simpson endpoints must sample the interior value.
    double lo = std::log(radii[i]);
    double hi = std::log(radii[i + 1]);
    double eps = (hi - lo) * 1e-12;
    total += integrate(integrand, lo + eps, hi - eps, tol);
  }
  double lo = std::log(radii.back());
  double hi = lo + 60.0 / e;  // tail truncated at e^{-60} relative
  total += integrate(integrand, lo + 1e-12, hi, tol);
  return total;
}

double wolff_energy_naive(const DiscreteMeasure& mu, const WolffParams& wp) {
  double total = 0.0;
  for (int j = 0; j < mu.size(); ++j) {
    if (mu.mass(j) == 0.0) continue;
    total += mu.mass(j) * wolff_potential_quadrature(mu, mu.atom(j), wp, true);
  }
  return total;
}

}  // namespace capflow::reference
