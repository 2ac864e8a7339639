#include "capflow/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "capflow/errors.hpp"
#include "capflow/symmetrization.hpp"

namespace capflow {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

DiscreteMeasure::DiscreteMeasure(int d, std::vector<double> packed_coords,
                                 std::vector<double> masses)
    : d_(d), coords_(std::move(packed_coords)), masses_(std::move(masses)) {
  if (d_ < 2) throw ValidationError("measure dimension must be >= 2");
  if (coords_.size() != masses_.size() * static_cast<std::size_t>(d_)) {
    throw ValidationError("coordinate/mass length mismatch");
  }
  for (double c : coords_) {
    if (!std::isfinite(c)) throw ValidationError("non-finite atom coordinate");
  }
  KahanSum total;
  for (double m : masses_) {
    if (!(m >= 0.0) || !std::isfinite(m)) {
      throw ValidationError("masses must be finite and nonnegative");
    }
    total.add(m);
  }
  total_ = total.sum;

  // Pairwise-distinct atoms, checked by lexicographic sort.
  const int n = size();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int i, int j) {
    return std::lexicographical_compare(atom(i).begin(), atom(i).end(),
                                        atom(j).begin(), atom(j).end());
  });
  for (int k = 1; k < n; ++k) {
    auto a = atom(order[k - 1]);
    auto b = atom(order[k]);
    if (std::equal(a.begin(), a.end(), b.begin())) {
      throw ValidationError("atoms must be pairwise distinct");
    }
  }
}

DiscreteMeasure DiscreteMeasure::from_points(const std::vector<Point>& atoms,
                                             const std::vector<double>& masses) {
  if (atoms.size() != masses.size()) {
    throw ValidationError("atom/mass count mismatch");
  }
  int d = atoms.empty() ? 2 : static_cast<int>(atoms.front().size());
  std::vector<double> packed;
  packed.reserve(atoms.size() * d);
  for (const Point& p : atoms) {
    if (static_cast<int>(p.size()) != d) {
      throw ValidationError("atoms must share a dimension");
    }
    packed.insert(packed.end(), p.begin(), p.end());
  }
  return DiscreteMeasure(d, std::move(packed), masses);
}

DiscreteMeasure DiscreteMeasure::restricted_to_ball(std::span<const double> center,
                                                    double radius) const {
  std::vector<double> coords, masses;
  for (int i = 0; i < size(); ++i) {
    if (dist(atom(i), center) <= radius) {
      auto a = atom(i);
      coords.insert(coords.end(), a.begin(), a.end());
      masses.push_back(mass(i));
    }
  }
  return DiscreteMeasure(d_, std::move(coords), std::move(masses));
}

DiscreteMeasure DiscreteMeasure::scaled_by(double factor) const {
  std::vector<double> coords(coords_);
  for (double& c : coords) c *= factor;
  return DiscreteMeasure(d_, std::move(coords), masses_);
}

WolffParams::WolffParams(double s_, double p_) : s(s_), p(p_) {
  if (!(s > 0.0)) throw ValidationError("s must be positive");
  if (!(p > 1.0)) throw ValidationError("p must exceed 1");
  if (!(s * p > 0.0 && s * p <= 2.0)) {
    throw ValidationError("need 0 < s p <= 2");
  }
}

double ball_mass(const DiscreteMeasure& mu, std::span<const double> x, double r) {
  if (r < 0.0) throw ValidationError("radius must be nonnegative");
  KahanSum acc;
  for (int i = 0; i < mu.size(); ++i) {
    if (dist(mu.atom(i), x) <= r) acc.add(mu.mass(i));
  }
  return acc.sum;
}

namespace {

// Sorted distinct distances with cumulative masses, optionally dropping
// atoms exactly at x. Returns true if an unexcluded positive mass sits at
// distance zero (the potential diverges there).
struct RadialProfile {
  std::vector<double> radii;
  std::vector<double> cumulative;
  bool mass_at_center = false;
};

RadialProfile radial_profile(const DiscreteMeasure& mu, std::span<const double> x,
                             bool exclude_self) {
  std::vector<std::pair<double, double>> dm;
  dm.reserve(mu.size());
  RadialProfile prof;
  for (int i = 0; i < mu.size(); ++i) {
    double r = dist(mu.atom(i), x);
    if (r == 0.0) {
      if (!exclude_self && mu.mass(i) > 0.0) prof.mass_at_center = true;
      continue;  // zero-radius atoms contribute no finite shell either way
    }
    if (mu.mass(i) > 0.0) dm.emplace_back(r, mu.mass(i));
  }
  std::sort(dm.begin(), dm.end());
  KahanSum cum;
  for (std::size_t i = 0; i < dm.size(); ++i) {
    cum.add(dm[i].second);
    if (!prof.radii.empty() && dm[i].first == prof.radii.back()) {
      prof.cumulative.back() = cum.sum;
    } else {
      prof.radii.push_back(dm[i].first);
      prof.cumulative.push_back(cum.sum);
    }
  }
  return prof;
}

}  // namespace

double maximal_growth(const DiscreteMeasure& mu, std::span<const double> x,
                      double alpha, bool exclude_self) {
  if (!(alpha > 0.0 && alpha < 2.0)) {
    throw ValidationError("growth exponent must lie in (0, 2)");
  }
  RadialProfile prof = radial_profile(mu, x, exclude_self);
  if (prof.mass_at_center) return kInf;
  double best = 0.0;
  for (std::size_t i = 0; i < prof.radii.size(); ++i) {
    best = std::max(best, prof.cumulative[i] / std::pow(prof.radii[i], alpha));
  }
  return best;
}

double wolff_potential(const DiscreteMeasure& mu, std::span<const double> x,
                       const WolffParams& wp, bool exclude_self) {
  double g = wp.gamma();
  if (!(g > 0.0)) throw ValidationError("wolff exponent gamma = 2 - s p must be positive");
  double qm1 = wp.q_minus_1();
  RadialProfile prof = radial_profile(mu, x, exclude_self);
  if (prof.mass_at_center) return kInf;
  const double e = g * qm1;
  KahanSum acc;
  const std::size_t K = prof.radii.size();
  for (std::size_t i = 0; i < K; ++i) {
    double lo = std::pow(prof.radii[i], -e);
    double hi = (i + 1 < K) ? std::pow(prof.radii[i + 1], -e) : 0.0;
    acc.add(std::pow(prof.cumulative[i], qm1) * (lo - hi) / e);
  }
  return acc.sum;
}

double wolff_energy(const DiscreteMeasure& mu, const WolffParams& wp,
                    int partition_count) {
  // Validate gamma once even for empty measures.
  if (!(wp.gamma() > 0.0)) {
    throw ValidationError("wolff exponent gamma = 2 - s p must be positive");
  }
  return partitioned_sum(mu.size(), partition_count, [&](std::int64_t j) {
    if (mu.mass(j) == 0.0) return 0.0;
    return mu.mass(j) * wolff_potential(mu, mu.atom(j), wp, /*exclude_self=*/true);
  });
}

namespace {

// Pairwise difference table for the triple sums: for i < j stores the
// difference vector atom(j) - atom(i) and |diff|^{N+alpha}.
struct PairTable {
  int n = 0;
  int d = 2;
  std::vector<double> diff;  // pair-major, d components each
  std::vector<double> pw;    // |diff|^{N+alpha}

  std::size_t index(int i, int j) const {  // requires i < j
    return static_cast<std::size_t>(i) * n - static_cast<std::size_t>(i) * (i + 1) / 2 +
           (j - i - 1);
  }
};

PairTable build_pair_table(const DiscreteMeasure& mu, double exponent) {
  PairTable tab;
  tab.n = mu.size();
  tab.d = mu.dim();
  std::size_t pairs = static_cast<std::size_t>(tab.n) * (tab.n - 1) / 2;
  tab.diff.resize(pairs * tab.d);
  tab.pw.resize(pairs);
  parallel_for(tab.n, [&](std::int64_t i) {
    for (int j = static_cast<int>(i) + 1; j < tab.n; ++j) {
      std::size_t idx = tab.index(static_cast<int>(i), j);
      double r2 = 0.0;
      for (int c = 0; c < tab.d; ++c) {
        double v = mu.atom(j)[c] - mu.atom(static_cast<int>(i))[c];
        tab.diff[idx * tab.d + c] = v;
        r2 += v * v;
      }
      tab.pw[idx] = std::pow(std::sqrt(r2), exponent);
    }
  });
  return tab;
}

}  // namespace

double perm_triple_sum(const DiscreteMeasure& mu, const KernelParams& params,
                       int partition_count) {
  const int n = mu.size();
  if (n < 3) return 0.0;
  if (mu.dim() != params.d) {
    throw DimensionMismatch("measure dimension does not match kernel params");
  }
  const int N = params.odd_exponent();
  const int d = params.d;
  PairTable tab = build_pair_table(mu, N + params.alpha);

  // Lexicographic order over unordered triples (i < j < k), partitioned by
  // the leading index; 6x symmetry factor restores the ordered sum.
  double unordered = partitioned_sum(n, partition_count, [&](std::int64_t li) {
    int i = static_cast<int>(li);
    KahanSum acc;
    for (int j = i + 1; j < n; ++j) {
      std::size_t ij = tab.index(i, j);
      double mij = mu.mass(i) * mu.mass(j);
      if (mij == 0.0) continue;
      const double* a = &tab.diff[ij * d];
      double pa = tab.pw[ij];
      for (int k = j + 1; k < n; ++k) {
        std::size_t jk = tab.index(j, k);
        std::size_t ik = tab.index(i, k);
        const double* b = &tab.diff[jk * d];
        const double* s = &tab.diff[ik * d];
        double pb = tab.pw[jk];
        double ps = tab.pw[ik];
        double p = 0.0;
        for (int c = 0; c < d; ++c) {
          p += perm_component_core(a[c], b[c], s[c], pa, pb, ps, N).value;
        }
        acc.add(p * mij * mu.mass(k));
      }
    }
    return acc.sum;
  });
  return 6.0 * unordered;
}

double perm_potential_sq(const DiscreteMeasure& mu, std::span<const double> x,
                         const KernelParams& params, int partition_count) {
  if (mu.dim() != params.d || static_cast<int>(x.size()) != params.d) {
    throw DimensionMismatch("dimension mismatch in permutation potential");
  }
  const int d = params.d;
  const int N = params.odd_exponent();
  const double e = N + params.alpha;

  // Atoms distinct from x, with differences relative to x precomputed.
  std::vector<int> idx;
  idx.reserve(mu.size());
  for (int i = 0; i < mu.size(); ++i) {
    auto a = mu.atom(i);
    if (!std::equal(a.begin(), a.end(), x.begin())) idx.push_back(i);
  }
  const int m = static_cast<int>(idx.size());
  if (m < 2) return 0.0;

  std::vector<double> rel(static_cast<std::size_t>(m) * d);
  std::vector<double> relp(m);
  for (int i = 0; i < m; ++i) {
    double r2 = 0.0;
    for (int c = 0; c < d; ++c) {
      double v = mu.atom(idx[i])[c] - x[c];
      rel[static_cast<std::size_t>(i) * d + c] = v;
      r2 += v * v;
    }
    relp[i] = std::pow(std::sqrt(r2), e);
  }

  // Unordered pairs (y, z); ordered sum is twice the unordered one.
  double unordered = partitioned_sum(m, partition_count, [&](std::int64_t li) {
    int i = static_cast<int>(li);
    const double* a = &rel[static_cast<std::size_t>(i) * d];  // y - x
    double pa = relp[i];
    KahanSum acc;
    std::vector<double> b(d);  // z - y
    for (int j = i + 1; j < m; ++j) {
      const double* s = &rel[static_cast<std::size_t>(j) * d];  // z - x
      double ps = relp[j];
      double r2 = 0.0;
      for (int c = 0; c < d; ++c) {
        b[c] = s[c] - a[c];
        r2 += b[c] * b[c];
      }
      double pb = std::pow(std::sqrt(r2), e);
      double p = 0.0;
      for (int c = 0; c < d; ++c) {
        p += perm_component_core(a[c], b[c], s[c], pa, pb, ps, N).value;
      }
      acc.add(p * mu.mass(idx[i]) * mu.mass(idx[j]));
    }
    return acc.sum;
  });
  return 2.0 * unordered;
}

double sym_energy(const DiscreteMeasure& mu, const KernelParams& params,
                  int partition_count) {
  if (mu.size() == 0) return 0.0;
  double growth = partitioned_sum(mu.size(), partition_count, [&](std::int64_t j) {
    if (mu.mass(j) == 0.0) return 0.0;
    return mu.mass(j) *
           maximal_growth(mu, mu.atom(j), params.alpha, /*exclude_self=*/true);
  });
  return growth + perm_triple_sum(mu, params, partition_count);
}

double triple_perm_energy(const DiscreteMeasure& mu, int n, int partition_count) {
  if (mu.size() < 3) return 0.0;
  KernelParams params(1.0, n, mu.dim());
  return perm_triple_sum(mu, params, partition_count);
}

GrowthReport linear_growth_check(const DiscreteMeasure& mu, int n,
                                 const std::vector<GrowthBall>& balls,
                                 int partition_count) {
  GrowthReport rep;
  rep.ratios.reserve(balls.size());
  for (const GrowthBall& ball : balls) {
    if (!(ball.radius > 0.0)) throw ValidationError("ball radius must be positive");
    DiscreteMeasure restricted = mu.restricted_to_ball(ball.center, ball.radius);
    double ratio = triple_perm_energy(restricted, n, partition_count) / (2.0 * ball.radius);
    rep.ratios.push_back(ratio);
    rep.max_ratio = std::max(rep.max_ratio, ratio);
  }
  return rep;
}

}  // namespace capflow
