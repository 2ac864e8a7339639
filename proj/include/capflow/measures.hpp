#pragma once

// Discrete positive measures and their potentials and energies: ball
// masses, the growth maximal function, Wolff potential/energy in closed
// form, the squared permutation potential, the combined symmetrization
// energy, and the triple permutation energy.
//
// Self-interaction convention: every energy excludes the diagonal. The
// Wolff potential or maximal function evaluated at an atom uses the
// measure minus the atoms sitting at that exact location. Infinite values
// are returned as +inf, never thrown.

#include <cstdint>
#include <span>
#include <vector>

#include "capflow/geometry.hpp"
#include "capflow/kernels.hpp"
#include "capflow/parallel.hpp"

namespace capflow {

class DiscreteMeasure {
 public:
  DiscreteMeasure() : d_(2) {}
  DiscreteMeasure(int d, std::vector<double> packed_coords, std::vector<double> masses);

  static DiscreteMeasure from_points(const std::vector<Point>& atoms,
                                     const std::vector<double>& masses);

  int dim() const { return d_; }
  int size() const { return static_cast<int>(masses_.size()); }
  std::span<const double> atom(int i) const {
    return {coords_.data() + static_cast<std::size_t>(i) * d_, static_cast<std::size_t>(d_)};
  }
  double mass(int i) const { return masses_[i]; }
  double total_mass() const { return total_; }
  const std::vector<double>& masses() const { return masses_; }
  const std::vector<double>& packed_coords() const { return coords_; }

  DiscreteMeasure restricted_to_ball(std::span<const double> center, double radius) const;
  DiscreteMeasure scaled_by(double factor) const;  // dilation of atom positions

 private:
  int d_;
  std::vector<double> coords_;
  std::vector<double> masses_;
  double total_ = 0.0;
};

struct WolffParams {
  double s;
  double p;

  WolffParams(double s_, double p_);

  double q_minus_1() const { return 1.0 / (p - 1.0); }
  double gamma() const { return 2.0 - s * p; }
};

// Mass of the closed ball B(x, r).
double ball_mass(const DiscreteMeasure& mu, std::span<const double> x, double r);

// sup_{r>0} mu(B(x,r))/r^alpha, attained at an atom distance; +inf when x
// sits on an unexcluded atom of positive mass.
double maximal_growth(const DiscreteMeasure& mu, std::span<const double> x,
                      double alpha, bool exclude_self);

// Closed-form Wolff potential: with sorted distinct atom distances r_1 <=
// ... <= r_K and cumulative masses M_i,
//   W = sum_i M_i^{q-1} (r_i^{-g(q-1)} - r_{i+1}^{-g(q-1)}) / (g(q-1)),
// r_{K+1} = inf, g = 2 - s p.
double wolff_potential(const DiscreteMeasure& mu, std::span<const double> x,
                       const WolffParams& wp, bool exclude_self);

// E = sum_j m_j W^{mu minus atom j}(atom j).
double wolff_energy(const DiscreteMeasure& mu, const WolffParams& wp,
                    int partition_count = kDefaultPartitionCount);

// p^2(mu)(x): double sum over ordered atom pairs (y, z), y != z, both
// distinct from x, of p(x,y,z) m(y) m(z).
double perm_potential_sq(const DiscreteMeasure& mu, std::span<const double> x,
                         const KernelParams& params,
                         int partition_count = kDefaultPartitionCount);

// Energy of U(x) = M_alpha(x) + p^2(mu)(x):
//   E = sum_j m_j (M_alpha^{mu minus atom j}(atom j) + p^2(mu)(atom j)).
double sym_energy(const DiscreteMeasure& mu, const KernelParams& params,
                  int partition_count = kDefaultPartitionCount);

// Triple permutation energy at alpha = 1: sum over ordered distinct atom
// triples of p(x,y,z) m(x) m(y) m(z). Nonnegative; zero on collinear
// supports.
double triple_perm_energy(const DiscreteMeasure& mu, int n,
                          int partition_count = kDefaultPartitionCount);

// Sum over ordered distinct atom triples of p m m m for general params;
// the permutation part shared by sym_energy and triple_perm_energy.
double perm_triple_sum(const DiscreteMeasure& mu, const KernelParams& params,
                       int partition_count = kDefaultPartitionCount);

struct GrowthBall {
  Point center;
  double radius;
};

struct GrowthReport {
  std::vector<double> ratios;  // p(mu restricted to B) / diam(B) per ball
  double max_ratio = 0.0;      // empirical linear-growth constant
};

GrowthReport linear_growth_check(const DiscreteMeasure& mu, int n,
                                 const std::vector<GrowthBall>& balls,
                                 int partition_count = kDefaultPartitionCount);

}  // namespace capflow
