#pragma once

// Serial reference implementations. These follow the defining formulas as
// directly as possible (plain loops, no difference-variable sharing, no
// pair tables) and stay independent of the production code paths, so tests
// can use them as oracles and the benchmark can compare against them.

#include "capflow/geometry.hpp"
#include "capflow/kernels.hpp"
#include "capflow/measures.hpp"

namespace capflow::reference {

// Heron's formula, Kahan's numerically stable arrangement of it.
double heron_area(const Triple& t);

// p_i via three literal kernel products K_i(x-y)K_i(x-z) + ...
double perm_component_direct(const KernelParams& params, int axis, const Triple& t);
double perm_total_direct(const KernelParams& params, const Triple& t);

// Triple energy as a literal loop over ordered distinct index triples.
double triple_perm_energy_naive(const DiscreteMeasure& mu, int n);

// p^2(mu)(x) as a literal double loop over ordered pairs.
double perm_potential_sq_naive(const DiscreteMeasure& mu, std::span<const double> x,
                               const KernelParams& params);

// Growth maximal function through ball_mass at every atom distance.
double maximal_growth_scan(const DiscreteMeasure& mu, std::span<const double> x,
                           double alpha, bool exclude_self);

// Symmetrization energy assembled from the naive ingredients.
double sym_energy_naive(const DiscreteMeasure& mu, const KernelParams& params);

// Wolff potential by adaptive quadrature of the defining radial integral
// (log substitution, truncated tail). rel_tol bounds the quadrature error.
double wolff_potential_quadrature(const DiscreteMeasure& mu, std::span<const double> x,
                                  const WolffParams& wp, bool exclude_self,
                                  double rel_tol = 1e-9);

double wolff_energy_naive(const DiscreteMeasure& mu, const WolffParams& wp);

}  // namespace capflow::reference
