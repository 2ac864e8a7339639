#pragma once

// Multiplicative-weights search on the probability simplex for the energy
// objectives. Mass updates m_j <- m_j exp(eta (g_j - <g,m>)), renormalized;
// eta is halved whenever a step would worsen the objective, and the run
// stops on a relative-change plateau. Multi-start (uniform plus seeded
// random starts) with the best converged run reported.
//
// The discrete leave-one-out energies vanish at the simplex corners and
// are positive inside, so the equilibrium profile (equalized marginal
// energies) is an interior maximum; the iteration climbs to it.

#include <cstdint>
#include <span>
#include <vector>

namespace capflow {

struct SimplexObjective {
  virtual ~SimplexObjective() = default;
  virtual int size() const = 0;
  // Returns E(m) and fills grad with dE/dm.
  virtual double eval(std::span<const double> m, std::span<double> grad) = 0;
};

struct OptimizerConfig {
  int max_steps = 400;
  double eta0 = 0.5;
  double rel_tol = 1e-6;
  int random_starts = 4;
  std::uint64_t seed = 1;
};

struct OptResult {
  std::vector<double> masses;
  double objective = 0.0;
  int iterations = 0;      // total accepted + rejected steps over all starts
  bool converged = false;  // at least one start hit the plateau tolerance
  int converged_starts = 0;
  double spread = 0.0;  // relative spread of converged start objectives
};

OptResult maximize_on_simplex(SimplexObjective& objective, const OptimizerConfig& cfg);

}  // namespace capflow
