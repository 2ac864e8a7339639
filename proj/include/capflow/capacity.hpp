#pragma once

// Capacity estimators: the positive-measure capacity by linear programming
// against a sup-norm constraint grid, the Riesz capacity through Wolff
// energies, the energy-dual estimate through the symmetrization energy,
// and the comparability experiment tying them together.

#include <cstdint>
#include <string>
#include <vector>

#include "capflow/kernels.hpp"
#include "capflow/measures.hpp"
#include "capflow/optimize.hpp"
#include "capflow/parallel.hpp"
#include "capflow/sets.hpp"

namespace capflow {

struct LPConfig {
  double h = 0.0;                  // constraint grid spacing; <= 0 picks extent/16
  double separation_factor = 0.5;  // delta = factor * h
  double feasibility_tol = 1e-7;
  double optimality_tol = 1e-7;
  int max_rounds = 30;             // constraint-generation rounds
  int max_added_per_round = 256;
};

enum class EstimatorMethod { lp, wolff_energy, sym_energy };

std::string estimator_method_name(EstimatorMethod m);

struct CapacityDiagnostics {
  int iterations = 0;
  int constraint_count = 0;
  double max_violation = 0.0;
  std::string status = "unknown";
  bool success = false;
  double objective = 0.0;  // optimized energy for the energy methods
  int support_size = 0;
  std::string note;
};

struct CapacityEstimate {
  double value = 0.0;
  EstimatorMethod method = EstimatorMethod::lp;
  CapacityDiagnostics diagnostics;
  std::vector<double> masses;  // optimal masses on the support (or subsample)
};

// Maximize total mass subject to the vector potential lying in the unit
// sup-norm ball, enforced on a grid with spacing cfg.h over the 2L-padded
// bounding box, excluding points within delta of the support.
CapacityEstimate gamma_plus_lp(const PointCloud& support, const KernelParams& params,
                               const LPConfig& cfg);

struct EnergyOptConfig {
  int opt_steps = 400;
  int random_starts = 4;
  std::uint64_t seed = 1;
  int subsample_cap = 320;  // triple-sum support cap for the sym energy
  int partition_count = kDefaultPartitionCount;
};

// sup over probability measures of 1/E_{s,p}^(p-1), located at the interior
// equilibrium of the leave-one-out Wolff energy.
CapacityEstimate riesz_capacity_wolff(const PointCloud& support, const WolffParams& wp,
                                      const EnergyOptConfig& cfg);

// sup over probability measures of 1/E_{alpha,n}, same optimizer over the
// symmetrization energy.
CapacityEstimate gamma_plus_energy(const PointCloud& support, const KernelParams& params,
                                   const EnergyOptConfig& cfg);

struct ExperimentRow {
  std::string set_name;
  int generation = 0;
  double alpha = 0.0;
  int n = 0;
  CapacityEstimate lp;
  CapacityEstimate energy;
  CapacityEstimate wolff;
  double ratio_lp_wolff = 0.0;
  double ratio_energy_wolff = 0.0;
  std::string status;  // "ok" or semicolon-joined failures
  bool ok = false;
};

struct NamedCloud {
  std::string name;
  int generation = 0;
  PointCloud cloud;
};

// For matching alpha, the Riesz pairing is s = 2(2-alpha)/3, p = 3/2.
WolffParams wolff_params_for_alpha(double alpha);

std::vector<ExperimentRow> comparability_experiment(
    const std::vector<NamedCloud>& sets, const std::vector<double>& alphas,
    const std::vector<int>& ns, const LPConfig& lp_cfg, const EnergyOptConfig& opt_cfg);

inline constexpr const char* kCompareCsvHeader =
    "set,generation,alpha,n,gamma_lp,gamma_energy,riesz_wolff,ratio_lp_wolff,"
    "ratio_energy_wolff,status";

std::string experiment_csv(const std::vector<ExperimentRow>& rows);

}  // namespace capflow
