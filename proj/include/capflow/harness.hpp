#pragma once

// Monte-Carlo harness for the two-sided permutation bounds, the alpha = 1
// positivity, and the curvature-domination floor. Each sampled triple gets
// its own RNG stream from (seed, index), so results are independent of
// thread scheduling.

#include <cstdint>

#include "capflow/kernels.hpp"
#include "capflow/parallel.hpp"

namespace capflow {

struct HarnessConfig {
  double alpha = 1.0;
  int n = 1;
  int d = 2;
  std::int64_t samples = 10000;
  std::uint64_t seed = 1;
  double theta0 = 0.3;  // angle-condition threshold, radians
  int partition_count = kDefaultPartitionCount;
};

struct HarnessResult {
  // Envelopes over (sample, axis) pairs.
  double lower_ratio_min = 0.0;  // empirical A in p_i >= A M_i^{2n}/L^{2al+2n}
  double lower_ratio_max = 0.0;
  double upper_ratio_min = 0.0;  // empirical B in p_i <= B/L^{2al}
  double upper_ratio_max = 0.0;
  // Envelope of p L^{2al} (summed over axes) per triple.
  double total_scaled_min = 0.0;
  double total_scaled_max = 0.0;
  // Count of p_i < -1e-12 * term scale.
  std::int64_t sign_violations = 0;
  // Per-axis sign summary for 0 < alpha < 1 (recorded, not asserted).
  std::int64_t negative_components = 0;
  std::int64_t component_count = 0;
  // alpha = 1 only: min over axes j passing the angle condition of
  // (sum_{i != j} p_i) / c^2, and how many (sample, j) pairs contributed.
  double curvature_ratio_min = 0.0;
  std::int64_t curvature_samples = 0;
};

HarnessResult run_perm_harness(const HarnessConfig& cfg);

}  // namespace capflow
