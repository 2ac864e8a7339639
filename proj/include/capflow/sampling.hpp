#pragma once

// Triple samplers for the Monte-Carlo harnesses. The generic sampler draws
// from the unit ball and rejects triples that would sink into float noise:
// tiny pairwise separations, extreme aspect ratios, or near-collinear
// flatness. Degenerate regimes get their own stratified generators so the
// vanishing tests exercise them deliberately rather than by luck.

#include "capflow/geometry.hpp"
#include "capflow/rng.hpp"

namespace capflow {

struct TripleSampleConfig {
  int d = 2;
  double min_separation = 1e-3;  // reject min pairwise distance below this
  double max_aspect = 1e3;       // reject L / shortest side above this
  double min_flatness = 1e-3;    // reject 4 area / L^2 below this
};

Point ball_point(SplitMix64& g, int d);

Triple random_triple(SplitMix64& g, const TripleSampleConfig& cfg);

// Exactly-constructed collinear triple: x, x + t1 u, x + t2 u.
Triple collinear_triple(SplitMix64& g, int d);

// Generic triple flattened onto {x_axis = const}.
Triple axis_degenerate_triple(SplitMix64& g, int d, int axis);

}  // namespace capflow
