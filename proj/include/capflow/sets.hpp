#pragma once

// Test-geometry generators: the 4-corner Cantor construction, curves
// sampled by arclength, and the constraint grids used by the capacity LP.
// All generators are deterministic functions of their spec.

#include <optional>
#include <string>
#include <vector>

#include "capflow/geometry.hpp"
#include "capflow/measures.hpp"

namespace capflow {

// Planar similarity: scale, then rotate, then translate.
struct Similarity {
  double scale = 1.0;
  double rotate = 0.0;  // radians
  double tx = 0.0;
  double ty = 0.0;

  void apply(double& x, double& y) const;
};

enum class SetKind { cantor4, segment, circle, lipschitz_graph, custom };

std::string set_kind_name(SetKind k);
std::optional<SetKind> parse_set_kind(const std::string& name);

struct SetSpec {
  SetKind kind = SetKind::custom;
  int generation = 0;     // cantor4
  double ratio = 0.25;    // cantor4 contraction, in (0, 1/2]
  int n_samples = 0;      // curves
  double graph_slope = 0.5;  // lipschitz_graph tent |f'|
  double graph_kink = 0.5;   // lipschitz_graph kink position in (0, 1)
  Similarity transform;
};

struct PointCloud {
  int d = 2;
  std::vector<double> points;   // packed n x d
  std::vector<double> weights;  // H^1-sample or probability weights
  SetSpec provenance;

  int size() const { return static_cast<int>(weights.size()); }
  std::span<const double> point(int i) const {
    return {points.data() + static_cast<std::size_t>(i) * d, static_cast<std::size_t>(d)};
  }
  double total_weight() const;
  DiscreteMeasure as_measure() const;
};

// Point budget guards, overridable through CAPFLOW_MAX_POINTS.
std::int64_t max_atom_budget();
std::int64_t max_grid_budget();

// Centers of the generation-level squares of the self-similar 4-corner
// construction on the unit square; 4^generation points with probability
// weights 4^{-generation}.
PointCloud cantor4(int generation, double ratio, const Similarity& transform = {});

// N points equispaced in arclength; weights = length/N.
PointCloud sample_curve(const SetSpec& spec);

PointCloud generate(const SetSpec& spec);

// Axis-aligned grid of spacing h over the cloud's bounding box padded by
// pad on every side, keeping only points at distance >= delta from every
// cloud point (strictly closer points are removed).
struct GridPoints {
  int d = 2;
  std::vector<double> points;  // packed
  int size() const { return d == 0 ? 0 : static_cast<int>(points.size()) / d; }
  std::span<const double> point(int i) const {
    return {points.data() + static_cast<std::size_t>(i) * d, static_cast<std::size_t>(d)};
  }
};

GridPoints constraint_grid(const PointCloud& cloud, double h, double pad, double delta);

}  // namespace capflow
