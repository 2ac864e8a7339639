#include "capflow/sets.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>

#include "capflow/errors.hpp"
#include "capflow/parallel.hpp"

namespace capflow {

void Similarity::apply(double& x, double& y) const {
  double xs = x * scale;
  double ys = y * scale;
  double c = std::cos(rotate);
  double s = std::sin(rotate);
  x = c * xs - s * ys + tx;
  y = s * xs + c * ys + ty;
}

std::string set_kind_name(SetKind k) {
  switch (k) {
    case SetKind::cantor4: return "cantor4";
    case SetKind::segment: return "segment";
    case SetKind::circle: return "circle";
    case SetKind::lipschitz_graph: return "lipschitz_graph";
    case SetKind::custom: return "custom";
  }
  return "custom";
}

std::optional<SetKind> parse_set_kind(const std::string& name) {
  if (name == "cantor4") return SetKind::cantor4;
  if (name == "segment") return SetKind::segment;
  if (name == "circle") return SetKind::circle;
  if (name == "lipschitz_graph") return SetKind::lipschitz_graph;
  if (name == "custom") return SetKind::custom;
  return std::nullopt;
}

double PointCloud::total_weight() const {
  KahanSum acc;
  for (double w : weights) acc.add(w);
  return acc.sum;
}

DiscreteMeasure PointCloud::as_measure() const {
  return DiscreteMeasure(d, points, weights);
}

namespace {

std::int64_t env_budget(const char* name, std::int64_t fallback) {
  if (const char* v = std::getenv(name)) {
    char* end = nullptr;
    long long parsed = std::strtoll(v, &end, 10);
    if (end != v && parsed > 0) return parsed;
  }
  return fallback;
}

}  // namespace

std::int64_t max_atom_budget() { return env_budget("CAPFLOW_MAX_POINTS", 100000); }

std::int64_t max_grid_budget() {
  return env_budget("CAPFLOW_MAX_POINTS", 100000) * 10;
}

PointCloud cantor4(int generation, double ratio, const Similarity& transform) {
  if (generation < 0) throw ValidationError("generation must be >= 0");
  if (!(ratio > 0.0 && ratio <= 0.5)) {
    throw ValidationError("cantor4 ratio must lie in (0, 1/2]");
  }
  std::int64_t count = 1;
  for (int g = 0; g < generation; ++g) {
    count *= 4;
    if (count > max_atom_budget()) {
      throw ResourceGuardError("cantor4 generation exceeds the point budget");
    }
  }

  PointCloud cloud;
  cloud.d = 2;
  cloud.provenance.kind = SetKind::cantor4;
  cloud.provenance.generation = generation;
  cloud.provenance.ratio = ratio;
  cloud.provenance.transform = transform;
  cloud.points.reserve(2 * count);
  cloud.weights.assign(count, std::pow(0.25, generation));

  // Corner offsets in quadrant order; the base-4 expansion of the point
  // index walks the construction tree root-first.
  const double off[4][2] = {{0.0, 0.0}, {0.0, 1.0}, {1.0, 0.0}, {1.0, 1.0}};
  std::vector<std::int64_t> divisor(generation, 1);
  for (int g = generation - 2; g >= 0; --g) divisor[g] = divisor[g + 1] * 4;
  for (std::int64_t idx = 0; idx < count; ++idx) {
    double cx = 0.0, cy = 0.0;  // square corner
    double side = 1.0;
    for (int g = 0; g < generation; ++g) {
      int digit = static_cast<int>((idx / divisor[g]) % 4);
      double next = side * ratio;
      cx += off[digit][0] * (side - next);
      cy += off[digit][1] * (side - next);
      side = next;
    }
    double x = cx + 0.5 * side;
    double y = cy + 0.5 * side;
    transform.apply(x, y);
    cloud.points.push_back(x);
    cloud.points.push_back(y);
  }
  return cloud;
}

namespace {

PointCloud curve_cloud(const SetSpec& spec, double length,
                       const std::vector<std::pair<double, double>>& pts) {
  PointCloud cloud;
  cloud.d = 2;
  cloud.provenance = spec;
  double w = length * std::abs(spec.transform.scale) / static_cast<double>(pts.size());
  cloud.weights.assign(pts.size(), w);
  cloud.points.reserve(2 * pts.size());
  for (auto [x, y] : pts) {
    spec.transform.apply(x, y);
    cloud.points.push_back(x);
    cloud.points.push_back(y);
  }
  return cloud;
}

}  // namespace

PointCloud sample_curve(const SetSpec& spec) {
  const int N = spec.n_samples;
  if (N < 2) throw ValidationError("curve sampling needs n_samples >= 2");
  if (N > max_atom_budget()) {
    throw ResourceGuardError("curve sample count exceeds the point budget");
  }
  std::vector<std::pair<double, double>> pts;
  pts.reserve(N);

  switch (spec.kind) {
    case SetKind::segment: {
      for (int k = 0; k < N; ++k) {
        pts.emplace_back(static_cast<double>(k) / (N - 1), 0.0);
      }
      return curve_cloud(spec, 1.0, pts);
    }
    case SetKind::circle: {
      for (int k = 0; k < N; ++k) {
        double th = 2.0 * std::numbers::pi * k / N;
        pts.emplace_back(std::cos(th), std::sin(th));
      }
      return curve_cloud(spec, 2.0 * std::numbers::pi, pts);
    }
    case SetKind::lipschitz_graph: {
      double A = spec.graph_slope;
      double c = spec.graph_kink;
      if (!(A >= 0.0)) throw ValidationError("graph slope must be >= 0");
      if (!(c > 0.0 && c < 1.0)) throw ValidationError("graph kink must lie in (0,1)");
      // Tent graph f(t) = A |t - c|; both branches have slope magnitude A,
      // so equispacing in arclength is equispacing in t.
      double seg = std::sqrt(1.0 + A * A);
      for (int k = 0; k < N; ++k) {
        double t = static_cast<double>(k) / (N - 1);
        pts.emplace_back(t, A * std::abs(t - c));
      }
      return curve_cloud(spec, seg, pts);
    }
    default:
      throw ValidationError("sample_curve handles segment, circle, lipschitz_graph");
  }
}

PointCloud generate(const SetSpec& spec) {
  if (spec.kind == SetKind::cantor4) {
    return cantor4(spec.generation, spec.ratio, spec.transform);
  }
  return sample_curve(spec);
}

GridPoints constraint_grid(const PointCloud& cloud, double h, double pad, double delta) {
  if (!(h > 0.0)) throw ValidationError("grid spacing must be positive");
  if (delta < 0.0) throw ValidationError("delta must be >= 0");
  if (cloud.size() == 0) throw ValidationError("constraint grid needs a nonempty cloud");
  const int d = cloud.d;

  std::vector<double> lo(d, std::numeric_limits<double>::infinity());
  std::vector<double> hi(d, -std::numeric_limits<double>::infinity());
  for (int i = 0; i < cloud.size(); ++i) {
    auto p = cloud.point(i);
    for (int c = 0; c < d; ++c) {
      lo[c] = std::min(lo[c], p[c]);
      hi[c] = std::max(hi[c], p[c]);
    }
  }

  std::vector<int> steps(d);
  std::int64_t total = 1;
  for (int c = 0; c < d; ++c) {
    lo[c] -= pad;
    hi[c] += pad;
    steps[c] = static_cast<int>(std::floor((hi[c] - lo[c]) / h + 1e-9)) + 1;
    total *= steps[c];
    if (total > max_grid_budget()) {
      throw ResourceGuardError("constraint grid exceeds the point budget");
    }
  }

  GridPoints grid;
  grid.d = d;
  std::vector<double> pt(d);
  for (std::int64_t flat = 0; flat < total; ++flat) {
    std::int64_t rest = flat;
    for (int c = d - 1; c >= 0; --c) {
      pt[c] = lo[c] + static_cast<double>(rest % steps[c]) * h;
      rest /= steps[c];
    }
    bool keep = true;
    for (int i = 0; i < cloud.size() && keep; ++i) {
      if (dist(pt, cloud.point(i)) < delta) keep = false;
    }
    if (keep) grid.points.insert(grid.points.end(), pt.begin(), pt.end());
  }
  return grid;
}

}  // namespace capflow
