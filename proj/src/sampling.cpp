#include "capflow/sampling.hpp"

#include <algorithm>
#include <cmath>

namespace capflow {

Point ball_point(SplitMix64& g, int d) {
  Point p(d);
  for (;;) {
    double r2 = 0.0;
    for (int i = 0; i < d; ++i) {
      p[i] = g.symmetric();
      r2 += p[i] * p[i];
    }
    if (r2 <= 1.0) return p;
  }
}

Triple random_triple(SplitMix64& g, const TripleSampleConfig& cfg) {
  for (;;) {
    Triple t{ball_point(g, cfg.d), ball_point(g, cfg.d), ball_point(g, cfg.d)};
    double xy = dist(t.x, t.y);
    double yz = dist(t.y, t.z);
    double xz = dist(t.x, t.z);
    double lo = std::min({xy, yz, xz});
    double hi = std::max({xy, yz, xz});
    if (lo < cfg.min_separation) continue;
    if (hi / lo > cfg.max_aspect) continue;
    double flat = 4.0 * triangle_area(t) / (hi * hi);
    if (flat < cfg.min_flatness) continue;
    return t;
  }
}

Triple collinear_triple(SplitMix64& g, int d) {
  Point x = ball_point(g, d);
  Point u = ball_point(g, d);
  double nu = norm(u);
  while (nu < 1e-3) {
    u = ball_point(g, d);
    nu = norm(u);
  }
  double t1, t2;
  do {
    t1 = g.symmetric();
    t2 = g.symmetric();
  } while (std::abs(t1) < 1e-3 || std::abs(t2) < 1e-3 || std::abs(t2 - t1) < 1e-3);
  Triple t;
  t.x = x;
  t.y.resize(d);
  t.z.resize(d);
  for (int i = 0; i < d; ++i) {
    t.y[i] = x[i] + t1 * u[i];
    t.z[i] = x[i] + t2 * u[i];
  }
  return t;
}

Triple axis_degenerate_triple(SplitMix64& g, int d, int axis) {
  TripleSampleConfig cfg;
  cfg.d = d;
  Triple t = random_triple(g, cfg);
  double c = g.symmetric();
  t.x[axis] = c;
  t.y[axis] = c;
  t.z[axis] = c;
  // Flattening can collapse the triple; resample those.
  if (t.x == t.y || t.y == t.z || t.x == t.z) return axis_degenerate_triple(g, d, axis);
  return t;
}

}  // namespace capflow
