#pragma once

// Points, triples and the triangle quantities everything else is built on:
// side lengths, areas, Menger curvature, the planar permutation identity,
// and line-to-hyperplane angles.

#include <span>
#include <vector>

#include "capflow/errors.hpp"

namespace capflow {

using Point = std::vector<double>;

struct Triple {
  Point x, y, z;

  int dim() const { return static_cast<int>(x.size()); }
};

double dist(std::span<const double> p, std::span<const double> q);
double norm(std::span<const double> v);

// Squared norm and dot product in compensated arithmetic; used where the
// Gram determinant cancels (needle triangles).
double stable_gram_area_sq(std::span<const double> a, std::span<const double> b);

// L(x,y,z) = max(|x-y|, |y-z|, |x-z|). Throws DegenerateTriple if two
// points coincide exactly.
double largest_side(const Triple& t);

// M_i = max(|y_i-x_i|, |z_i-y_i|, |z_i-x_i|), axis 0-based.
double coordinate_spread(const Triple& t, int axis);

// Area of the triangle, computed as sqrt(|a|^2|b|^2 - (a.b)^2)/2 with
// a = y-x, b = z-y in compensated arithmetic.
double triangle_area(const Triple& t);

// c(x,y,z) = 4 area / (|x-y||y-z||x-z|); zero iff collinear; equals the
// reciprocal circumradius.
double menger_curvature(const Triple& t);

// Sum over the six permutations of 1/((z_s2 - z_s1) conj(z_s3 - z_s1)) with
// the planar points read as complex numbers. Returns the real part after
// checking the imaginary residue; equals menger_curvature squared.
double melnikov_sum(const Triple& t);

// Smallest angle between the line through p,q and the hyperplane {x_axis=0},
// in [0, pi/2]. axis 0-based.
double line_hyperplane_angle(const Point& p, const Point& q, int axis);

namespace detail {
void require_same_dim(const Triple& t);
void require_distinct(const Triple& t);
}  // namespace detail

}  // namespace capflow
