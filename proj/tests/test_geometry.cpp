#include <doctest.h>

#include <cmath>
#include <numbers>

#include "capflow/geometry.hpp"
#include "capflow/reference.hpp"
#include "capflow/rng.hpp"
#include "capflow/sampling.hpp"

using namespace capflow;

namespace {

Triple rotate2(const Triple& t, double th) {
  auto rot = [&](const Point& p) {
    return Point{std::cos(th) * p[0] - std::sin(th) * p[1],
                 std::sin(th) * p[0] + std::cos(th) * p[1]};
  };
  return {rot(t.x), rot(t.y), rot(t.z)};
}

Triple shift(const Triple& t, const Point& v) {
  auto mv = [&](const Point& p) {
    Point q(p);
    for (std::size_t i = 0; i < q.size(); ++i) q[i] += v[i];
    return q;
  };
  return {mv(t.x), mv(t.y), mv(t.z)};
}

Triple dilate(const Triple& t, double lam) {
  auto sc = [&](const Point& p) {
    Point q(p);
    for (double& c : q) c *= lam;
    return q;
  };
  return {sc(t.x), sc(t.y), sc(t.z)};
}

}  // namespace

TEST_CASE("largest_side basics") {
  CHECK(largest_side({{0, 0}, {1, 0}, {0, 1}}) == doctest::Approx(std::sqrt(2.0)));
  CHECK(largest_side({{0, 0}, {2, 0}, {4, 0}}) == doctest::Approx(4.0));
  CHECK_THROWS_AS(largest_side({{0, 0}, {0, 0}, {1, 1}}), DegenerateTriple);

  SplitMix64 g(7);
  TripleSampleConfig cfg;
  for (int i = 0; i < 200; ++i) {
    Triple t = random_triple(g, cfg);
    double L = largest_side(t);
    CHECK(largest_side(dilate(t, 3.5)) == doctest::Approx(3.5 * L).epsilon(1e-12));
  }
}

TEST_CASE("coordinate_spread basics and bound") {
  CHECK(coordinate_spread({{0, 0}, {0, 1}, {1, 1}}, 0) == doctest::Approx(1.0));
  CHECK(coordinate_spread({{0, 0}, {0, 1}, {0, 2}}, 0) == doctest::Approx(0.0));
  CHECK(coordinate_spread({{0, 0}, {3, 4}, {6, 0}}, 1) == doctest::Approx(4.0));
  CHECK_THROWS_AS(coordinate_spread({{0, 0}, {0, 1}, {1, 1}}, 2), DimensionMismatch);

  SplitMix64 g(8);
  TripleSampleConfig cfg;
  cfg.d = 3;
  for (int i = 0; i < 200; ++i) {
    Triple t = random_triple(g, cfg);
    double L = largest_side(t);
    for (int ax = 0; ax < 3; ++ax) {
      CHECK(coordinate_spread(t, ax) <= L * (1.0 + 1e-15));
    }
  }
  // Equality on an axis-aligned triple.
  CHECK(coordinate_spread({{0, 0}, {1, 0}, {2, 0}}, 0) ==
        doctest::Approx(largest_side({{0, 0}, {1, 0}, {2, 0}})));
}

TEST_CASE("triangle_area: unit case, collinear, Heron oracle") {
  CHECK(triangle_area({{0, 0}, {1, 0}, {0, 1}}) == doctest::Approx(0.5));
  CHECK(triangle_area({{0, 0}, {1, 1}, {2, 2}}) == doctest::Approx(0.0));

  SplitMix64 g(9);
  TripleSampleConfig cfg;
  cfg.min_flatness = 0.0;  // include needle triangles up to the aspect cap
  for (int i = 0; i < 2000; ++i) {
    Triple t = random_triple(g, cfg);
    double gram = triangle_area(t);
    double heron = reference::heron_area(t);
    CHECK(gram == doctest::Approx(heron).epsilon(1e-12));
  }
}

TEST_CASE("menger_curvature values and invariances") {
  CHECK(menger_curvature({{1, 0}, {0, 1}, {-1, 0}}) == doctest::Approx(1.0));
  CHECK(menger_curvature({{0, 0}, {1, 0}, {0, 1}}) == doctest::Approx(std::sqrt(2.0)));
  CHECK(menger_curvature({{0, 0}, {1, 1}, {2, 2}}) == doctest::Approx(0.0));

  SplitMix64 g(10);
  TripleSampleConfig cfg;
  for (int i = 0; i < 300; ++i) {
    Triple t = random_triple(g, cfg);
    double c = menger_curvature(t);
    // permutation invariance
    CHECK(menger_curvature({t.z, t.x, t.y}) == doctest::Approx(c).epsilon(1e-12));
    CHECK(menger_curvature({t.y, t.x, t.z}) == doctest::Approx(c).epsilon(1e-12));
    // translation / rotation invariance, 1/lambda dilation
    CHECK(menger_curvature(shift(t, {0.3, -1.7})) == doctest::Approx(c).epsilon(1e-9));
    CHECK(menger_curvature(rotate2(t, 0.77)) == doctest::Approx(c).epsilon(1e-9));
    CHECK(menger_curvature(dilate(t, 4.0)) == doctest::Approx(c / 4.0).epsilon(1e-12));
  }
}

TEST_CASE("melnikov_sum equals curvature squared") {
  CHECK(melnikov_sum({{0, 0}, {1, 0}, {0, 1}}) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(melnikov_sum({{0, 0}, {1, 0}, {2, 0}}) == doctest::Approx(0.0));
  CHECK_THROWS_AS(melnikov_sum({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}), DimensionMismatch);

  SplitMix64 g(11);
  TripleSampleConfig cfg;
  for (int i = 0; i < 3000; ++i) {
    Triple t = random_triple(g, cfg);
    double c2 = menger_curvature(t);
    c2 *= c2;
    CHECK(melnikov_sum(t) == doctest::Approx(c2).epsilon(1e-9));
  }
}

TEST_CASE("line_hyperplane_angle") {
  using std::numbers::pi;
  CHECK(line_hyperplane_angle({0, 0}, {1, 0}, 1) == doctest::Approx(0.0));
  CHECK(line_hyperplane_angle({0, 0}, {0, 1}, 1) == doctest::Approx(pi / 2));
  CHECK(line_hyperplane_angle({0, 0}, {1, 1}, 0) == doctest::Approx(pi / 4));
  CHECK_THROWS_AS(line_hyperplane_angle({0, 0}, {0, 0}, 0), DegenerateTriple);
}
