#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <numbers>

#include "capflow/io.hpp"
#include "capflow/sets.hpp"

using namespace capflow;

TEST_CASE("cantor4 construction") {
  PointCloud g0 = cantor4(0, 0.25);
  CHECK(g0.size() == 1);
  CHECK(g0.weights[0] == 1.0);
  CHECK(g0.point(0)[0] == doctest::Approx(0.5));

  PointCloud g1 = cantor4(1, 0.25);
  REQUIRE(g1.size() == 4);
  // Corner squares of side 1/4; centers at 1/8 and 7/8, quadrant order.
  CHECK(g1.point(0)[0] == doctest::Approx(0.125));
  CHECK(g1.point(0)[1] == doctest::Approx(0.125));
  CHECK(g1.point(1)[0] == doctest::Approx(0.125));
  CHECK(g1.point(1)[1] == doctest::Approx(0.875));
  CHECK(g1.point(3)[0] == doctest::Approx(0.875));
  for (double w : g1.weights) CHECK(w == doctest::Approx(0.25));

  // 4^g points, probability weights, nearest-neighbor distance ~ ratio^g.
  double prev_nn = 0.0;
  for (int g = 1; g <= 4; ++g) {
    PointCloud cloud = cantor4(g, 0.25);
    CHECK(cloud.size() == (1 << (2 * g)));
    CHECK(cloud.total_weight() == doctest::Approx(1.0).epsilon(1e-12));
    double nn = 1e300;
    for (int i = 0; i < cloud.size(); ++i) {
      for (int j = i + 1; j < cloud.size(); ++j) {
        nn = std::min(nn, dist(cloud.point(i), cloud.point(j)));
      }
    }
    if (g > 1) CHECK(nn == doctest::Approx(prev_nn * 0.25).epsilon(1e-12));
    prev_nn = nn;
  }

  CHECK_THROWS_AS(cantor4(-1, 0.25), ValidationError);
  CHECK_THROWS_AS(cantor4(1, 0.75), ValidationError);
  CHECK_THROWS_AS(cantor4(12, 0.25), ResourceGuardError);
}

TEST_CASE("sample_curve: segment, circle, tent graph") {
  SetSpec seg;
  seg.kind = SetKind::segment;
  seg.n_samples = 2;
  PointCloud sc = sample_curve(seg);
  REQUIRE(sc.size() == 2);
  CHECK(sc.point(0)[0] == 0.0);
  CHECK(sc.point(1)[0] == 1.0);
  CHECK(sc.weights[0] == doctest::Approx(0.5));

  SetSpec circ;
  circ.kind = SetKind::circle;
  circ.n_samples = 4;
  PointCloud cc = sample_curve(circ);
  REQUIRE(cc.size() == 4);
  CHECK(cc.weights[0] == doctest::Approx(2.0 * std::numbers::pi / 4));
  CHECK(cc.point(1)[0] == doctest::Approx(0.0));
  CHECK(cc.point(1)[1] == doctest::Approx(1.0));
  CHECK(cc.total_weight() == doctest::Approx(2.0 * std::numbers::pi).epsilon(1e-12));

  SetSpec tent;
  tent.kind = SetKind::lipschitz_graph;
  tent.n_samples = 100;
  tent.graph_slope = 0.5;
  tent.graph_kink = 0.5;
  PointCloud tc = sample_curve(tent);
  // Polyline length quadrature oracle.
  double poly_len = 0.0;
  for (int i = 1; i < tc.size(); ++i) poly_len += dist(tc.point(i - 1), tc.point(i));
  CHECK(tc.total_weight() == doctest::Approx(poly_len).epsilon(1e-3));
  CHECK(tc.total_weight() == doctest::Approx(std::sqrt(1.25)).epsilon(1e-12));

  SetSpec bad;
  bad.kind = SetKind::segment;
  bad.n_samples = 0;
  CHECK_THROWS_AS(sample_curve(bad), ValidationError);
}

TEST_CASE("generators are deterministic and transform-equivariant") {
  SetSpec spec;
  spec.kind = SetKind::circle;
  spec.n_samples = 32;
  spec.transform.scale = 2.0;
  spec.transform.rotate = 0.31;
  spec.transform.tx = -1.0;
  spec.transform.ty = 0.5;
  PointCloud a = generate(spec);
  PointCloud b = generate(spec);
  CHECK(a.points == b.points);
  CHECK(a.weights == b.weights);

  // Transforming the spec equals transforming canonical points.
  SetSpec ident = spec;
  ident.transform = {};
  PointCloud c = generate(ident);
  for (int i = 0; i < c.size(); ++i) {
    double x = c.point(i)[0], y = c.point(i)[1];
    spec.transform.apply(x, y);
    CHECK(x == a.point(i)[0]);
    CHECK(y == a.point(i)[1]);
  }
  // Curve weights scale with the similarity.
  CHECK(a.total_weight() == doctest::Approx(2.0 * c.total_weight()).epsilon(1e-12));
}

TEST_CASE("constraint_grid") {
  PointCloud atom;
  atom.d = 2;
  atom.points = {0.0, 0.0};
  atom.weights = {1.0};
  GridPoints g = constraint_grid(atom, 1.0, 1.0, 0.0);
  CHECK(g.size() == 9);

  GridPoints none = constraint_grid(atom, 1.0, 1.0, 10.0);
  CHECK(none.size() == 0);

  SetSpec seg;
  seg.kind = SetKind::segment;
  seg.n_samples = 16;
  PointCloud cloud = sample_curve(seg);
  double h = 0.125, delta = 0.5 * h;
  GridPoints grid = constraint_grid(cloud, h, 0.5, delta);
  CHECK(grid.size() > 0);
  for (int i = 0; i < grid.size(); ++i) {
    double best = 1e300;
    for (int j = 0; j < cloud.size(); ++j) {
      best = std::min(best, dist(grid.point(i), cloud.point(j)));
    }
    CHECK(best >= delta);
  }
}

TEST_CASE("json round trip and 17-digit serialization") {
  CHECK(fmt17(0.5) == "0.5");
  CHECK(fmt17(1.0 / 3.0) == "0.33333333333333331");
  CHECK(fmt17(std::numeric_limits<double>::infinity()) == "inf");

  PointCloud cloud = cantor4(2, 0.25);
  RunMeta meta;
  meta.command = "gen";
  meta.flags = {{"kind", "cantor4"}};
  meta.seed = 42;
  meta.partition_count = 64;
  std::string path = "io_roundtrip_test.json";
  write_file(path, cloud_to_json(cloud, meta) + "\n");

  PointCloud back = read_cloud(path);
  CHECK(back.d == cloud.d);
  REQUIRE(back.size() == cloud.size());
  for (int i = 0; i < cloud.size(); ++i) {
    CHECK(back.point(i)[0] == cloud.point(i)[0]);  // 17 digits round-trip
    CHECK(back.point(i)[1] == cloud.point(i)[1]);
    CHECK(back.weights[i] == cloud.weights[i]);
  }
  CHECK(back.provenance.kind == SetKind::cantor4);
  CHECK(back.provenance.generation == 2);

  DiscreteMeasure mu = read_measure(path);
  CHECK(mu.size() == cloud.size());
  std::remove(path.c_str());

  // Validation failures surface as ValidationError with exit-code 4 paths.
  write_file(path, "{\"d\":2,\"atoms\":[[0,0]],\"masses\":[-1]}");
  CHECK_THROWS_AS(read_measure(path), ValidationError);
  write_file(path, "not json");
  CHECK_THROWS_AS(read_measure(path), ValidationError);
  std::remove(path.c_str());
}
