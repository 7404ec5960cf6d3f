#include <doctest.h>

#include <cmath>

#include "dipolar/geometry.hpp"

using namespace dipolar;
using geometry::ShapeConfig;
using geometry::Vec2;

TEST_CASE("unit circle sampling") {
  const auto sc = geometry::sample_arclength(geometry::make_disk(1.0), 256);
  CHECK(sc.perimeter == doctest::Approx(2.0 * M_PI).epsilon(1e-12));
  for (int i = 0; i < sc.size(); ++i) {
    CHECK(sc.curvature[i] == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(sc.tangents[i].norm() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(std::abs(sc.tangents[i].dot(sc.normals[i])) < 1e-12);
    // outward normal on the unit circle is the position itself
    CHECK((sc.normals[i] - sc.points[i]).norm() < 1e-8);
  }
}

TEST_CASE("ellipse curvature range and Gauss-Bonnet") {
  const auto sc = geometry::sample_arclength(geometry::make_ellipse(2.0, 1.0), 512);
  double kmin = 1e300, kmax = -1e300, turning = 0.0;
  for (int i = 0; i < sc.size(); ++i) {
    kmin = std::min(kmin, sc.curvature[i]);
    kmax = std::max(kmax, sc.curvature[i]);
    turning += sc.curvature[i] * sc.ds;
  }
  CHECK(kmin == doctest::Approx(0.25).epsilon(1e-6));
  CHECK(kmax == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(turning == doctest::Approx(2.0 * M_PI).epsilon(1e-9));

  // analytic curvature at the sampled parameters
  for (int i = 0; i < sc.size(); i += 37) {
    const double t = sc.params[i];
    const double s2 = std::sin(t) * std::sin(t);
    const double denom = std::pow(4.0 * s2 + (1.0 - s2), 1.5);
    CHECK(sc.curvature[i] == doctest::Approx(2.0 / denom).epsilon(1e-10));
  }
}

TEST_CASE("sampling is reparametrization stable") {
  const auto curve = geometry::make_random_shape(7);
  const auto a = geometry::sample_arclength(curve, 256);
  const auto b = geometry::sample_arclength(curve, 512);
  CHECK(std::abs(a.perimeter - b.perimeter) < 1e-8);
}

TEST_CASE("Gauss-Bonnet on random band-limited shapes") {
  for (int s = 0; s < 5; ++s) {
    const auto sc = geometry::sample_arclength(geometry::make_random_shape(100 + s), 512);
    double turning = 0.0;
    for (int i = 0; i < sc.size(); ++i) turning += sc.curvature[i] * sc.ds;
    CHECK(turning == doctest::Approx(2.0 * M_PI).epsilon(1e-6));
  }
}

TEST_CASE("enclosed area") {
  CHECK(geometry::enclosed_area(geometry::make_disk(1.0)) ==
        doctest::Approx(M_PI).epsilon(1e-12));
  CHECK(geometry::enclosed_area(geometry::make_stripe(1.0, 4.0, 0.0)) ==
        doctest::Approx(4.0).epsilon(1e-9));

  // dilation scales area quadratically
  const auto curve = geometry::make_random_shape(11);
  const double base = geometry::enclosed_area(curve);
  for (double alpha : {0.5, 2.0})
    CHECK(geometry::enclosed_area(curve.scaled(alpha)) ==
          doctest::Approx(alpha * alpha * base).epsilon(1e-10));

  // far-separated components add up
  ShapeConfig two;
  two.components.push_back({geometry::make_disk(1.0), geometry::Placement::at({0, 0})});
  two.components.push_back({geometry::make_disk(1.0), geometry::Placement::far()});
  CHECK(geometry::enclosed_area(two) == doctest::Approx(2.0 * M_PI).epsilon(1e-12));

  // clockwise orientation is rejected
  auto cw = geometry::make_disk(1.0);
  std::swap(cw.cos_x, cw.cos_y);
  std::swap(cw.sin_x, cw.sin_y);
  CHECK_THROWS(geometry::enclosed_area(cw));
}

TEST_CASE("stripe constructor") {
  const auto sharp = geometry::sample_arclength(geometry::make_stripe(1.0, 4.0, 0.0), 1024);
  CHECK(sharp.perimeter == doctest::Approx(10.0).epsilon(5e-3));

  const auto rounded = geometry::make_stripe(1.0, 4.0, 0.1);
  CHECK(geometry::enclosed_area(rounded) == doctest::Approx(4.0).epsilon(1e-8));
  const auto sc = geometry::sample_arclength(rounded, 1024);
  const double expected_perimeter = 2.0 * (4.0 - 0.2) + 2.0 * (1.0 - 0.2) + 2.0 * M_PI * 0.1;
  CHECK(sc.perimeter == doctest::Approx(expected_perimeter).epsilon(5e-3));

  CHECK_THROWS(geometry::make_stripe(1.0, 4.0, 0.5));   // rounding >= min side / 2
  CHECK_THROWS(geometry::make_stripe(1.0, 4.0, -0.1));
}

TEST_CASE("rasterization mass converges at rate O(h)") {
  const ShapeConfig disk = ShapeConfig::single(geometry::make_disk(1.0));
  const double exact = M_PI;
  double err_prev = -1.0;
  for (double h : {0.08, 0.04, 0.02}) {
    const auto raster = geometry::rasterize(disk, h);
    const double err = std::abs(raster.mass() - exact);
    CHECK(err <= 0.15 * h * 2.0 * M_PI);
    if (err_prev > 0.0) CHECK(err < err_prev * 1.2);  // roughly halving, allow noise
    err_prev = err;
  }

  const auto stripe = geometry::rasterize(ShapeConfig::single(geometry::make_stripe(1.0, 4.0, 0.0)),
                                          0.05);
  CHECK(std::abs(stripe.mass() - 4.0) <= 0.05 * 10.0);

  CHECK(geometry::rasterize(ShapeConfig{}, 0.05).mass() == 0.0);

  ShapeConfig far;
  far.components.push_back({geometry::make_disk(1.0), geometry::Placement::far()});
  CHECK_THROWS(geometry::rasterize(far, 0.05));
}

TEST_CASE("rasterize_disk agrees with polyline rasterization") {
  const auto a = geometry::rasterize_disk(1.0, 0.05);
  const auto b = geometry::rasterize(ShapeConfig::single(geometry::make_disk(1.0)), 0.05);
  CHECK(std::abs(a.mass() - b.mass()) < 0.05 * 0.05 * 20);  // a handful of edge cells
}

TEST_CASE("point membership and simplicity") {
  const auto sc = geometry::sample_arclength(geometry::make_ellipse(2.0, 1.0), 256);
  CHECK(geometry::contains_point(sc, {0.0, 0.0}));
  CHECK(geometry::contains_point(sc, {1.8, 0.0}));
  CHECK(!geometry::contains_point(sc, {0.0, 1.2}));
  CHECK(geometry::is_simple(sc.points));

  // figure-eight-like polyline is not simple
  std::vector<Vec2> eight = {{-1, -1}, {1, 1}, {1, -1}, {-1, 1}};
  CHECK(!geometry::is_simple(eight));
}

TEST_CASE("sampler rejects degenerate input") {
  geometry::JordanCurve null_curve;
  null_curve.cos_x = {0.0};
  null_curve.cos_y = {0.0};
  CHECK_THROWS(geometry::sample_arclength(null_curve, 64));
  CHECK_THROWS(geometry::sample_arclength(geometry::make_disk(1.0), 8));
}
