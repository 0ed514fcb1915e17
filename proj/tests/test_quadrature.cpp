#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "vemcurve/exceptions.hpp"
#include "vemcurve/quadrature.hpp"

using namespace vemcurve;
using vemtest::Rng;

TEST_CASE("gauss-lobatto small rules match closed forms") {
  QuadratureRule1D r2 = gauss_lobatto(2);
  CHECK(r2.nodes[0] == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(r2.nodes[1] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(r2.weights[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(r2.weights[1] == doctest::Approx(1.0).epsilon(1e-15));

  QuadratureRule1D r3 = gauss_lobatto(3);
  CHECK(r3.nodes[1] == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(r3.weights[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(r3.weights[1] == doctest::Approx(4.0 / 3.0).epsilon(1e-14));

  QuadratureRule1D r4 = gauss_lobatto(4);
  CHECK(std::abs(r4.nodes[1]) == doctest::Approx(1.0 / std::sqrt(5.0)).epsilon(1e-14));
  CHECK(std::abs(r4.nodes[2]) == doctest::Approx(1.0 / std::sqrt(5.0)).epsilon(1e-14));
}

TEST_CASE("gauss-legendre small rules match closed forms") {
  QuadratureRule1D r1 = gauss_legendre(1);
  CHECK(r1.nodes[0] == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(r1.weights[0] == doctest::Approx(2.0).epsilon(1e-15));

  QuadratureRule1D r2 = gauss_legendre(2);
  CHECK(std::abs(r2.nodes[0]) == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-14));
  CHECK(r2.weights[0] == doctest::Approx(1.0).epsilon(1e-14));

  // degree-5 exactness: int_{-1}^{1} x^4 dx = 2/5 with 3 points
  QuadratureRule1D r3 = gauss_legendre(3);
  double integral = 0.0;
  for (size_t i = 0; i < r3.nodes.size(); ++i)
    integral += r3.weights[i] * std::pow(r3.nodes[i], 4);
  CHECK(integral == doctest::Approx(2.0 / 5.0).epsilon(1e-15));
}

TEST_CASE("1d rules: weight sums, ordering, design-degree exactness") {
  for (int n = 1; n <= 10; ++n) {
    for (bool lobatto : {false, true}) {
      if (lobatto && n < 2) continue;
      QuadratureRule1D rule = lobatto ? gauss_lobatto(n) : gauss_legendre(n);
      double wsum = 0.0;
      for (double w : rule.weights) wsum += w;
      CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));
      for (size_t i = 1; i < rule.nodes.size(); ++i)
        CHECK(rule.nodes[i] > rule.nodes[i - 1]);
      int design = lobatto ? 2 * n - 3 : 2 * n - 1;
      for (int d = 0; d <= design; ++d) {
        double integral = 0.0;
        for (size_t i = 0; i < rule.nodes.size(); ++i)
          integral += rule.weights[i] * std::pow(rule.nodes[i], d);
        double exact = (d % 2 == 0) ? 2.0 / (d + 1) : 0.0;
        CHECK(integral == doctest::Approx(exact).epsilon(1e-13));
      }
    }
  }
}

TEST_CASE("polygon rule: unit square examples") {
  std::vector<Point> square = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  PolygonQuadrature r2 = polygon_rule(square, 2);
  double xy = 0.0, one = 0.0;
  for (size_t i = 0; i < r2.points.size(); ++i) {
    xy += r2.weights[i] * r2.points[i].x * r2.points[i].y;
    one += r2.weights[i];
  }
  CHECK(xy == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(one == doctest::Approx(1.0).epsilon(1e-14));

  PolygonQuadrature r4 = polygon_rule(square, 4);
  double x4 = 0.0;
  for (size_t i = 0; i < r4.points.size(); ++i)
    x4 += r4.weights[i] * std::pow(r4.points[i].x, 4);
  CHECK(x4 == doctest::Approx(0.2).epsilon(1e-14));
}

TEST_CASE("polygon rule: monomial exactness on random polygons vs Green oracle") {
  Rng rng(42);
  for (int trial = 0; trial < 200; ++trial) {
    auto poly = vemtest::random_polygon(rng);
    int degree = rng.integer(1, 8);
    PolygonQuadrature rule = polygon_rule(poly, degree);
    double area = polygon_area(poly);
    double wsum = 0.0;
    for (double w : rule.weights) wsum += w;
    CHECK(wsum == doctest::Approx(area).epsilon(1e-12));
    for (int p = 0; p + 1 <= degree; ++p) {
      int q = degree - p;
      double val = 0.0;
      for (size_t i = 0; i < rule.points.size(); ++i)
        val += rule.weights[i] * std::pow(rule.points[i].x, p) *
               std::pow(rule.points[i].y, q);
      double exact = vemtest::polygon_monomial_integral(poly, p, q);
      double reach = polygon_centroid(poly).norm() + polygon_diameter(poly);
      double scale = std::pow(reach, p + q) * area;
      CHECK(std::abs(val - exact) <= 1e-12 * scale);
    }
  }
}

TEST_CASE("polygon rule: inverted fan triangle raises DegenerateCell") {
  // non-star-shaped polygon whose centroid cannot see every edge
  std::vector<Point> hook = {{0, 0}, {4, 0}, {4, 1}, {1, 1}, {1, 3}, {1.2, 3},
                             {1.2, 1.2}, {4, 1.2}, {4, 4}, {0, 4}};
  CHECK_THROWS_AS(polygon_rule(hook, 2, FanMode::strict), DegenerateCell);
  // the signed fan still integrates constants to the exact area
  PolygonQuadrature rule = polygon_rule(hook, 2, FanMode::signed_fan);
  double wsum = 0.0;
  for (double w : rule.weights) wsum += w;
  CHECK(wsum == doctest::Approx(polygon_area(hook)).epsilon(1e-12));
}
