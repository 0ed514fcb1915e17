#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "vemcurve/exceptions.hpp"
#include "vemcurve/geometry.hpp"
#include "vemcurve/testcases.hpp"

using namespace vemcurve;

TEST_CASE("delta on the unit circle: chord midpoint, on-curve, axis ray") {
  DomainSpec disk = make_test_case("disk");

  // midpoint of a chord subtending half-angle pi/6, radial direction
  double c = std::cos(M_PI / 6.0);
  double delta = delta_at(NormalRay({c, 0.0}, {1.0, 0.0}), disk);
  CHECK(delta == doctest::Approx(1.0 - c).epsilon(1e-12));

  // origin already on the boundary
  double zero = delta_at(NormalRay({std::cos(0.3), std::sin(0.3)},
                                   {std::cos(0.3), std::sin(0.3)}),
                         disk);
  CHECK(std::abs(zero) <= 1e-12);

  CHECK(delta_at(NormalRay({0.5, 0.0}, {1.0, 0.0}), disk) ==
        doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("delta: projected point lands on the boundary (convex residual check)") {
  DomainSpec disk = make_test_case("disk");
  for (int n : {8, 16, 32}) {
    for (int k = 0; k < n; ++k) {
      double a0 = 2.0 * M_PI * k / n, a1 = 2.0 * M_PI * (k + 1) / n;
      Point pa{std::cos(a0), std::sin(a0)}, pb{std::cos(a1), std::sin(a1)};
      Point mid = (pa + pb) * 0.5;
      Vec2 normal = (pb - pa).rotated90() * -1.0;
      NormalRay ray(mid, normal);
      double delta = delta_at(ray, disk);
      Point hit = ray.origin + delta * ray.direction;
      CHECK(std::abs(hit.norm() - 1.0) <= 1e-12 * 2.0);
    }
  }
}

TEST_CASE("delta: spiral outermost winding and an empty ray") {
  DomainSpec spiral = make_test_case("spiral");
  // just outside the outermost winding, pointing outward: the wall sits
  // behind the origin, so the signed crossing is a small negative number
  double theta = 7.5 * M_PI;
  Point x{std::sqrt(theta) * std::cos(theta), std::sqrt(theta) * std::sin(theta)};
  Vec2 outward = Vec2{std::cos(theta), std::sin(theta)};
  double delta = delta_at(NormalRay(x + outward * 1e-6, outward), spiral);
  CHECK(delta == doctest::Approx(-1e-6).epsilon(1e-3));
  // a ray whose supporting line misses the domain entirely
  CHECK_THROWS_AS(delta_at(NormalRay({10.0, 10.0}, {1.0, 0.0}), spiral),
                  NoIntersection);
}

TEST_CASE("g_star: identity at delta=0, test-1 datum, constant datum") {
  DomainSpec disk = make_test_case("disk");
  Point on{std::cos(1.1), std::sin(1.1)};
  CHECK(g_star(NormalRay(on, on), disk) ==
        doctest::Approx(disk.dirichlet(on)).epsilon(1e-12));

  // cos(4 pi r) = 1 on the unit circle, whatever ray hits it
  CHECK(g_star(NormalRay({0.3, -0.2}, {0.8, 0.6}), disk) ==
        doctest::Approx(1.0).epsilon(1e-10));

  DomainSpec constant = disk;
  constant.dirichlet = [](Point) { return 7.25; };
  CHECK(g_star(NormalRay({0.1, 0.4}, {0.0, 1.0}), constant) == doctest::Approx(7.25));
}

TEST_CASE("max_delta: inscribed n-gon sagitta and straight-sided zero") {
  DomainSpec disk = make_test_case("disk");
  for (int n : {8, 16, 32, 64}) {
    std::vector<BoundarySample> samples;
    for (int k = 0; k < n; ++k) {
      double a0 = 2.0 * M_PI * k / n, a1 = 2.0 * M_PI * (k + 1) / n;
      Point pa{std::cos(a0), std::sin(a0)}, pb{std::cos(a1), std::sin(a1)};
      Vec2 normal = ((pb - pa).rotated90() * -1.0).normalized();
      for (double s : {0.2, 0.5, 0.8}) samples.push_back({pa + (pb - pa) * s, normal});
    }
    CHECK(max_delta(samples, disk) ==
          doctest::Approx(1.0 - std::cos(M_PI / n)).epsilon(1e-10));
  }

  DomainSpec square = make_test_case("square");
  std::vector<BoundarySample> edge = {{{0.5, 0.0}, {0.0, -1.0}},
                                      {{1.0, 0.25}, {1.0, 0.0}}};
  CHECK(max_delta(edge, square) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("n=16 sagitta value frozen") {
  // 1 - cos(pi/16) = 1.9214...e-2
  CHECK(1.0 - std::cos(M_PI / 16.0) == doctest::Approx(0.019214719).epsilon(1e-6));
}

TEST_CASE("closest boundary point") {
  DomainSpec disk = make_test_case("disk");
  Point q = closest_boundary_point(disk, {2.0, 0.0});
  CHECK(q.x == doctest::Approx(1.0).epsilon(1e-9));
  // the tangential coordinate of a squared-distance minimizer is sqrt(eps)
  CHECK(std::abs(q.y) <= 1e-7);

  Point p{0.3, 0.4};
  Point r = closest_boundary_point(disk, p);
  CHECK(r.norm() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK((r - p * 2.0).norm() <= 1e-7);  // radial projection of |p| = 0.5

  // a flower chord point projects within the chord sagitta, not across a lobe
  DomainSpec flower = make_test_case("flower");
  Point chord{-1.729509550, 0.662019223};
  Point proj = closest_boundary_point(flower, chord);
  CHECK((proj - chord).norm() <= 1e-3);
}

TEST_CASE("domain validation catches open loops and wrong orientation") {
  DomainSpec gap;
  gap.name = "gap";
  gap.boundary = {make_segment({0, 0}, {1, 0}), make_segment({1, 0}, {1, 1}),
                  make_segment({1, 1}, {0, 0.5})};  // does not close
  CHECK_THROWS_AS(validate_domain(gap), InvariantViolation);

  DomainSpec clockwise;
  clockwise.name = "cw";
  clockwise.boundary = {make_reversed(make_circle({0, 0}, 1.0))};
  CHECK_THROWS_AS(validate_domain(clockwise), InvariantViolation);
}

TEST_CASE("containment and diameter of built-in domains") {
  DomainSpec disk = make_test_case("disk");
  CHECK(domain_contains(disk, {0.0, 0.0}));
  CHECK(domain_contains(disk, {0.7, 0.0}));
  CHECK(!domain_contains(disk, {1.1, 0.0}));
  CHECK(disk.diameter == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-3));

  DomainSpec spiral = make_test_case("spiral");
  CHECK(domain_contains(spiral, {-0.05, 1.19}));     // inside the first band
  CHECK(!domain_contains(spiral, {0.0, 0.0}));       // origin excluded
  CHECK(!domain_contains(spiral, {0.0, 1.05}));      // inside the hole
}
