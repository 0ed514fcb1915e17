// Shared helpers for the test suite: deterministic random polygons and
// independent brute-force integrals.

#ifndef VEMCURVE_TESTS_SUPPORT_HPP
#define VEMCURVE_TESTS_SUPPORT_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "vemcurve/element.hpp"
#include "vemcurve/geometry.hpp"
#include "vemcurve/quadrature.hpp"
#include "vemcurve/system.hpp"

namespace vemtest {

using namespace vemcurve;

struct Rng {
  std::mt19937_64 gen;
  explicit Rng(std::uint64_t seed) : gen(seed) {}
  double uniform(double a, double b) { return a + (b - a) * ((gen() >> 11) * 0x1.0p-53); }
  int integer(int a, int b) { return a + (int)(gen() % (std::uint64_t)(b - a + 1)); }
};

// shape-regular star polygon: sorted angles with a minimum gap, jittered radii
inline std::vector<Point> random_polygon(Rng& rng, int min_vertices = 3,
                                         int max_vertices = 9) {
  int n = rng.integer(min_vertices, max_vertices);
  std::vector<double> angles(n);
  for (;;) {  // resample until the angular gaps keep the shape regular
    for (int i = 0; i < n; ++i) angles[i] = rng.uniform(0.0, 2.0 * M_PI);
    std::sort(angles.begin(), angles.end());
    double min_gap = angles[0] + 2.0 * M_PI - angles[n - 1];
    for (int i = 1; i < n; ++i) min_gap = std::min(min_gap, angles[i] - angles[i - 1]);
    if (min_gap > 2.0 * M_PI / (3.0 * n)) break;
  }
  double scale = std::pow(10.0, rng.uniform(-1.0, 1.0));
  Point center{rng.uniform(-5.0, 5.0), rng.uniform(-5.0, 5.0)};
  std::vector<Point> poly(n);
  for (int i = 0; i < n; ++i) {
    double r = scale * rng.uniform(0.65, 1.0);
    poly[i] = center + Vec2{r * std::cos(angles[i]), r * std::sin(angles[i])};
  }
  return poly;
}

// exact integral of x^p y^q over a polygon via Green's theorem and 1D Gauss
inline double polygon_monomial_integral(const std::vector<Point>& poly, int p, int q) {
  QuadratureRule1D rule = gauss_legendre((p + q) / 2 + 2);
  double total = 0.0;
  for (size_t i = 0; i < poly.size(); ++i) {
    Point a = poly[i], b = poly[(i + 1) % poly.size()];
    // int x^{p+1}/(p+1) y^q dy along the edge
    double dy = b.y - a.y;
    if (dy == 0.0) continue;
    for (size_t k = 0; k < rule.nodes.size(); ++k) {
      double t = 0.5 * (rule.nodes[k] + 1.0);
      double x = a.x + (b.x - a.x) * t;
      double y = a.y + (b.y - a.y) * t;
      total += 0.5 * rule.weights[k] * dy * std::pow(x, p + 1) * std::pow(y, q) / (p + 1);
    }
  }
  return total;
}

// brute-force integral of f over a polygon (independent of polygon_rule):
// Green's theorem reduction of int f to an edge integral of F(x,y) = int_0^y f(x,t) dt
// is awkward for generic f, so subdivide fan triangles uniformly instead
inline double brute_polygon_integral(const std::vector<Point>& poly,
                                     const std::function<double(Point)>& f,
                                     int subdivisions = 200) {
  Point c = polygon_centroid(poly);
  double total = 0.0;
  for (size_t i = 0; i < poly.size(); ++i) {
    Point a = poly[i], b = poly[(i + 1) % poly.size()];
    double tri2 = (a - c).cross(b - c);
    int n = subdivisions;
    for (int r = 0; r < n; ++r)
      for (int s = 0; s + r < n; ++s) {
        // two sub-triangles of the (r,s) lattice cell, midpoint rule
        double u1 = (r + 1.0 / 3.0) / n, v1 = (s + 1.0 / 3.0) / n;
        total += f(c + (a - c) * u1 + (b - c) * v1) * tri2 / (2.0 * n * n);
        if (s + r + 1 < n) {
          double u2 = (r + 2.0 / 3.0) / n, v2 = (s + 2.0 / 3.0) / n;
          total += f(c + (a - c) * u2 + (b - c) * v2) * tri2 / (2.0 * n * n);
        }
      }
  }
  return total;
}

// dof vector of a polynomial given by coefficients in the element basis
inline Eigen::VectorXd polynomial_dofs(const LocalElementOps& ops,
                                       const Eigen::VectorXd& coeffs) {
  return ops.D * coeffs;
}

inline SolutionField interpolant_field(const PolyMesh& mesh, const GlobalDofMap& map,
                                       const AssembledProblem& problem,
                                       const std::function<double(Point)>& u) {
  return field_from_dofs(mesh, map, problem.cell_projector, interpolate(u, mesh, map));
}

}  // namespace vemtest

#endif
