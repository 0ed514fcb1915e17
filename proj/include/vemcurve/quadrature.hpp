// 1D Gauss-Legendre / Gauss-Lobatto rules and polygon quadrature by
// centroid-fan triangulation.

#ifndef VEMCURVE_QUADRATURE_HPP
#define VEMCURVE_QUADRATURE_HPP

#include <vector>

#include "vemcurve/geometry.hpp"

namespace vemcurve {

/// Nodes in [-1,1] with weights summing to 2.
struct QuadratureRule1D {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule, exact on P_{2n-1}.
QuadratureRule1D gauss_legendre(int n);

/// n-point Gauss-Lobatto rule (endpoints included), exact on P_{2n-3}.
QuadratureRule1D gauss_lobatto(int n);

/// Area-weighted points on a polygon, exact on P_degree.
struct PolygonQuadrature {
  std::vector<Point> points;
  std::vector<double> weights;
};

enum class FanMode {
  strict,      // throw DegenerateCell on an inverted centroid-fan triangle
  signed_fan,  // keep signed triangle weights (exact on any simple polygon)
};

PolygonQuadrature polygon_rule(const std::vector<Point>& polygon, int degree,
                               FanMode mode = FanMode::strict);

double polygon_area(const std::vector<Point>& polygon);
Point polygon_centroid(const std::vector<Point>& polygon);
double polygon_diameter(const std::vector<Point>& polygon);

}  // namespace vemcurve

#endif
