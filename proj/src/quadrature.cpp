#include "vemcurve/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include "vemcurve/exceptions.hpp"

namespace vemcurve {

namespace {

// Legendre P_n(x) and P_n'(x) by the three-term recurrence
std::pair<double, double> legendre(int n, double x) {
  double p0 = 1.0, p1 = x;
  if (n == 0) return {1.0, 0.0};
  for (int k = 2; k <= n; ++k) {
    double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  double dp = n * (x * p1 - p0) / (x * x - 1.0);
  return {p1, dp};
}

}  // namespace

QuadratureRule1D gauss_legendre(int n) {
  QuadratureRule1D rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n / 2 + n % 2; ++i) {
    double x = -std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double p = 0.0, dp = 0.0;
    int it = 0;
    for (; it < 100; ++it) {
      std::tie(p, dp) = legendre(n, x);
      double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    if (it >= 100) throw NonConvergence("gauss_legendre Newton iteration stalled");
    std::tie(p, dp) = legendre(n, x);
    rule.nodes[i] = x;
    rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[n - 1 - i] = -x;
    rule.weights[n - 1 - i] = rule.weights[i];
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;  // exact centre node
  return rule;
}

QuadratureRule1D gauss_lobatto(int n) {
  QuadratureRule1D rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  double wend = 2.0 / (n * (n - 1.0));
  rule.nodes.front() = -1.0;
  rule.nodes.back() = 1.0;
  rule.weights.front() = rule.weights.back() = wend;
  // interior nodes: roots of P'_{n-1}, found by Newton on dp with
  // d(dp)/dx from the Legendre ODE: (1-x^2) p'' = 2x p' - n(n+1) p
  int m = n - 1;
  for (int i = 1; i <= (n - 1) / 2; ++i) {
    double x = -std::cos(M_PI * i / m);  // Chebyshev initial guess
    double p = 0.0, dp = 0.0;
    int it = 0;
    for (; it < 100; ++it) {
      std::tie(p, dp) = legendre(m, x);
      double d2p = (2.0 * x * dp - m * (m + 1.0) * p) / (1.0 - x * x);
      double dx = dp / d2p;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    if (it >= 100) throw NonConvergence("gauss_lobatto Newton iteration stalled");
    std::tie(p, dp) = legendre(m, x);
    rule.nodes[i] = x;
    rule.weights[i] = 2.0 / (n * (n - 1.0) * p * p);
    rule.nodes[n - 1 - i] = -x;
    rule.weights[n - 1 - i] = rule.weights[i];
  }
  if (n % 2 == 1) {
    int c = n / 2;
    rule.nodes[c] = 0.0;
    auto [p, dp] = legendre(m, 0.0);
    rule.weights[c] = 2.0 / (n * (n - 1.0) * p * p);
  }
  return rule;
}

double polygon_area(const std::vector<Point>& polygon) {
  double a = 0.0;
  for (size_t i = 0; i < polygon.size(); ++i) {
    const Point& p = polygon[i];
    const Point& q = polygon[(i + 1) % polygon.size()];
    a += p.cross(q);
  }
  return 0.5 * a;
}

Point polygon_centroid(const std::vector<Point>& polygon) {
  double a = 0.0;
  Vec2 c{0.0, 0.0};
  for (size_t i = 0; i < polygon.size(); ++i) {
    const Point& p = polygon[i];
    const Point& q = polygon[(i + 1) % polygon.size()];
    double w = p.cross(q);
    a += w;
    c += (p + q) * w;
  }
  return c / (3.0 * a);
}

double polygon_diameter(const std::vector<Point>& polygon) {
  double d2 = 0.0;
  for (size_t i = 0; i < polygon.size(); ++i)
    for (size_t j = i + 1; j < polygon.size(); ++j)
      d2 = std::max(d2, (polygon[i] - polygon[j]).squared_norm());
  return std::sqrt(d2);
}

PolygonQuadrature polygon_rule(const std::vector<Point>& polygon, int degree,
                               FanMode mode) {
  // Duffy-type tensor rule on each fan triangle: a total-degree-d polynomial
  // pulled back to the unit square has u-degree <= d+1 and v-degree <= d.
  int nu = (degree + 3) / 2;
  int nv = (degree + 2) / 2;
  QuadratureRule1D gu = gauss_legendre(std::max(1, nu));
  QuadratureRule1D gv = gauss_legendre(std::max(1, nv));

  Point c = polygon_centroid(polygon);
  double area = polygon_area(polygon);

  PolygonQuadrature rule;
  rule.points.reserve(polygon.size() * gu.nodes.size() * gv.nodes.size());
  rule.weights.reserve(rule.points.capacity());
  for (size_t i = 0; i < polygon.size(); ++i) {
    const Point& a = polygon[i];
    const Point& b = polygon[(i + 1) % polygon.size()];
    double tri2 = (a - c).cross(b - c);  // twice the signed triangle area
    if (mode == FanMode::strict && tri2 <= 1e-12 * std::abs(area))
      throw DegenerateCell("inverted or collapsed centroid-fan triangle");
    if (tri2 == 0.0) continue;
    for (size_t iu = 0; iu < gu.nodes.size(); ++iu) {
      double u = 0.5 * (gu.nodes[iu] + 1.0);
      double wu = 0.5 * gu.weights[iu];
      for (size_t iv = 0; iv < gv.nodes.size(); ++iv) {
        double v = 0.5 * (gv.nodes[iv] + 1.0);
        double wv = 0.5 * gv.weights[iv];
        // map (u,v) -> c + u*((a-c) + v*(b-a)), jacobian u*tri2
        Point p = c + (a - c) * u + (b - a) * (u * v);
        rule.points.push_back(p);
        rule.weights.push_back(wu * wv * u * tri2);
      }
    }
  }
  return rule;
}

}  // namespace vemcurve
