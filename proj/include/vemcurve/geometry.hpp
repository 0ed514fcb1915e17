// Curved-domain geometry: parametric boundary arcs, the normal-distance map
// delta from the polygonal boundary to the true one, and the shifted boundary
// datum g*.

#ifndef VEMCURVE_GEOMETRY_HPP
#define VEMCURVE_GEOMETRY_HPP

#include <cmath>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace vemcurve {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2() = default;
  Vec2(double x_, double y_) : x(x_), y(y_) {}

  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  Vec2 operator/(double s) const { return {x / s, y / s}; }
  Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }

  double dot(const Vec2& o) const { return x * o.x + y * o.y; }
  double cross(const Vec2& o) const { return x * o.y - y * o.x; }
  double norm() const { return std::hypot(x, y); }
  double squared_norm() const { return x * x + y * y; }
  Vec2 normalized() const { double n = norm(); return {x / n, y / n}; }
  Vec2 rotated90() const { return {-y, x}; }
};

inline Vec2 operator*(double s, const Vec2& v) { return v * s; }

using Point = Vec2;

/// A regular parametric arc t in [t0,t1] -> (x(t),y(t)) with analytic derivative.
struct ParametricCurve {
  double t0 = 0.0;
  double t1 = 1.0;
  std::function<Vec2(double)> position;
  std::function<Vec2(double)> derivative;
  bool closed = false;
  // number of parameter samples used to bracket ray crossings and closest points;
  // raised for long or oscillatory arcs
  int scan_samples = 64;
};

ParametricCurve make_circle(Point center, double radius);
ParametricCurve make_segment(Point a, Point b);
ParametricCurve make_polar_curve(std::function<double(double)> radius,
                                 std::function<double(double)> radius_derivative,
                                 double theta0, double theta1, int scan_samples = 128);
/// Same arc traversed in the opposite direction.
ParametricCurve make_reversed(const ParametricCurve& curve);

/// The curved domain together with the manufactured solution attached to it.
/// The boundary arcs concatenate into a single counter-clockwise loop.
struct DomainSpec {
  std::string name;
  std::vector<ParametricCurve> boundary;
  bool convex = false;

  std::function<double(Point)> solution;            // u
  std::function<Vec2(Point)> solution_gradient;     // grad u
  std::function<double(Point)> load;                // f = -laplacian(u)
  std::function<double(Point)> dirichlet;           // g = u restricted to the boundary

  // dense polyline cached by validate() for containment queries and diameters
  std::vector<Point> containment_polyline;
  double diameter = 0.0;
  double area_estimate = 0.0;
  Point bbox_min, bbox_max;
};

/// Checks arc regularity, loop closure and orientation; fills the cached polyline.
/// Throws InvariantViolation on failure.
void validate_domain(DomainSpec& domain, int polyline_segments = 2048);

/// Equal-arclength polyline of the whole boundary loop, vertices on the curve.
std::vector<Point> boundary_polyline(const DomainSpec& domain, int segments);

bool domain_contains(const DomainSpec& domain, Point p);

struct NormalRay {
  Point origin;
  Vec2 direction;  // unit outward normal of the polygonal boundary

  NormalRay(Point o, Vec2 d) : origin(o), direction(d.normalized()) {}
};

/// The delta of smallest magnitude with origin + delta * direction on the
/// true boundary; positive when the polygon sits inside the domain, negative
/// where it overshoots (concave or inner walls). Throws NoIntersection when
/// no crossing exists within |delta| <= 2 * diam(domain).
double delta_at(const NormalRay& ray, const DomainSpec& domain);

/// Boundary datum evaluated at the projected point: g(x + delta(x) nu_h(x)).
double g_star(const NormalRay& ray, const DomainSpec& domain);

struct BoundarySample {
  Point point;
  Vec2 normal;
};

/// delta_h = max of delta_at over the sample set.
double max_delta(std::span<const BoundarySample> samples, const DomainSpec& domain);

/// Closest point of the boundary loop to p (global over all arcs).
Point closest_boundary_point(const DomainSpec& domain, Point p);

}  // namespace vemcurve

#endif
