#include "vemcurve/geometry.hpp"

#include <algorithm>
#include <limits>

#include "vemcurve/exceptions.hpp"

namespace vemcurve {

ParametricCurve make_circle(Point center, double radius) {
  ParametricCurve c;
  c.t0 = 0.0;
  c.t1 = 2.0 * M_PI;
  c.position = [center, radius](double t) {
    return Point{center.x + radius * std::cos(t), center.y + radius * std::sin(t)};
  };
  c.derivative = [radius](double t) {
    return Vec2{-radius * std::sin(t), radius * std::cos(t)};
  };
  c.closed = true;
  c.scan_samples = 64;
  return c;
}

ParametricCurve make_segment(Point a, Point b) {
  ParametricCurve c;
  c.t0 = 0.0;
  c.t1 = 1.0;
  c.position = [a, b](double t) { return a + (b - a) * t; };
  c.derivative = [a, b](double) { return b - a; };
  c.scan_samples = 8;
  return c;
}

ParametricCurve make_polar_curve(std::function<double(double)> radius,
                                 std::function<double(double)> radius_derivative,
                                 double theta0, double theta1, int scan_samples) {
  ParametricCurve c;
  c.t0 = theta0;
  c.t1 = theta1;
  c.position = [radius](double t) {
    double r = radius(t);
    return Point{r * std::cos(t), r * std::sin(t)};
  };
  c.derivative = [radius, radius_derivative](double t) {
    double r = radius(t), dr = radius_derivative(t);
    return Vec2{dr * std::cos(t) - r * std::sin(t), dr * std::sin(t) + r * std::cos(t)};
  };
  c.scan_samples = scan_samples;
  return c;
}

ParametricCurve make_reversed(const ParametricCurve& curve) {
  ParametricCurve c;
  c.t0 = curve.t0;
  c.t1 = curve.t1;
  double a = curve.t0, b = curve.t1;
  auto pos = curve.position;
  auto der = curve.derivative;
  c.position = [pos, a, b](double t) { return pos(a + b - t); };
  c.derivative = [der, a, b](double t) { return der(a + b - t) * -1.0; };
  c.scan_samples = curve.scan_samples;
  return c;
}

namespace {

// cumulative arclength table of one arc, by uniform parameter sampling
struct ArcTable {
  std::vector<double> params;
  std::vector<double> cumlen;
  double total = 0.0;
};

ArcTable tabulate_arc(const ParametricCurve& arc, int samples) {
  ArcTable tab;
  tab.params.resize(samples + 1);
  tab.cumlen.resize(samples + 1);
  Point prev = arc.position(arc.t0);
  tab.params[0] = arc.t0;
  tab.cumlen[0] = 0.0;
  for (int i = 1; i <= samples; ++i) {
    double t = arc.t0 + (arc.t1 - arc.t0) * i / samples;
    Point p = arc.position(t);
    tab.params[i] = t;
    tab.cumlen[i] = tab.cumlen[i - 1] + (p - prev).norm();
    prev = p;
  }
  tab.total = tab.cumlen.back();
  return tab;
}

double param_at_arclength(const ArcTable& tab, double s) {
  auto it = std::lower_bound(tab.cumlen.begin(), tab.cumlen.end(), s);
  if (it == tab.cumlen.begin()) return tab.params.front();
  if (it == tab.cumlen.end()) return tab.params.back();
  size_t i = it - tab.cumlen.begin();
  double s0 = tab.cumlen[i - 1], s1 = tab.cumlen[i];
  double w = (s1 > s0) ? (s - s0) / (s1 - s0) : 0.0;
  return tab.params[i - 1] + w * (tab.params[i] - tab.params[i - 1]);
}

double polygon_signed_area(const std::vector<Point>& poly) {
  double a = 0.0;
  for (size_t i = 0; i < poly.size(); ++i) {
    const Point& p = poly[i];
    const Point& q = poly[(i + 1) % poly.size()];
    a += p.cross(q);
  }
  return 0.5 * a;
}

}  // namespace

std::vector<Point> boundary_polyline(const DomainSpec& domain, int segments) {
  std::vector<ArcTable> tables;
  double total = 0.0;
  for (const auto& arc : domain.boundary) {
    tables.push_back(tabulate_arc(arc, std::max(64, 4 * arc.scan_samples)));
    total += tables.back().total;
  }
  std::vector<Point> poly;
  poly.reserve(segments);
  // distribute segments proportionally to arc length, at least one per arc
  int assigned = 0;
  for (size_t k = 0; k < domain.boundary.size(); ++k) {
    int n = (k + 1 == domain.boundary.size())
                ? segments - assigned
                : std::max(1, (int)std::lround(segments * tables[k].total / total));
    n = std::max(1, n);
    assigned += n;
    for (int i = 0; i < n; ++i) {
      double t = param_at_arclength(tables[k], tables[k].total * i / n);
      if (i == 0) t = domain.boundary[k].t0;  // exact arc junction
      poly.push_back(domain.boundary[k].position(t));
    }
  }
  return poly;
}

void validate_domain(DomainSpec& domain, int polyline_segments) {
  if (domain.boundary.empty())
    throw InvariantViolation("domain '" + domain.name + "' has no boundary arcs");

  // regularity and derivative consistency on each arc
  for (size_t k = 0; k < domain.boundary.size(); ++k) {
    const auto& arc = domain.boundary[k];
    int ns = std::max(16, arc.scan_samples);
    double dt = (arc.t1 - arc.t0) / ns;
    for (int i = 0; i <= ns; ++i) {
      double t = arc.t0 + dt * i;
      Vec2 d = arc.derivative(t);
      if (d.norm() == 0.0)
        throw InvariantViolation("arc " + std::to_string(k) + " is not regular at t=" +
                                 std::to_string(t));
      double tm = std::max(arc.t0, t - 0.5 * dt * 1e-3);
      double tp = std::min(arc.t1, t + 0.5 * dt * 1e-3);
      Vec2 fd = (arc.position(tp) - arc.position(tm)) / (tp - tm);
      Vec2 dm = arc.derivative(0.5 * (tm + tp));
      if ((fd - dm).norm() > 1e-4 * (dm.norm() + 1.0))
        throw InvariantViolation("arc " + std::to_string(k) +
                                 " derivative inconsistent with finite differences");
    }
  }

  domain.containment_polyline = boundary_polyline(domain, polyline_segments);
  const auto& poly = domain.containment_polyline;

  Point lo{std::numeric_limits<double>::max(), std::numeric_limits<double>::max()};
  Point hi{-lo.x, -lo.y};
  for (const Point& p : poly) {
    lo.x = std::min(lo.x, p.x); lo.y = std::min(lo.y, p.y);
    hi.x = std::max(hi.x, p.x); hi.y = std::max(hi.y, p.y);
  }
  domain.bbox_min = lo;
  domain.bbox_max = hi;
  domain.diameter = (hi - lo).norm();

  // arcs must concatenate into a closed loop
  for (size_t k = 0; k < domain.boundary.size(); ++k) {
    const auto& arc = domain.boundary[k];
    const auto& next = domain.boundary[(k + 1) % domain.boundary.size()];
    double gap = (arc.position(arc.t1) - next.position(next.t0)).norm();
    if (gap > 1e-12 * domain.diameter)
      throw InvariantViolation("boundary arcs " + std::to_string(k) + " -> " +
                               std::to_string((k + 1) % domain.boundary.size()) +
                               " leave a gap of " + std::to_string(gap));
  }

  double area = polygon_signed_area(poly);
  if (area <= 0.0)
    throw InvariantViolation("boundary loop of '" + domain.name +
                             "' is not counter-clockwise");
  domain.area_estimate = area;
}

bool domain_contains(const DomainSpec& domain, Point p) {
  const auto& poly = domain.containment_polyline;
  if (p.x < domain.bbox_min.x || p.x > domain.bbox_max.x ||
      p.y < domain.bbox_min.y || p.y > domain.bbox_max.y)
    return false;
  // even-odd crossing rule
  bool inside = false;
  size_t n = poly.size();
  for (size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point& a = poly[j];
    const Point& b = poly[i];
    if ((b.y > p.y) != (a.y > p.y)) {
      double xint = b.x + (p.y - b.y) * (a.x - b.x) / (a.y - b.y);
      if (p.x < xint) inside = !inside;
    }
  }
  return inside;
}

namespace {

// ray/arc crossing: root of F(t) = (pos(t) - origin) x direction
struct Crossing {
  double distance;  // along the ray
  double param;
};

void collect_crossings(const ParametricCurve& arc, const NormalRay& ray, double tol,
                       std::vector<Crossing>& out) {
  auto f = [&](double t) { return (arc.position(t) - ray.origin).cross(ray.direction); };
  auto ray_distance = [&](double t) {
    return (arc.position(t) - ray.origin).dot(ray.direction);
  };

  int ns = std::max(16, arc.scan_samples);
  double dt = (arc.t1 - arc.t0) / ns;
  double prev_t = arc.t0;
  double prev_f = f(prev_t);
  for (int i = 1; i <= ns; ++i) {
    double t = (i == ns) ? arc.t1 : arc.t0 + dt * i;
    double ft = f(t);
    if (prev_f == 0.0) {
      out.push_back({ray_distance(prev_t), prev_t});
    } else if (prev_f * ft < 0.0) {
      // hybrid bisection/secant refinement on [prev_t, t]
      double a = prev_t, b = t, fa = prev_f, fb = ft;
      double root = a, froot = fa;
      for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (a + b);
        double sec = (std::abs(fb - fa) > 0.0) ? b - fb * (b - a) / (fb - fa) : mid;
        double cand = (sec > a && sec < b) ? sec : mid;
        double fc = f(cand);
        if (std::abs(fc) < std::abs(froot)) { root = cand; froot = fc; }
        if (std::abs(fc) <= tol || (b - a) <= 1e-15 * std::max(1.0, std::abs(a) + std::abs(b)))
          break;
        if (fa * fc <= 0.0) { b = cand; fb = fc; }
        else { a = cand; fa = fc; }
      }
      out.push_back({ray_distance(root), root});
    }
    prev_t = t;
    prev_f = ft;
  }
  if (prev_f == 0.0) out.push_back({ray_distance(arc.t1), arc.t1});
}

}  // namespace

double delta_at(const NormalRay& ray, const DomainSpec& domain) {
  double diam = domain.diameter;
  double tol = 1e-13 * diam;
  std::vector<Crossing> crossings;
  for (const auto& arc : domain.boundary) collect_crossings(arc, ray, tol, crossings);

  // crossing of smallest magnitude; negative when the boundary sits behind
  // the outward normal (the polygon overshoots the domain at concave or
  // inner walls, where x + delta nu in dOmega has no nonnegative solution
  // nearby)
  double best = std::numeric_limits<double>::max();
  for (const auto& c : crossings)
    if (std::abs(c.distance) < std::abs(best)) best = c.distance;
  if (best == std::numeric_limits<double>::max() || std::abs(best) > 2.0 * diam)
    throw NoIntersection("no boundary crossing along the normal from (" +
                         std::to_string(ray.origin.x) + ", " + std::to_string(ray.origin.y) +
                         ")");
  return best;
}

double g_star(const NormalRay& ray, const DomainSpec& domain) {
  double delta = delta_at(ray, domain);
  return domain.dirichlet(ray.origin + delta * ray.direction);
}

double max_delta(std::span<const BoundarySample> samples, const DomainSpec& domain) {
  double dmax = 0.0;
  for (const auto& s : samples)
    dmax = std::max(dmax, std::abs(delta_at(NormalRay(s.point, s.normal), domain)));
  return dmax;
}

Point closest_boundary_point(const DomainSpec& domain, Point p) {
  double best = std::numeric_limits<double>::max();
  Point best_point{};
  for (const auto& arc : domain.boundary) {
    int ns = std::max(32, 2 * arc.scan_samples);
    double dt = (arc.t1 - arc.t0) / ns;
    auto dist2 = [&](double t) { return (arc.position(t) - p).squared_norm(); };
    // coarse argmin, then golden-section polish inside its bracket
    double dmin = std::numeric_limits<double>::max();
    int imin = 0;
    for (int i = 0; i <= ns; ++i) {
      double d = dist2(arc.t0 + dt * i);
      if (d < dmin) { dmin = d; imin = i; }
    }
    double tmin = arc.t0 + dt * imin;
    double a = std::max(arc.t0, tmin - dt), b = std::min(arc.t1, tmin + dt);
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = dist2(x1), f2 = dist2(x2);
    for (int it = 0; it < 80 && b - a > 1e-16 * (std::abs(a) + 1.0); ++it) {
      if (f1 < f2) { b = x2; x2 = x1; f2 = f1; x1 = b - gr * (b - a); f1 = dist2(x1); }
      else { a = x1; x1 = x2; f1 = f2; x2 = a + gr * (b - a); f2 = dist2(x2); }
    }
    double tb = (f1 < f2) ? x1 : x2;
    if (dist2(tb) > dmin) tb = tmin;
    double db = dist2(tb);
    if (db < best) { best = db; best_point = arc.position(tb); }
  }
  return best_point;
}

}  // namespace vemcurve
