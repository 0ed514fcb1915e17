#include "vemcurve/testcases.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <nlohmann/json.hpp>
#include <random>

#include "vemcurve/exceptions.hpp"

namespace vemcurve {

namespace {

// sin(x)/x and (cos(x) - sin(x)/x)/x^2 with series near zero; both appear in
// the radial derivatives of the manufactured solutions
double sn(double x) {
  if (std::abs(x) < 0.1) {
    double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0 - x2 * x2 * x2 / 5040.0;
  }
  return std::sin(x) / x;
}

double qn(double x) {
  if (std::abs(x) < 0.1) {
    double x2 = x * x;
    return -1.0 / 3.0 + x2 / 30.0 - x2 * x2 / 840.0 + x2 * x2 * x2 / 45360.0;
  }
  return (std::cos(x) - sn(x)) / (x * x);
}

struct RadialParts {
  std::function<double(double)> value;
  std::function<double(double)> d1_over_r;  // u'(r)/r, finite at r = 0
  std::function<double(double)> d2;         // u''(r)
};

void attach_radial_solution(DomainSpec& domain, const RadialParts& parts) {
  domain.solution = [parts](Point p) { return parts.value(p.norm()); };
  domain.solution_gradient = [parts](Point p) {
    double f = parts.d1_over_r(p.norm());
    return Vec2{f * p.x, f * p.y};
  };
  domain.load = [parts](Point p) {
    double r = p.norm();
    return -(parts.d2(r) + parts.d1_over_r(r));
  };
  domain.dirichlet = domain.solution;
}

RadialParts sol1_parts() {
  const double c = 4.0 * M_PI;
  RadialParts parts;
  parts.value = [c](double r) { return std::cos(c * r); };
  parts.d1_over_r = [c](double r) { return -c * c * sn(c * r); };
  parts.d2 = [c](double r) { return -c * c * std::cos(c * r); };
  return parts;
}

RadialParts sol2_parts() {
  // sinc(2.25 r) cos(6.75 pi r) with the normalized sinc(x) = sin(pi x)/(pi x)
  const double a = 2.25 * M_PI;
  const double b = 6.75 * M_PI;
  RadialParts parts;
  parts.value = [=](double r) { return sn(a * r) * std::cos(b * r); };
  parts.d1_over_r = [=](double r) {
    return a * a * qn(a * r) * std::cos(b * r) - b * b * sn(a * r) * sn(b * r);
  };
  parts.d2 = [=](double r) {
    double S = sn(a * r), Q = qn(a * r), C = std::cos(b * r);
    double Spp = -a * a * S - 2.0 * a * a * Q;
    double cross = -2.0 * a * a * b * b * r * r * Q * sn(b * r);
    return Spp * C + cross - b * b * S * C;
  };
  return parts;
}

// spiral bands: the winding with r in [0.9 sqrt(theta), sqrt(theta)]
double spiral_angle(Point p, AngleMode mode) {
  if (mode == AngleMode::principal) {
    if (p.x == 0.0) return std::copysign(0.5 * M_PI, p.y == 0.0 ? 1.0 : p.y);
    return std::atan(p.y / p.x);
  }
  double phi = std::atan2(p.y, p.x);
  if (phi < 0.0) phi += 2.0 * M_PI;
  double r = p.norm();
  double best = phi;
  double best_dist = std::numeric_limits<double>::max();
  for (int n = 0; n <= 4; ++n) {
    double theta = phi + 2.0 * M_PI * n;
    if (theta < 0.5 * M_PI - 0.2 || theta > 8.0 * M_PI + 0.2) continue;
    double rlo = 0.9 * std::sqrt(theta), rhi = std::sqrt(theta);
    double dist = std::max({rlo - r, r - rhi, 0.0});
    if (dist < best_dist) { best_dist = dist; best = theta; }
  }
  return best;
}

void attach_sol3(DomainSpec& domain, AngleMode mode) {
  auto g = [](double phi) { return std::sin(32.0 * phi) * std::cos(96.0 * phi); };
  auto gp = [](double phi) {
    return 32.0 * std::cos(32.0 * phi) * std::cos(96.0 * phi) -
           96.0 * std::sin(32.0 * phi) * std::sin(96.0 * phi);
  };
  auto gpp = [](double phi) {
    return -8192.0 * std::sin(128.0 * phi) + 2048.0 * std::sin(64.0 * phi);
  };
  domain.solution = [g, mode](Point p) { return g(spiral_angle(p, mode)) / p.norm(); };
  domain.solution_gradient = [g, gp, mode](Point p) {
    double r = p.norm(), r2 = r * r;
    double phi = spiral_angle(p, mode);
    double c = p.x / r, s = p.y / r;
    return Vec2{(-gp(phi) * s - g(phi) * c) / r2, (gp(phi) * c - g(phi) * s) / r2};
  };
  domain.load = [g, gpp, mode](Point p) {
    double r = p.norm();
    double phi = spiral_angle(p, mode);
    return -(g(phi) + gpp(phi)) / (r * r * r);
  };
  domain.dirichlet = domain.solution;
}

DomainSpec make_disk() {
  DomainSpec d;
  d.name = "disk";
  d.convex = true;
  d.boundary = {make_circle({0.0, 0.0}, 1.0)};
  attach_radial_solution(d, sol1_parts());
  validate_domain(d);
  return d;
}

DomainSpec make_flower() {
  DomainSpec d;
  d.name = "flower";
  d.convex = false;
  d.boundary = {make_polar_curve([](double t) { return 2.0 + std::sin(9.0 * t); },
                                 [](double t) { return 9.0 * std::cos(9.0 * t); }, 0.0,
                                 2.0 * M_PI, 256)};
  d.boundary[0].closed = true;
  attach_radial_solution(d, sol2_parts());
  validate_domain(d);
  return d;
}

DomainSpec make_spiral(AngleMode mode) {
  DomainSpec d;
  d.name = "spiral";
  d.convex = false;
  double t0 = 0.5 * M_PI, t1 = 8.0 * M_PI;
  ParametricCurve outer =
      make_polar_curve([](double t) { return std::sqrt(t); },
                       [](double t) { return 0.5 / std::sqrt(t); }, t0, t1, 768);
  ParametricCurve inner =
      make_polar_curve([](double t) { return 0.9 * std::sqrt(t); },
                       [](double t) { return 0.45 / std::sqrt(t); }, t0, t1, 768);
  Point outer_end{std::sqrt(t1), 0.0};
  Point inner_end{0.9 * std::sqrt(t1), 0.0};
  Point outer_start{0.0, std::sqrt(t0)};
  Point inner_start{0.0, 0.9 * std::sqrt(t0)};
  d.boundary = {outer, make_segment(outer_end, inner_end), make_reversed(inner),
                make_segment(inner_start, outer_start)};
  attach_sol3(d, mode);
  validate_domain(d, 4096);
  return d;
}

DomainSpec make_square() {
  DomainSpec d;
  d.name = "square";
  d.convex = true;
  d.boundary = {make_segment({0, 0}, {1, 0}), make_segment({1, 0}, {1, 1}),
                make_segment({1, 1}, {0, 1}), make_segment({0, 1}, {0, 0})};
  attach_radial_solution(d, sol1_parts());
  validate_domain(d);
  return d;
}

void attach_named_solution(DomainSpec& d, const std::string& name, AngleMode mode) {
  if (name == "sol1") attach_radial_solution(d, sol1_parts());
  else if (name == "sol2") attach_radial_solution(d, sol2_parts());
  else if (name == "sol3") attach_sol3(d, mode);
  else throw ParseError("unknown solution '" + name + "'");
}

}  // namespace

DomainSpec make_test_case(const std::string& name, AngleMode angle_mode) {
  if (name == "disk") return make_disk();
  if (name == "flower") return make_flower();
  if (name == "spiral") return make_spiral(angle_mode);
  if (name == "square" || name == "unit-square") return make_square();
  throw ParseError("unknown test case '" + name + "'");
}

DomainSpec make_polynomial_square_case(int degree, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto uniform = [&rng]() { return 2.0 * ((rng() >> 11) * 0x1.0p-53) - 1.0; };
  std::vector<std::array<double, 3>> terms;  // coefficient, px, py
  for (int d = 0; d <= degree; ++d)
    for (int py = 0; py <= d; ++py)
      terms.push_back({uniform(), (double)(d - py), (double)py});

  auto power = [](double b, int e) {
    double v = 1.0;
    for (int i = 0; i < e; ++i) v *= b;
    return v;
  };
  DomainSpec d = make_square();
  d.name = "square-poly";
  d.solution = [terms, power](Point p) {
    double v = 0.0;
    for (const auto& t : terms) v += t[0] * power(p.x, (int)t[1]) * power(p.y, (int)t[2]);
    return v;
  };
  d.solution_gradient = [terms, power](Point p) {
    Vec2 g{0.0, 0.0};
    for (const auto& t : terms) {
      int px = (int)t[1], py = (int)t[2];
      if (px > 0) g.x += t[0] * px * power(p.x, px - 1) * power(p.y, py);
      if (py > 0) g.y += t[0] * py * power(p.x, px) * power(p.y, py - 1);
    }
    return g;
  };
  d.load = [terms, power](Point p) {
    double lap = 0.0;
    for (const auto& t : terms) {
      int px = (int)t[1], py = (int)t[2];
      if (px >= 2) lap += t[0] * px * (px - 1) * power(p.x, px - 2) * power(p.y, py);
      if (py >= 2) lap += t[0] * py * (py - 1) * power(p.x, px) * power(p.y, py - 2);
    }
    return -lap;
  };
  d.dirichlet = d.solution;
  return d;
}

DomainSpec domain_from_json(const nlohmann::json& config, AngleMode angle_mode) {
  DomainSpec d;
  try {
    d.name = config.value("name", "custom");
    d.convex = config.value("convex", false);
    for (const auto& curve : config.at("curves")) {
      std::string type = curve.at("type").get<std::string>();
      if (type == "circle") {
        Point c{curve.at("center").at(0).get<double>(), curve.at("center").at(1).get<double>()};
        d.boundary.push_back(make_circle(c, curve.at("radius").get<double>()));
      } else if (type == "segment") {
        Point a{curve.at("from").at(0).get<double>(), curve.at("from").at(1).get<double>()};
        Point b{curve.at("to").at(0).get<double>(), curve.at("to").at(1).get<double>()};
        d.boundary.push_back(make_segment(a, b));
      } else if (type == "polar") {
        double constant = curve.value("constant", 0.0);
        std::vector<std::pair<double, double>> sines, cosines;
        for (const auto& term : curve.value("sin", nlohmann::json::array()))
          sines.emplace_back(term.at(0).get<double>(), term.at(1).get<double>());
        for (const auto& term : curve.value("cos", nlohmann::json::array()))
          cosines.emplace_back(term.at(0).get<double>(), term.at(1).get<double>());
        double th0 = curve.value("theta0", 0.0);
        double th1 = curve.value("theta1", 2.0 * M_PI);
        int scan = curve.value("scan", 256);
        auto radius = [constant, sines, cosines](double t) {
          double r = constant;
          for (auto [k, amp] : sines) r += amp * std::sin(k * t);
          for (auto [k, amp] : cosines) r += amp * std::cos(k * t);
          return r;
        };
        auto dr = [sines, cosines](double t) {
          double v = 0.0;
          for (auto [k, amp] : sines) v += amp * k * std::cos(k * t);
          for (auto [k, amp] : cosines) v -= amp * k * std::sin(k * t);
          return v;
        };
        d.boundary.push_back(make_polar_curve(radius, dr, th0, th1, scan));
      } else {
        throw ParseError("unknown curve type '" + type + "'");
      }
    }
    attach_named_solution(d, config.value("solution", "sol1"), angle_mode);
  } catch (const nlohmann::json::exception& err) {
    throw ParseError(std::string("domain config: ") + err.what());
  }
  validate_domain(d);
  return d;
}

}  // namespace vemcurve
