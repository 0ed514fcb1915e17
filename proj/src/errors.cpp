#include "vemcurve/errors.hpp"

#include <cmath>

#include "vemcurve/exceptions.hpp"
#include "vemcurve/quadrature.hpp"

namespace vemcurve {

namespace {

// dof trace of u_h along a boundary edge, Lagrange on the m+1 Lobatto nodes
// in the canonical edge direction
double edge_trace_value(const PolyMesh& mesh, const GlobalDofMap& map,
                        const Eigen::VectorXd& dofs, int edge, double s,
                        const QuadratureRule1D& lobatto) {
  const MeshEdge& e = mesh.edges[edge];
  int m = map.m;
  double value = 0.0;
  for (int i = 0; i <= m; ++i) {
    double li = 1.0;
    for (int j = 0; j <= m; ++j) {
      if (j == i) continue;
      li *= (s - lobatto.nodes[j]) / (lobatto.nodes[i] - lobatto.nodes[j]);
    }
    double dof;
    if (i == 0) dof = dofs(map.vertex_dof(e.v0));
    else if (i == m) dof = dofs(map.vertex_dof(e.v1));
    else dof = dofs(map.edge_dof(edge, i - 1));
    value += li * dof;
  }
  return value;
}

double lsq_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double n = (double)x.size(), sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sx += x[i]; sy += y[i]; sxx += x[i] * x[i]; sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

double energy_norm(const PolyMesh& mesh, const std::function<double(Point)>& value,
                   const std::function<Vec2(Point)>& gradient, int volume_degree,
                   int edge_points, FanMode fan_mode) {
  double vol_part = 0.0;
  for (int c = 0; c < mesh.n_cells(); ++c) {
    PolygonQuadrature rule = polygon_rule(mesh.cell_polygon(c), volume_degree, fan_mode);
    for (size_t q = 0; q < rule.points.size(); ++q)
      vol_part += rule.weights[q] * gradient(rule.points[q]).squared_norm();
  }
  double bnd_part = 0.0;
  QuadratureRule1D rule = gauss_legendre(edge_points);
  for (int be : mesh.boundary_edges) {
    const MeshEdge& e = mesh.edges[be];
    Point a = mesh.vertices[e.v0], b = mesh.vertices[e.v1];
    double len = (b - a).norm();
    for (int q = 0; q < edge_points; ++q) {
      double s = 0.5 * (rule.nodes[q] + 1.0);
      double v = value(a + (b - a) * s);
      bnd_part += 0.5 * len * rule.weights[q] * v * v;
    }
  }
  return std::sqrt(vol_part + bnd_part / mesh.h);
}

namespace {

struct ErrorParts {
  double err_h1 = 0.0, norm_h1 = 0.0;
  double err_l2 = 0.0, norm_l2 = 0.0;
  double err_bnd = 0.0, norm_bnd = 0.0;
};

// numerator against (value, gradient); pass zero callables to measure the
// field itself
ErrorParts integrate_difference(const PolyMesh& mesh, const GlobalDofMap& map,
                                const SolutionField& field,
                                const std::function<double(Point)>& value,
                                const std::function<Vec2(Point)>& gradient,
                                int volume_degree, int edge_points, FanMode fan_mode) {
  ErrorParts parts;
  for (int c = 0; c < mesh.n_cells(); ++c) {
    PolygonQuadrature rule = polygon_rule(mesh.cell_polygon(c), volume_degree, fan_mode);
    const LocalPolynomial& uh = field.cell_projection[c];
    for (size_t q = 0; q < rule.points.size(); ++q) {
      Point x = rule.points[q];
      double w = rule.weights[q];
      Vec2 g = gradient(x);
      double u = value(x);
      parts.err_h1 += w * (g - uh.grad(x)).squared_norm();
      parts.norm_h1 += w * g.squared_norm();
      double dv = u - uh.eval(x);
      parts.err_l2 += w * dv * dv;
      parts.norm_l2 += w * u * u;
    }
  }
  QuadratureRule1D edge_rule = gauss_legendre(edge_points);
  QuadratureRule1D lobatto = gauss_lobatto(map.m + 1);
  for (int be : mesh.boundary_edges) {
    const MeshEdge& e = mesh.edges[be];
    Point a = mesh.vertices[e.v0], b = mesh.vertices[e.v1];
    double len = (b - a).norm();
    for (int q = 0; q < edge_points; ++q) {
      double s = 0.5 * (edge_rule.nodes[q] + 1.0);
      Point x = a + (b - a) * s;
      double trace = edge_trace_value(mesh, map, field.dofs, be, edge_rule.nodes[q], lobatto);
      double u = value(x);
      double w = 0.5 * len * edge_rule.weights[q];
      parts.err_bnd += w * (u - trace) * (u - trace);
      parts.norm_bnd += w * u * u;
    }
  }
  return parts;
}

}  // namespace

ErrorReport compute_errors(const PolyMesh& mesh, const GlobalDofMap& map,
                           const SolutionField& field, const DomainSpec& exact,
                           const ErrorQuadrature& quad) {
  int m = map.m;
  int volume_degree = quad.volume_degree > 0 ? quad.volume_degree : 2 * m + 2;
  int edge_points = quad.edge_points > 0 ? quad.edge_points : m + 2;

  ErrorParts parts =
      integrate_difference(mesh, map, field, exact.solution, exact.solution_gradient,
                           volume_degree, edge_points, quad.fan_mode);

  ErrorReport report;
  report.h = mesh.h;
  report.n_vertices = mesh.n_vertices();
  report.n_dofs = map.total();
  report.energy_abs = std::sqrt(parts.err_h1 + parts.err_bnd / mesh.h);
  double energy_norm_u = std::sqrt(parts.norm_h1 + parts.norm_bnd / mesh.h);
  report.energy_rel = report.energy_abs / energy_norm_u;
  report.l2_abs = std::sqrt(parts.err_l2);
  report.l2_rel = report.l2_abs / std::sqrt(parts.norm_l2);
  return report;
}

ErrorReport compute_errors(const PolyMesh& mesh, const AssembledProblem& problem,
                           const SolutionField& field, const DomainSpec& exact,
                           const ErrorQuadrature& quad) {
  const GlobalDofMap& map = problem.system.dof_map;
  ErrorReport report = compute_errors(mesh, map, field, exact, quad);

  int m = map.m;
  int volume_degree = quad.volume_degree > 0 ? quad.volume_degree : 2 * m + 2;
  int edge_points = quad.edge_points > 0 ? quad.edge_points : m + 2;
  Eigen::VectorXd gap =
      interpolate(exact.solution, mesh, map, quad.fan_mode) - field.dofs;
  SolutionField gap_field = field_from_dofs(mesh, map, problem.cell_projector,
                                            problem.cell_basis, std::move(gap));
  auto zero_value = [](Point) { return 0.0; };
  auto zero_gradient = [](Point) { return Vec2{0.0, 0.0}; };
  ErrorParts parts = integrate_difference(mesh, map, gap_field, zero_value, zero_gradient,
                                          volume_degree, edge_points, quad.fan_mode);
  double gap_energy = std::sqrt(parts.err_h1 + parts.err_bnd / mesh.h);
  double energy_norm_u = report.energy_abs / std::max(report.energy_rel, 1e-300);
  report.energy_superclose_rel = gap_energy / energy_norm_u;
  return report;
}

SlopeSummary convergence_slopes(const std::vector<ErrorReport>& reports) {
  if (reports.size() < 3)
    throw InsufficientData("convergence slopes require at least three meshes");
  std::vector<double> lh, ld, le, ll;
  for (const auto& r : reports) {
    lh.push_back(std::log(r.h));
    ld.push_back(std::log((double)r.n_dofs));
    le.push_back(std::log(r.energy_rel));
    ll.push_back(std::log(r.l2_rel));
  }
  SlopeSummary s;
  s.energy_vs_h = lsq_slope(lh, le);
  s.l2_vs_h = lsq_slope(lh, ll);
  s.energy_vs_dofs = -lsq_slope(ld, le);
  s.l2_vs_dofs = -lsq_slope(ld, ll);
  for (size_t i = 0; i + 1 < reports.size(); ++i) {
    double dh = lh[i] - lh[i + 1];
    s.pairwise_energy_vs_h.push_back((le[i] - le[i + 1]) / dh);
    s.pairwise_l2_vs_h.push_back((ll[i] - ll[i + 1]) / dh);
  }
  return s;
}

}  // namespace vemcurve
