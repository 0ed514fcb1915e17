#include "vemcurve/boundary.hpp"

#include <cmath>

#include "vemcurve/exceptions.hpp"
#include "vemcurve/quadrature.hpp"

namespace vemcurve {

BoundaryEdgeOps build_boundary_edge_ops(const PolyMesh& mesh, int edge,
                                        const LocalElementOps& elem,
                                        const DomainSpec& domain,
                                        const NitscheParams& params,
                                        int quad_points, DeltaPolicy policy,
                                        int* fallback_count, double delta_cap_factor) {
  const MeshEdge& e = mesh.edges[edge];
  BoundaryEdgeOps ops;
  ops.edge = edge;
  ops.cell = e.owner();

  // endpoints in the owning cell's traversal order; locate the side
  const auto& loop = mesh.cells[ops.cell];
  int side = -1;
  for (size_t i = 0; i < loop.size(); ++i)
    if (mesh.cell_edges[ops.cell][i] == edge) { side = (int)i; break; }
  ops.a = mesh.vertices[loop[side]];
  ops.b = mesh.vertices[loop[(side + 1) % loop.size()]];
  Vec2 d = ops.b - ops.a;
  ops.length = d.norm();
  ops.normal = Vec2{d.y, -d.x} / ops.length;

  int m = elem.layout.m;
  int n_loc = elem.layout.total();
  QuadratureRule1D rule = gauss_legendre(quad_points);
  int nq = quad_points;

  ops.qpoints.resize(nq);
  ops.qweights.resize(nq);
  ops.delta.resize(nq);
  ops.gstar.resize(nq);
  ops.trace.resize(nq, n_loc);

  // normal derivatives of the projection up to max(1, k), zero beyond degree m
  int jmax = std::min(std::max(1, params.correction_depth), m);
  Eigen::MatrixXd dmat = elem.basis.directional_derivative_matrix(ops.normal);
  std::vector<Eigen::MatrixXd> deriv_coeff(jmax);
  deriv_coeff[0] = dmat * elem.proj_coeff;
  for (int j = 1; j < jmax; ++j) deriv_coeff[j] = dmat * deriv_coeff[j - 1];
  ops.normal_derivative.assign(jmax, Eigen::MatrixXd::Zero(nq, n_loc));

  for (int q = 0; q < nq; ++q) {
    double s = 0.5 * (rule.nodes[q] + 1.0);
    Point x = ops.a + d * s;
    ops.qpoints[q] = x;
    ops.qweights[q] = 0.5 * ops.length * rule.weights[q];
    ops.trace.row(q) = elem.edge_trace_row(side, rule.nodes[q]);
    Eigen::VectorXd vals = elem.basis.eval_all(x);
    for (int j = 0; j < jmax; ++j)
      ops.normal_derivative[j].row(q) = vals.transpose() * deriv_coeff[j];

    double delta = 0.0;
    try {
      delta = delta_at(NormalRay(x, ops.normal), domain);
      if (std::abs(delta) > delta_cap_factor * ops.length) {
        if (policy == DeltaPolicy::strict)
          throw NoIntersection("normal crossing lies far beyond the edge scale");
        if (fallback_count) ++(*fallback_count);
        delta = 0.0;
      }
    } catch (const NoIntersection&) {
      if (policy == DeltaPolicy::strict) throw;
      if (fallback_count) ++(*fallback_count);
      delta = 0.0;
    }
    ops.delta[q] = delta;
    ops.gstar[q] = domain.dirichlet(x + ops.normal * delta);
  }
  return ops;
}

Eigen::MatrixXd nitsche_local(const BoundaryEdgeOps& ops, const NitscheParams& params) {
  Eigen::MatrixXd W = Eigen::VectorXd::Map(ops.qweights.data(), ops.qweights.size())
                          .asDiagonal();
  const Eigen::MatrixXd& T = ops.trace;
  const Eigen::MatrixXd& N1 = ops.dnu(1);
  double scale = params.gamma / params.h;
  return -T.transpose() * W * N1 - N1.transpose() * W * T + scale * T.transpose() * W * T;
}

Eigen::MatrixXd bdt_correction_local(const BoundaryEdgeOps& ops,
                                     const NitscheParams& params) {
  int n_loc = (int)ops.trace.cols();
  int nq = (int)ops.trace.rows();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n_loc, n_loc);
  if (params.correction_depth <= 0) return out;

  // Taylor sum at the quadrature nodes; terms beyond the polynomial degree vanish
  Eigen::MatrixXd taylor = Eigen::MatrixXd::Zero(nq, n_loc);
  double factorial = 1.0;
  for (int j = 1; j <= params.correction_depth && j <= ops.max_derivative(); ++j) {
    factorial *= j;
    Eigen::VectorXd dj(nq);
    for (int q = 0; q < nq; ++q) dj(q) = std::pow(ops.delta[q], j) / factorial;
    taylor += dj.asDiagonal() * ops.dnu(j);
  }
  Eigen::MatrixXd W = Eigen::VectorXd::Map(ops.qweights.data(), ops.qweights.size())
                          .asDiagonal();
  Eigen::MatrixXd test = ops.dnu(1) - (params.gamma / params.h) * ops.trace;
  return -test.transpose() * W * taylor;
}

Eigen::VectorXd boundary_rhs_local(const BoundaryEdgeOps& ops,
                                   const NitscheParams& params) {
  Eigen::MatrixXd W = Eigen::VectorXd::Map(ops.qweights.data(), ops.qweights.size())
                          .asDiagonal();
  Eigen::MatrixXd test = ops.dnu(1) - (params.gamma / params.h) * ops.trace;
  Eigen::VectorXd g = Eigen::VectorXd::Map(ops.gstar.data(), ops.gstar.size());
  return -test.transpose() * W * g;
}

}  // namespace vemcurve
