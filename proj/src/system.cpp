#include "vemcurve/system.hpp"

#include <Eigen/SparseLU>

#include "vemcurve/exceptions.hpp"

namespace vemcurve {

namespace {

LocalElementOps build_cell_ops(const PolyMesh& mesh, int cell,
                               const AssemblyOptions& options, int m,
                               AssemblyDiagnostics& diag) {
  ElementOptions eopt;
  eopt.stab_scaling = options.stab_scaling;
  auto polygon = mesh.cell_polygon(cell);
  try {
    return build_element_ops(polygon, m, eopt);
  } catch (const DegenerateCell&) {
    if (!options.fan_fallback) throw;
    // reflex boundary cells can defeat the centroid fan; the signed fan stays
    // exact on simple polygons
    eopt.fan_mode = FanMode::signed_fan;
    ++diag.signed_fan_cells;
    return build_element_ops(polygon, m, eopt);
  }
}

}  // namespace

AssembledProblem assemble(const PolyMesh& mesh, const DomainSpec& domain, int m,
                          const AssemblyOptions& options) {
  AssembledProblem out{{Eigen::SparseMatrix<double>(), Eigen::VectorXd(),
                        GlobalDofMap(mesh, m)},
                       {},
                       {}};
  const GlobalDofMap& map = out.system.dof_map;
  NitscheParams params = options.nitsche(m, mesh.h);
  int edge_quad = options.edge_quad_points > 0 ? options.edge_quad_points : m + 2;
  int load_degree =
      options.volume_quad_degree > 0 ? options.volume_quad_degree : 2 * m + 2;

  int n = map.total();
  out.system.rhs = Eigen::VectorXd::Zero(n);
  out.cell_projector.resize(mesh.n_cells());
  out.cell_basis.resize(mesh.n_cells());

  std::vector<Eigen::Triplet<double>> triplets;

  // interior contributions, cells ascending
  for (int c = 0; c < mesh.n_cells(); ++c) {
    LocalElementOps ops = build_cell_ops(mesh, c, options, m, out.diagnostics);
    out.cell_projector[c] = ops.proj_coeff;
    out.cell_basis[c] = ops.basis;
    std::vector<int> dofs = map.cell_dofs(mesh, c);
    const Eigen::MatrixXd& A = ops.stiffness;
    for (int i = 0; i < A.rows(); ++i)
      for (int j = 0; j < A.cols(); ++j)
        if (A(i, j) != 0.0) triplets.emplace_back(dofs[i], dofs[j], A(i, j));

    // load: int_K f Pi0_{m-2} v for m >= 3, int_K f Pi v for m <= 2 (the
    // constant moment projection of m = 2 caps the L2 rate at h^2)
    FanMode load_fan = options.fan_fallback ? FanMode::signed_fan : FanMode::strict;
    if (m >= 3) {
      PolygonQuadrature vol = polygon_rule(ops.polygon, load_degree, load_fan);
      int n_mom = ops.layout.n_moments;
      Eigen::MatrixXd mass = Eigen::MatrixXd::Zero(n_mom, n_mom);
      Eigen::VectorXd frhs = Eigen::VectorXd::Zero(n_mom);
      for (size_t q = 0; q < vol.points.size(); ++q) {
        // moment dofs pair with the scaled monomials
        Eigen::VectorXd vals = ops.basis.mono.eval_all(vol.points[q]).head(n_mom);
        mass += vol.weights[q] * vals * vals.transpose();
        frhs += vol.weights[q] * domain.load(vol.points[q]) * vals;
      }
      Eigen::VectorXd coeffs = mass.partialPivLu().solve(frhs);
      for (int b = 0; b < n_mom; ++b)
        out.system.rhs(dofs[ops.layout.moment_dof(b)]) += ops.area * coeffs(b);
    } else {
      PolygonQuadrature vol = polygon_rule(ops.polygon, load_degree, load_fan);
      Eigen::VectorXd fm = Eigen::VectorXd::Zero(ops.basis.size());
      for (size_t q = 0; q < vol.points.size(); ++q)
        fm += vol.weights[q] * domain.load(vol.points[q]) * ops.basis.eval_all(vol.points[q]);
      Eigen::VectorXd bloc = ops.proj_coeff.transpose() * fm;
      for (int i = 0; i < bloc.size(); ++i) out.system.rhs(dofs[i]) += bloc(i);
    }
  }

  // boundary contributions, edges ascending
  for (int be : mesh.boundary_edges) {
    int cell = mesh.edges[be].owner();
    LocalElementOps ops = build_cell_ops(mesh, cell, options, m, out.diagnostics);
    BoundaryEdgeOps edge =
        build_boundary_edge_ops(mesh, be, ops, domain, params, edge_quad,
                                options.delta_policy, &out.diagnostics.delta_fallbacks);
    for (double d : edge.delta)
      out.diagnostics.max_delta = std::max(out.diagnostics.max_delta, std::abs(d));

    Eigen::MatrixXd local = nitsche_local(edge, params);
    if (params.correction_depth > 0) local += bdt_correction_local(edge, params);
    Eigen::VectorXd bloc = boundary_rhs_local(edge, params);

    std::vector<int> dofs = map.cell_dofs(mesh, cell);
    for (int i = 0; i < local.rows(); ++i) {
      for (int j = 0; j < local.cols(); ++j)
        if (local(i, j) != 0.0) triplets.emplace_back(dofs[i], dofs[j], local(i, j));
      out.system.rhs(dofs[i]) += bloc(i);
    }
  }

  out.system.matrix.resize(n, n);
  out.system.matrix.setFromTriplets(triplets.begin(), triplets.end());
  out.system.matrix.makeCompressed();
  return out;
}

SolutionField field_from_dofs(const PolyMesh& mesh, const GlobalDofMap& map,
                              const std::vector<Eigen::MatrixXd>& cell_projector,
                              const std::vector<ElementBasis>& cell_basis,
                              Eigen::VectorXd dofs) {
  SolutionField field;
  field.dofs = std::move(dofs);
  field.cell_projection.resize(mesh.n_cells());
  for (int c = 0; c < mesh.n_cells(); ++c) {
    std::vector<int> local_dofs = map.cell_dofs(mesh, c);
    Eigen::VectorXd local(local_dofs.size());
    for (size_t i = 0; i < local_dofs.size(); ++i) local(i) = field.dofs(local_dofs[i]);
    LocalPolynomial poly;
    poly.basis = cell_basis[c];
    poly.coeffs = cell_projector[c] * local;
    field.cell_projection[c] = std::move(poly);
  }
  return field;
}

SolutionField solve(const AssembledProblem& problem, const PolyMesh& mesh) {
  const GlobalSystem& sys = problem.system;
  double bnorm = sys.rhs.norm();
  Eigen::VectorXd x;
  double residual = 0.0;
  if (bnorm == 0.0) {
    x = Eigen::VectorXd::Zero(sys.rhs.size());
  } else {
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.compute(sys.matrix);
    if (lu.info() != Eigen::Success) throw SolveFailure("sparse LU factorization failed");
    x = lu.solve(sys.rhs);
    residual = (sys.matrix * x - sys.rhs).norm() / bnorm;
    for (int sweep = 0; sweep < 3 && residual > 1e-10; ++sweep) {
      Eigen::VectorXd r = sys.rhs - sys.matrix * x;
      x += lu.solve(r);
      residual = (sys.matrix * x - sys.rhs).norm() / bnorm;
    }
    if (residual > 1e-8)
      throw SolveFailure("relative residual " + std::to_string(residual) +
                         " after iterative refinement");
  }
  SolutionField field = field_from_dofs(mesh, sys.dof_map, problem.cell_projector,
                                        problem.cell_basis, std::move(x));
  field.residual = residual;
  return field;
}

}  // namespace vemcurve
