// Global assembly of the corrected Nitsche bilinear form and the sparse solve.

#ifndef VEMCURVE_SYSTEM_HPP
#define VEMCURVE_SYSTEM_HPP

#include <Eigen/Sparse>
#include <vector>

#include "vemcurve/boundary.hpp"
#include "vemcurve/element.hpp"

namespace vemcurve {

struct AssemblyOptions {
  double gamma = -1.0;          // < 0: 10 m^2
  int correction_depth = -1;    // < 0: floor(m/2)
  int edge_quad_points = -1;    // < 0: m + 2
  int volume_quad_degree = -1;  // < 0: 2m + 2 (load integrals)
  double stab_scaling = 1.0;
  DeltaPolicy delta_policy = DeltaPolicy::zero_fallback;
  bool fan_fallback = true;     // retry a signed centroid fan on reflex cells

  NitscheParams nitsche(int m, double h) const {
    return {gamma < 0 ? default_gamma(m) : gamma,
            correction_depth < 0 ? default_correction_depth(m) : correction_depth, h};
  }
};

struct AssemblyDiagnostics {
  int delta_fallbacks = 0;
  int signed_fan_cells = 0;
  double max_delta = 0.0;
};

struct GlobalSystem {
  Eigen::SparseMatrix<double> matrix;
  Eigen::VectorXd rhs;
  GlobalDofMap dof_map;
};

struct AssembledProblem {
  GlobalSystem system;
  std::vector<Eigen::MatrixXd> cell_projector;  // per-cell Pi coefficient maps
  std::vector<ElementBasis> cell_basis;
  AssemblyDiagnostics diagnostics;
};

AssembledProblem assemble(const PolyMesh& mesh, const DomainSpec& domain, int m,
                          const AssemblyOptions& options = {});

struct SolutionField {
  Eigen::VectorXd dofs;
  std::vector<LocalPolynomial> cell_projection;  // Pi u_h per cell
  double residual = 0.0;
};

/// Sparse LU with up to three iterative-refinement sweeps; SolveFailure when
/// the relative residual stays above 1e-8.
SolutionField solve(const AssembledProblem& problem, const PolyMesh& mesh);

/// Wraps a dof vector as a field with its per-cell projections.
SolutionField field_from_dofs(const PolyMesh& mesh, const GlobalDofMap& map,
                              const std::vector<Eigen::MatrixXd>& cell_projector,
                              const std::vector<ElementBasis>& cell_basis,
                              Eigen::VectorXd dofs);

}  // namespace vemcurve

#endif
