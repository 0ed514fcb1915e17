// Energy norm (H1 seminorm plus h^{-1}-weighted boundary L2), relative errors
// of the discrete solution, and empirical convergence orders.

#ifndef VEMCURVE_ERRORS_HPP
#define VEMCURVE_ERRORS_HPP

#include <functional>
#include <vector>

#include "vemcurve/system.hpp"

namespace vemcurve {

struct ErrorQuadrature {
  int volume_degree = -1;  // < 0: 2m + 2
  int edge_points = -1;    // < 0: m + 2
  FanMode fan_mode = FanMode::signed_fan;
};

/// |||phi||| of a callable pair on the mesh: sqrt(|phi|_1^2 + h^{-1} ||phi||_{0,bnd}^2).
double energy_norm(const PolyMesh& mesh, const std::function<double(Point)>& value,
                   const std::function<Vec2(Point)>& gradient, int volume_degree,
                   int edge_points, FanMode fan_mode = FanMode::signed_fan);

struct ErrorReport {
  double h = 0.0;
  int n_vertices = 0;
  int n_dofs = 0;
  double energy_abs = 0.0;
  double energy_rel = 0.0;
  double l2_abs = 0.0;
  double l2_rel = 0.0;
  // |||u_I - u_h||| / |||u|||, the superclose discrete gap; this is the
  // quantity the energy tables of convergence studies of this family track
  // (the true H1 error of low orders sits at the best-approximation floor,
  // orders of magnitude above those published values)
  double energy_superclose_rel = 0.0;
};

/// Errors of the solution field against the manufactured solution. The H1
/// part uses grad u - grad Pi u_h; the boundary part uses the dof trace of
/// u_h; the L2 part uses Pi u_h inside cells.
ErrorReport compute_errors(const PolyMesh& mesh, const GlobalDofMap& map,
                           const SolutionField& field, const DomainSpec& exact,
                           const ErrorQuadrature& quad = {});

/// Same, plus the superclose gap (needs the per-cell projector maps).
ErrorReport compute_errors(const PolyMesh& mesh, const AssembledProblem& problem,
                           const SolutionField& field, const DomainSpec& exact,
                           const ErrorQuadrature& quad = {});

struct SlopeSummary {
  double energy_vs_h = 0.0;    // least-squares slope of log e^S vs log h
  double energy_vs_dofs = 0.0; // decay exponent q in e^S ~ N_DoFs^{-q}
  double l2_vs_h = 0.0;
  double l2_vs_dofs = 0.0;
  std::vector<double> pairwise_energy_vs_h;
  std::vector<double> pairwise_l2_vs_h;
};

/// Throws InsufficientData with fewer than three reports.
SlopeSummary convergence_slopes(const std::vector<ErrorReport>& reports);

}  // namespace vemcurve

#endif
