// Nitsche boundary terms and the normal-projection correction on boundary
// edges: consistency/symmetry/penalty matrices, the delta-weighted Taylor
// correction, and the g*-shifted boundary load.

#ifndef VEMCURVE_BOUNDARY_HPP
#define VEMCURVE_BOUNDARY_HPP

#include <Eigen/Dense>
#include <vector>

#include "vemcurve/element.hpp"
#include "vemcurve/geometry.hpp"
#include "vemcurve/mesh.hpp"

namespace vemcurve {

struct NitscheParams {
  double gamma = 10.0;       // penalty, > 0
  int correction_depth = 0;  // k, 0 <= k <= m
  double h = 1.0;            // global mesh parameter
};

inline double default_gamma(int m) { return 10.0 * m * m; }
inline int default_correction_depth(int m) { return m / 2; }

enum class DeltaPolicy {
  strict,         // propagate NoIntersection
  zero_fallback,  // delta := 0 and count the fallback
};

struct BoundaryEdgeOps {
  int edge = -1;
  int cell = -1;  // K_e, the unique cell having this edge
  Point a, b;     // endpoints in the owning cell's traversal order
  double length = 0.0;
  Vec2 normal;    // nu_h, constant on the straight edge

  std::vector<Point> qpoints;
  std::vector<double> qweights;  // include the |e|/2 jacobian
  std::vector<double> delta;     // per quadrature point
  std::vector<double> gstar;     // g(x + delta nu_h)

  Eigen::MatrixXd trace;                        // v_h at qpoints      (nq x N)
  std::vector<Eigen::MatrixXd> normal_derivative;  // d^j Pi v_h, j = 1.. (nq x N)

  const Eigen::MatrixXd& dnu(int j) const { return normal_derivative[j - 1]; }
  int max_derivative() const { return (int)normal_derivative.size(); }
};

/// Assembles the per-edge data. delta and g* are evaluated at each quadrature
/// node via the ray/boundary intersection; fallback_count (when given) counts
/// nodes where no intersection exists and delta fell back to zero. A crossing
/// farther than delta_cap_factor times the edge length signals the ambiguous
/// normal projection of non-convex domains (a ray that misses the local wall)
/// and is treated the same way.
BoundaryEdgeOps build_boundary_edge_ops(const PolyMesh& mesh, int edge,
                                        const LocalElementOps& elem,
                                        const DomainSpec& domain,
                                        const NitscheParams& params,
                                        int quad_points,
                                        DeltaPolicy policy = DeltaPolicy::strict,
                                        int* fallback_count = nullptr,
                                        double delta_cap_factor = 0.5);

/// -<dn Pi u, v> - <u, dn Pi v> + gamma/h <u, v> on the edge (symmetric).
Eigen::MatrixXd nitsche_local(const BoundaryEdgeOps& ops, const NitscheParams& params);

/// -C_k(Pi u, dn Pi v - gamma/h v) on the edge; zero matrix for k = 0.
Eigen::MatrixXd bdt_correction_local(const BoundaryEdgeOps& ops,
                                     const NitscheParams& params);

/// -<g*, dn Pi v - gamma/h v> on the edge.
Eigen::VectorXd boundary_rhs_local(const BoundaryEdgeOps& ops,
                                   const NitscheParams& params);

}  // namespace vemcurve

#endif
