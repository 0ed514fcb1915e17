// Per-cell VEM operators of order m: dof layout, the D/B/G matrices, the
// H1 projector onto P_m, dofi-dofi stabilization and the local stiffness.
//
// Dofs of a cell with k vertices: the k vertex values, then per edge the m-1
// interior Gauss-Lobatto point values (in traversal order), then the
// dim P_{m-2} moments against the scaled monomials, normalized by |K|.

#ifndef VEMCURVE_ELEMENT_HPP
#define VEMCURVE_ELEMENT_HPP

#include <Eigen/Dense>
#include <functional>

#include "vemcurve/mesh.hpp"
#include "vemcurve/monomials.hpp"
#include "vemcurve/quadrature.hpp"

namespace vemcurve {

struct DofLayout {
  int m = 1;
  int n_vertices = 0;
  int n_moments = 0;

  DofLayout() = default;
  DofLayout(int order, int cell_vertices)
      : m(order), n_vertices(cell_vertices), n_moments(polynomial_space_dim(order - 2)) {}

  int per_edge() const { return m - 1; }
  int total() const { return n_vertices * m + n_moments; }
  int vertex_dof(int i) const { return i; }
  int edge_dof(int side, int j) const { return n_vertices + side * (m - 1) + j; }
  int moment_dof(int b) const { return n_vertices * m + b; }
};

struct ElementOptions {
  double stab_scaling = 1.0;  // multiplies trace(consistency)/n_dof
  FanMode fan_mode = FanMode::strict;
};

/// Polynomial basis of one element: scaled monomials L2-orthonormalized on
/// the cell. The plain monomial Gram matrices reach condition 1e12 by m = 6,
/// which destroys the projector; orthonormalizing keeps the local systems
/// well-conditioned at every order. Interior moments stay defined against
/// the scaled monomials.
struct ElementBasis {
  MonomialBasis mono;
  Eigen::MatrixXd coeff_to_mono;  // c_mono = coeff_to_mono * c
  Eigen::MatrixXd mono_to_coeff;

  ElementBasis() = default;
  int size() const { return mono.size(); }
  int order() const { return mono.order; }

  Eigen::VectorXd eval_all(Point p) const {
    return coeff_to_mono.transpose() * mono.eval_all(p);
  }
  double eval(int i, Point p) const { return eval_all(p)(i); }
  Vec2 grad(int i, Point p) const;
  Vec2 grad_of(const Eigen::VectorXd& coeffs, Point p) const;
  /// N with (d/d dir)(basis^T c) = basis^T (N c).
  Eigen::MatrixXd directional_derivative_matrix(Vec2 dir) const;
};

struct LocalElementOps {
  std::vector<Point> polygon;
  double area = 0.0;
  Point centroid;
  double diameter = 0.0;
  ElementBasis basis;    // order m, orthonormalized on the cell
  DofLayout layout;

  Eigen::MatrixXd D;           // dofs of the monomials               (N x n_m)
  Eigen::MatrixXd B;           // projector right-hand sides          (n_m x N)
  Eigen::MatrixXd G;           // B*D with the averaging first row    (n_m x n_m)
  Eigen::MatrixXd Gtilde;      // monomial stiffness, first row zero  (n_m x n_m)
  Eigen::MatrixXd proj_coeff;  // polynomial coefficients from dofs   (n_m x N)
  Eigen::MatrixXd proj_dof;    // D * proj_coeff                      (N x N)
  Eigen::MatrixXd consistency; // proj^T Gtilde proj
  Eigen::MatrixXd stability;   // tau (I-Pi)^T (I-Pi)
  Eigen::MatrixXd stiffness;   // a_h^K
  double stab_scale = 0.0;     // tau

  Eigen::MatrixXd moment_proj; // P^0_{m-2} coefficients from dofs (m >= 2)

  /// Lagrange values of the edge trace at a point of side `side` with edge
  /// coordinate s in [-1,1]; columns follow the local dof numbering.
  Eigen::RowVectorXd edge_trace_row(int side, double s) const;
};

LocalElementOps build_element_ops(const std::vector<Point>& polygon, int m,
                                  const ElementOptions& options = {});

/// Plain scaled-monomial wrapper (identity coefficient maps).
ElementBasis monomial_element_basis(const MonomialBasis& mono);

/// Local stiffness a_h^K (consistency plus stabilization) of prebuilt ops.
inline const Eigen::MatrixXd& local_stiffness(const LocalElementOps& ops) {
  return ops.stiffness;
}

/// A polynomial on one cell in the element basis.
struct LocalPolynomial {
  ElementBasis basis;
  Eigen::VectorXd coeffs;

  double eval(Point p) const { return basis.eval_all(p).dot(coeffs); }
  Vec2 grad(Point p) const { return basis.grad_of(coeffs, p); }
};

/// L2 projection of f onto P_r on the cell (r <= m), by mass-matrix solve.
LocalPolynomial l2_project_element(const std::vector<Point>& polygon, int m, int r,
                                   const std::function<double(Point)>& f,
                                   FanMode fan_mode = FanMode::strict);

/// Global dof indices: vertices, then edge-interior points (ordered along the
/// canonical edge direction v0 -> v1), then cell moments.
struct GlobalDofMap {
  int m = 1;
  int n_vertices = 0;
  int n_edges = 0;
  int n_cells = 0;

  GlobalDofMap() = default;
  GlobalDofMap(const PolyMesh& mesh, int order)
      : m(order), n_vertices(mesh.n_vertices()), n_edges(mesh.n_edges()),
        n_cells(mesh.n_cells()) {}

  int moments_per_cell() const { return polynomial_space_dim(m - 2); }
  int total() const {
    return n_vertices + n_edges * (m - 1) + n_cells * moments_per_cell();
  }
  int vertex_dof(int v) const { return v; }
  int edge_dof(int e, int j) const { return n_vertices + e * (m - 1) + j; }
  int moment_dof(int c, int b) const {
    return n_vertices + n_edges * (m - 1) + c * moments_per_cell() + b;
  }
  /// local -> global map for one cell (handles edge orientation reversal)
  std::vector<int> cell_dofs(const PolyMesh& mesh, int cell) const;
};

/// Dof vector of the interpolant u_I (vertex/edge values and moments of u).
Eigen::VectorXd interpolate(const std::function<double(Point)>& u, const PolyMesh& mesh,
                            const GlobalDofMap& map, FanMode fan_mode = FanMode::strict);

/// Interior Gauss-Lobatto points of an edge, in the direction a -> b.
std::vector<Point> edge_interior_points(Point a, Point b, int m);

}  // namespace vemcurve

#endif
