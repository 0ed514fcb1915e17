#include "vemcurve/element.hpp"

#include <cmath>

#include "vemcurve/exceptions.hpp"

namespace vemcurve {

namespace {

double condition_number(const Eigen::MatrixXd& A) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A);
  double smin = svd.singularValues().minCoeff();
  double smax = svd.singularValues().maxCoeff();
  return (smin > 0.0) ? smax / smin : std::numeric_limits<double>::infinity();
}

}  // namespace

Vec2 ElementBasis::grad(int i, Point p) const {
  Vec2 g{0.0, 0.0};
  for (int a = 0; a < size(); ++a) g += mono.grad(a, p) * coeff_to_mono(a, i);
  return g;
}

Vec2 ElementBasis::grad_of(const Eigen::VectorXd& coeffs, Point p) const {
  Eigen::VectorXd cm = coeff_to_mono * coeffs;
  Vec2 g{0.0, 0.0};
  for (int a = 0; a < size(); ++a) g += mono.grad(a, p) * cm(a);
  return g;
}

Eigen::MatrixXd ElementBasis::directional_derivative_matrix(Vec2 dir) const {
  return mono_to_coeff * mono.directional_derivative_matrix(dir) * coeff_to_mono;
}

ElementBasis monomial_element_basis(const MonomialBasis& mono) {
  ElementBasis basis;
  basis.mono = mono;
  basis.coeff_to_mono = Eigen::MatrixXd::Identity(mono.size(), mono.size());
  basis.mono_to_coeff = basis.coeff_to_mono;
  return basis;
}

std::vector<Point> edge_interior_points(Point a, Point b, int m) {
  std::vector<Point> pts;
  if (m < 2) return pts;
  QuadratureRule1D lobatto = gauss_lobatto(m + 1);
  pts.reserve(m - 1);
  for (int j = 1; j < m; ++j) {
    double s = 0.5 * (lobatto.nodes[j] + 1.0);
    pts.push_back(a + (b - a) * s);
  }
  return pts;
}

Eigen::RowVectorXd LocalElementOps::edge_trace_row(int side, double s) const {
  // Lagrange basis on the m+1 Gauss-Lobatto nodes of the side
  int m = layout.m;
  QuadratureRule1D lobatto = gauss_lobatto(m + 1);
  Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(layout.total());
  int nv = layout.n_vertices;
  for (int i = 0; i <= m; ++i) {
    double li = 1.0;
    for (int j = 0; j <= m; ++j) {
      if (j == i) continue;
      li *= (s - lobatto.nodes[j]) / (lobatto.nodes[i] - lobatto.nodes[j]);
    }
    int col;
    if (i == 0) col = layout.vertex_dof(side);
    else if (i == m) col = layout.vertex_dof((side + 1) % nv);
    else col = layout.edge_dof(side, i - 1);
    row(col) += li;
  }
  return row;
}

LocalElementOps build_element_ops(const std::vector<Point>& polygon, int m,
                                  const ElementOptions& options) {
  LocalElementOps ops;
  ops.polygon = polygon;
  ops.area = polygon_area(polygon);
  if (!(ops.area > 0.0)) throw DegenerateCell("cell polygon has non-positive area");
  ops.centroid = polygon_centroid(polygon);
  ops.diameter = polygon_diameter(polygon);
  MonomialBasis mono(m, ops.centroid, ops.diameter);
  int nv = (int)polygon.size();
  ops.layout = DofLayout(m, nv);

  int n_m = mono.size();
  int n_loc = ops.layout.total();
  int n_mom = ops.layout.n_moments;

  PolygonQuadrature vol = polygon_rule(polygon, 2 * m, options.fan_mode);
  QuadratureRule1D lobatto = gauss_lobatto(m + 1);

  // ---- element basis: monomials orthonormalized by the mass Cholesky -------
  Eigen::MatrixXd mass = Eigen::MatrixXd::Zero(n_m, n_m);
  for (size_t q = 0; q < vol.points.size(); ++q) {
    Eigen::VectorXd vals = mono.eval_all(vol.points[q]);
    mass += vol.weights[q] * vals * vals.transpose();
  }
  Eigen::LLT<Eigen::MatrixXd> llt(mass);
  if (llt.info() != Eigen::Success)
    throw SingularMass("monomial mass matrix is not positive definite on this cell");
  Eigen::MatrixXd L = llt.matrixL();
  ops.basis.mono = mono;
  // q = L^{-1} m, so c_mono = L^{-T} c
  ops.basis.coeff_to_mono =
      L.transpose().triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(n_m, n_m));
  ops.basis.mono_to_coeff = L.transpose();

  const Eigen::MatrixXd& P = ops.basis.coeff_to_mono;

  // ---- D: dofs of the basis, assembled in monomial form then mapped --------
  Eigen::MatrixXd D_mono = Eigen::MatrixXd::Zero(n_loc, n_m);
  for (int i = 0; i < nv; ++i)
    D_mono.row(ops.layout.vertex_dof(i)) = mono.eval_all(polygon[i]).transpose();
  for (int side = 0; side < nv && m >= 2; ++side) {
    Point a = polygon[side], b = polygon[(side + 1) % nv];
    for (int j = 1; j < m; ++j) {
      double s = 0.5 * (lobatto.nodes[j] + 1.0);
      Point x = a + (b - a) * s;
      D_mono.row(ops.layout.edge_dof(side, j - 1)) = mono.eval_all(x).transpose();
    }
  }
  if (n_mom > 0) {
    // moments stay defined against the scaled monomials, normalized by |K|
    for (int b = 0; b < n_mom; ++b)
      D_mono.row(ops.layout.moment_dof(b)) = mass.row(b) / ops.area;
  }
  ops.D = D_mono * P;

  // ---- B: -int_K phi lap(p) + int_bnd phi dp/dnu ---------------------------
  Eigen::MatrixXd B_mono = Eigen::MatrixXd::Zero(n_m, n_loc);
  for (int a = 1; a < n_m; ++a)
    for (auto [bidx, coeff] : mono.laplacian_coeffs(a))
      B_mono(a, ops.layout.moment_dof(bidx)) -= coeff * ops.area;
  for (int side = 0; side < nv; ++side) {
    Point pa = polygon[side], pb = polygon[(side + 1) % nv];
    Vec2 d = pb - pa;
    double len = d.norm();
    Vec2 normal = Vec2{d.y, -d.x} / len;
    for (int q = 0; q <= m; ++q) {
      double s = 0.5 * (lobatto.nodes[q] + 1.0);
      Point x = pa + d * s;
      int col;
      if (q == 0) col = ops.layout.vertex_dof(side);
      else if (q == m) col = ops.layout.vertex_dof((side + 1) % nv);
      else col = ops.layout.edge_dof(side, q - 1);
      double w = 0.5 * len * lobatto.weights[q];
      for (int a = 1; a < n_m; ++a)
        B_mono(a, col) += w * mono.grad(a, x).dot(normal);
    }
  }
  ops.B = P.transpose() * B_mono;
  // averaging row: vertex mean for m = 1, zeroth moment otherwise
  ops.B.row(0).setZero();
  if (m == 1) {
    for (int i = 0; i < nv; ++i) ops.B(0, ops.layout.vertex_dof(i)) = 1.0 / nv;
  } else {
    ops.B(0, ops.layout.moment_dof(0)) = 1.0;
  }

  // ---- quadrature stiffness in the element basis ---------------------------
  Eigen::MatrixXd Gt_mono = Eigen::MatrixXd::Zero(n_m, n_m);
  for (size_t q = 0; q < vol.points.size(); ++q) {
    Eigen::MatrixXd g(n_m, 2);
    for (int a = 0; a < n_m; ++a) {
      Vec2 ga = mono.grad(a, vol.points[q]);
      g(a, 0) = ga.x;
      g(a, 1) = ga.y;
    }
    Gt_mono += vol.weights[q] * g * g.transpose();
  }
  ops.Gtilde = P.transpose() * Gt_mono * P;

  // ---- G and the projector --------------------------------------------------
  // the computability identity G = B D holds exactly; with it, Pi D = I holds
  // to solver accuracy, and in the orthonormal basis the system stays
  // well-conditioned at every order
  ops.G = ops.B * ops.D;
  if (condition_number(ops.G) > 1e14)
    throw SingularG("projector system is numerically singular on this cell");
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(ops.G);
  ops.proj_coeff = lu.solve(ops.B);
  ops.proj_coeff += lu.solve(ops.B - ops.G * ops.proj_coeff);
  ops.proj_dof = ops.D * ops.proj_coeff;

  // ---- stiffness -------------------------------------------------------------
  ops.consistency = ops.proj_coeff.transpose() * ops.Gtilde * ops.proj_coeff;
  ops.stab_scale = options.stab_scaling * ops.consistency.trace() / n_loc;
  Eigen::MatrixXd complement = Eigen::MatrixXd::Identity(n_loc, n_loc) - ops.proj_dof;
  ops.stability = ops.stab_scale * complement.transpose() * complement;
  ops.stiffness = ops.consistency + ops.stability;

  // ---- moments -> P^0_{m-2} coefficients (monomial convention) --------------
  if (n_mom > 0) {
    Eigen::MatrixXd mom_mass = mass.topLeftCorner(n_mom, n_mom);
    if (condition_number(mom_mass) > 1e14)
      throw SingularMass("moment mass matrix is numerically singular on this cell");
    Eigen::MatrixXd picker = Eigen::MatrixXd::Zero(n_mom, n_loc);
    for (int b = 0; b < n_mom; ++b) picker(b, ops.layout.moment_dof(b)) = ops.area;
    ops.moment_proj = mom_mass.partialPivLu().solve(picker);
  }
  return ops;
}

LocalPolynomial l2_project_element(const std::vector<Point>& polygon, int m, int r,
                                   const std::function<double(Point)>& f,
                                   FanMode fan_mode) {
  LocalPolynomial poly;
  poly.basis = monomial_element_basis(
      MonomialBasis(r, polygon_centroid(polygon), polygon_diameter(polygon)));
  int n = poly.basis.size();
  PolygonQuadrature vol = polygon_rule(polygon, 2 * m, fan_mode);
  Eigen::MatrixXd mass = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
  for (size_t q = 0; q < vol.points.size(); ++q) {
    Eigen::VectorXd vals = poly.basis.mono.eval_all(vol.points[q]);
    mass += vol.weights[q] * vals * vals.transpose();
    rhs += vol.weights[q] * f(vol.points[q]) * vals;
  }
  if (condition_number(mass) > 1e14)
    throw SingularMass("mass matrix is numerically singular on this cell");
  poly.coeffs = mass.partialPivLu().solve(rhs);
  return poly;
}

std::vector<int> GlobalDofMap::cell_dofs(const PolyMesh& mesh, int cell) const {
  const auto& loop = mesh.cells[cell];
  int nv = (int)loop.size();
  DofLayout layout(m, nv);
  std::vector<int> dofs(layout.total());
  for (int i = 0; i < nv; ++i) dofs[layout.vertex_dof(i)] = vertex_dof(loop[i]);
  for (int side = 0; side < nv && m >= 2; ++side) {
    int e = mesh.cell_edges[cell][side];
    bool forward = (mesh.edges[e].v0 == loop[side]);
    for (int j = 0; j < m - 1; ++j)
      dofs[layout.edge_dof(side, j)] = edge_dof(e, forward ? j : m - 2 - j);
  }
  for (int b = 0; b < moments_per_cell(); ++b)
    dofs[layout.moment_dof(b)] = moment_dof(cell, b);
  return dofs;
}

Eigen::VectorXd interpolate(const std::function<double(Point)>& u, const PolyMesh& mesh,
                            const GlobalDofMap& map, FanMode fan_mode) {
  Eigen::VectorXd dofs = Eigen::VectorXd::Zero(map.total());
  for (int v = 0; v < mesh.n_vertices(); ++v)
    dofs(map.vertex_dof(v)) = u(mesh.vertices[v]);
  int m = map.m;
  if (m >= 2) {
    for (int e = 0; e < mesh.n_edges(); ++e) {
      Point a = mesh.vertices[mesh.edges[e].v0];
      Point b = mesh.vertices[mesh.edges[e].v1];
      auto pts = edge_interior_points(a, b, m);
      for (int j = 0; j < m - 1; ++j) dofs(map.edge_dof(e, j)) = u(pts[j]);
    }
    for (int c = 0; c < mesh.n_cells(); ++c) {
      auto polygon = mesh.cell_polygon(c);
      MonomialBasis basis(m, polygon_centroid(polygon), polygon_diameter(polygon));
      double area = polygon_area(polygon);
      PolygonQuadrature vol = polygon_rule(polygon, 2 * m, fan_mode);
      int n_mom = map.moments_per_cell();
      Eigen::VectorXd mom = Eigen::VectorXd::Zero(n_mom);
      for (size_t q = 0; q < vol.points.size(); ++q)
        mom += (vol.weights[q] / area) * u(vol.points[q]) *
               basis.eval_all(vol.points[q]).head(n_mom);
      for (int b = 0; b < n_mom; ++b) dofs(map.moment_dof(c, b)) = mom(b);
    }
  }
  return dofs;
}

}  // namespace vemcurve
