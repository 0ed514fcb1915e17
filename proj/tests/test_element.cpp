#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "vemcurve/element.hpp"
#include "vemcurve/exceptions.hpp"
#include "vemcurve/testcases.hpp"
#include "vemcurve/voronoi.hpp"

using namespace vemcurve;
using vemtest::Rng;

namespace {

// Independent dense oracle for the m=1 projector: solves the defining system
//   a(Pi phi, p) = int_bnd phi dp/dnu  for p in {xi, eta},   avg(Pi phi) = avg(phi)
// with exact trapezoid edge integrals (phi linear on edges, grad p constant).
Eigen::VectorXd projector_oracle_m1(const std::vector<Point>& poly,
                                    const Eigen::VectorXd& vertex_dofs) {
  int nv = (int)poly.size();
  MonomialBasis basis(1, polygon_centroid(poly), polygon_diameter(poly));
  PolygonQuadrature vol = polygon_rule(poly, 2);
  Eigen::Matrix3d G = Eigen::Matrix3d::Zero();
  for (int b = 0; b < 3; ++b) {
    double avg = 0.0;
    for (const Point& v : poly) avg += basis.eval(b, v);
    G(0, b) = avg / nv;
  }
  for (int a = 1; a < 3; ++a)
    for (int b = 1; b < 3; ++b)
      for (size_t q = 0; q < vol.points.size(); ++q)
        G(a, b) += vol.weights[q] *
                   basis.grad(a, vol.points[q]).dot(basis.grad(b, vol.points[q]));
  Eigen::Vector3d rhs = Eigen::Vector3d::Zero();
  rhs(0) = vertex_dofs.mean();
  for (int i = 0; i < nv; ++i) {
    Point a = poly[i], b = poly[(i + 1) % nv];
    Vec2 d = b - a;
    double len = d.norm();
    Vec2 normal = Vec2{d.y, -d.x} / len;
    double phi_integral = 0.5 * len * (vertex_dofs(i) + vertex_dofs((i + 1) % nv));
    for (int p = 1; p < 3; ++p)
      rhs(p) += phi_integral * basis.grad(p, a).dot(normal);  // grad p is constant
  }
  return G.fullPivLu().solve(rhs);
}

}  // namespace

TEST_CASE("projector reproduces polynomials from their dofs") {
  Rng rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    auto poly = vemtest::random_polygon(rng);
    for (int m = 1; m <= 6; ++m) {
      LocalElementOps ops = build_element_ops(poly, m);
      Eigen::MatrixXd identity = ops.proj_coeff * ops.D;
      double err = (identity - Eigen::MatrixXd::Identity(ops.basis.size(),
                                                         ops.basis.size()))
                       .cwiseAbs()
                       .maxCoeff();
      CHECK(err <= 1e-11);
    }
  }
}

TEST_CASE("projector fixes the first scaled monomial and constants") {
  std::vector<Point> square = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  LocalElementOps ops = build_element_ops(square, 2);
  int n = ops.basis.size();
  Eigen::VectorXd e1 = Eigen::VectorXd::Unit(n, 1);
  Eigen::VectorXd dofs = vemtest::polynomial_dofs(ops, e1);
  CHECK((ops.proj_coeff * dofs - e1).cwiseAbs().maxCoeff() <= 1e-13);
  Eigen::VectorXd e0 = Eigen::VectorXd::Unit(n, 0);
  CHECK((ops.proj_coeff * vemtest::polynomial_dofs(ops, e0) - e0).cwiseAbs().maxCoeff() <=
        1e-13);
}

TEST_CASE("projector matches the dense least-squares oracle on the unit square") {
  std::vector<Point> square = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  LocalElementOps ops = build_element_ops(square, 1);
  Eigen::VectorXd dofs(4);
  dofs << 0.0, 0.0, 1.0, 0.0;
  Eigen::VectorXd main = ops.proj_coeff * dofs;
  Eigen::VectorXd oracle = projector_oracle_m1(square, dofs);
  CHECK((main - oracle).cwiseAbs().maxCoeff() <= 1e-12);
  // hand value: Pi phi = (x + y)/2 - 1/4, i.e. 1/4 + (xi + eta) h_K / 2 in
  // the scaled basis with h_K = sqrt(2)
  CHECK(main(0) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(main(1) == doctest::Approx(std::sqrt(2.0) / 2.0 * 0.5).epsilon(1e-12));
  CHECK(main(2) == doctest::Approx(std::sqrt(2.0) / 2.0 * 0.5).epsilon(1e-12));

  // random polygons against the same oracle
  Rng rng(23);
  for (int trial = 0; trial < 40; ++trial) {
    auto poly = vemtest::random_polygon(rng);
    LocalElementOps rops = build_element_ops(poly, 1);
    Eigen::VectorXd rd(poly.size());
    for (int i = 0; i < rd.size(); ++i) rd(i) = rng.uniform(-2.0, 2.0);
    CHECK((rops.proj_coeff * rd - projector_oracle_m1(poly, rd)).cwiseAbs().maxCoeff() <=
          1e-11);
  }
}

TEST_CASE("G matches the quadrature stiffness and the projector is idempotent") {
  Rng rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    auto poly = vemtest::random_polygon(rng);
    int m = rng.integer(1, 6);
    LocalElementOps ops = build_element_ops(poly, m);
    // rows 1.. of G = B D come from the boundary/moment route; they must
    // agree with the independently quadratured monomial stiffness
    double gnorm = ops.Gtilde.norm();
    CHECK((ops.G - ops.Gtilde).bottomRows(ops.basis.size() - 1).norm() <= 1e-11 * gnorm);
    CHECK((ops.proj_dof * ops.proj_dof - ops.proj_dof).cwiseAbs().maxCoeff() <= 1e-11);
  }
}

TEST_CASE("dof matrix has full column rank (unisolvence)") {
  Rng rng(37);
  for (int trial = 0; trial < 30; ++trial) {
    auto poly = vemtest::random_polygon(rng);
    int m = rng.integer(1, 5);
    LocalElementOps ops = build_element_ops(poly, m);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(ops.D);
    CHECK(svd.singularValues().minCoeff() >
          1e-10 * svd.singularValues().maxCoeff());
  }
}

TEST_CASE("m-consistency: a_h(p, q) equals the exact gradient integral") {
  Rng rng(43);
  for (int trial = 0; trial < 40; ++trial) {
    auto poly = vemtest::random_polygon(rng);
    int m = rng.integer(1, 6);
    LocalElementOps ops = build_element_ops(poly, m);
    int n = ops.basis.size();
    Eigen::VectorXd pc(n), qc(n);
    for (int i = 0; i < n; ++i) {
      pc(i) = rng.uniform(-1.0, 1.0);
      qc(i) = rng.uniform(-1.0, 1.0);
    }
    Eigen::VectorXd pd = vemtest::polynomial_dofs(ops, pc);
    Eigen::VectorXd qd = vemtest::polynomial_dofs(ops, qc);
    double discrete = pd.dot(ops.stiffness * qd);
    // independent route: pointwise gradients on a fan quadrature
    PolygonQuadrature rule = polygon_rule(poly, 2 * m);
    double exact = 0.0;
    for (size_t k = 0; k < rule.points.size(); ++k) {
      Vec2 gp{0, 0}, gq{0, 0};
      for (int i = 0; i < n; ++i) {
        gp += ops.basis.grad(i, rule.points[k]) * pc(i);
        gq += ops.basis.grad(i, rule.points[k]) * qc(i);
      }
      exact += rule.weights[k] * gp.dot(gq);
    }
    double scale = std::max(std::abs(exact), pd.norm() * qd.norm() * 1e-3);
    CHECK(std::abs(discrete - exact) <= 1e-11 * scale);
  }
}

TEST_CASE("local stiffness: constants in the kernel, unit square value") {
  std::vector<Point> square = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  for (int m : {1, 2, 3}) {
    LocalElementOps ops = build_element_ops(square, m);
    Eigen::VectorXd ones =
        vemtest::polynomial_dofs(ops, Eigen::VectorXd::Unit(ops.basis.size(), 0));
    CHECK((ops.stiffness * ones).cwiseAbs().maxCoeff() <= 1e-12);
  }
  // p = q = x on the unit square: int |grad x|^2 = 1
  LocalElementOps ops = build_element_ops(square, 1);
  Eigen::VectorXd xd(4);
  xd << 0.0, 1.0, 1.0, 0.0;
  CHECK(xd.dot(ops.stiffness * xd) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("stabilization is positive definite on the projector kernel") {
  Rng rng(53);
  for (int trial = 0; trial < 40; ++trial) {
    auto poly = vemtest::random_polygon(rng);
    int m = rng.integer(1, 4);
    LocalElementOps ops = build_element_ops(poly, m);
    int n = ops.layout.total();
    Eigen::VectorXd w(n);
    for (int i = 0; i < n; ++i) w(i) = rng.uniform(-1.0, 1.0);
    Eigen::VectorXd v = w - ops.proj_dof * w;  // Pi v = 0
    if (v.norm() < 1e-12) continue;
    CHECK(v.dot(ops.stiffness * v) > 0.0);
  }
}

TEST_CASE("stiffness is invariant under translation and scaling") {
  Rng rng(61);
  for (int trial = 0; trial < 20; ++trial) {
    auto poly = vemtest::random_polygon(rng);
    int m = rng.integer(1, 4);
    LocalElementOps base = build_element_ops(poly, m);
    double s = std::pow(10.0, rng.uniform(-3.0, 3.0));
    Vec2 shift{rng.uniform(-100.0, 100.0), rng.uniform(-100.0, 100.0)};
    std::vector<Point> moved = poly;
    for (Point& p : moved) p = p * s + shift;
    LocalElementOps scaled = build_element_ops(moved, m);
    CHECK((base.stiffness - scaled.stiffness).cwiseAbs().maxCoeff() <=
          1e-11 * (1.0 + base.stiffness.cwiseAbs().maxCoeff()));
  }
}

TEST_CASE("interpolation: constants, polynomial reproduction, moments") {
  DomainSpec square = make_test_case("square");
  PolyMesh mesh = generate_voronoi_mesh(square, 24, 10, 5);
  for (int m : {1, 2, 3}) {
    GlobalDofMap map(mesh, m);
    Eigen::VectorXd ones = interpolate([](Point) { return 1.0; }, mesh, map);
    for (int v = 0; v < mesh.n_vertices(); ++v)
      CHECK(ones(map.vertex_dof(v)) == doctest::Approx(1.0));
    for (int c = 0; c < mesh.n_cells() && m >= 2; ++c)
      CHECK(ones(map.moment_dof(c, 0)) == doctest::Approx(1.0).epsilon(1e-12));

    // u in P_m: the stabilization term of u_I vanishes
    auto u = [m](Point p) {
      return 1.0 + p.x - 0.5 * p.y + (m >= 2 ? 0.75 * p.x * p.y : 0.0) +
             (m >= 3 ? 0.2 * p.x * p.x * p.y : 0.0);
    };
    Eigen::VectorXd ui = interpolate(u, mesh, map);
    for (int c = 0; c < mesh.n_cells(); ++c) {
      LocalElementOps ops = build_element_ops(mesh.cell_polygon(c), m);
      auto dofs = map.cell_dofs(mesh, c);
      Eigen::VectorXd local(dofs.size());
      for (size_t i = 0; i < dofs.size(); ++i) local(i) = ui(dofs[i]);
      Eigen::VectorXd kernel = local - ops.proj_dof * local;
      CHECK(kernel.cwiseAbs().maxCoeff() <= 1e-11 * (1.0 + local.cwiseAbs().maxCoeff()));
    }
  }
}

TEST_CASE("l2 projection: reproduction, hand value, zero") {
  std::vector<Point> square = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};

  // f in P_r comes back with its own coefficients
  Rng rng(71);
  for (int trial = 0; trial < 20; ++trial) {
    auto poly = vemtest::random_polygon(rng);
    int m = rng.integer(1, 4);
    int r = rng.integer(0, m);
    MonomialBasis basis(r, polygon_centroid(poly), polygon_diameter(poly));
    Eigen::VectorXd coeffs(basis.size());
    for (int i = 0; i < coeffs.size(); ++i) coeffs(i) = rng.uniform(-1.0, 1.0);
    auto f = [&](Point p) { return basis.eval_all(p).dot(coeffs); };
    LocalPolynomial proj = l2_project_element(poly, m, r, f);
    CHECK((proj.coeffs - coeffs).cwiseAbs().maxCoeff() <= 1e-12);
  }

  // x^2 projected onto P_1 over the unit square is x - 1/6
  LocalPolynomial line =
      l2_project_element(square, 2, 1, [](Point p) { return p.x * p.x; });
  for (double x : {0.0, 0.3, 1.0})
    CHECK(line.eval({x, 0.5}) == doctest::Approx(x - 1.0 / 6.0).epsilon(1e-12));

  LocalPolynomial zero = l2_project_element(square, 2, 2, [](Point) { return 0.0; });
  CHECK(zero.coeffs.cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("degenerate cell raises SingularG or DegenerateCell") {
  std::vector<Point> sliver = {{0, 0}, {1, 0}, {2.0, 1e-15}};
  CHECK_THROWS(build_element_ops(sliver, 2));
}
