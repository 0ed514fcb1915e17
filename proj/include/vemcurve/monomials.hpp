// Scaled monomial basis ((x - x_K)/h_K)^alpha on a cell, ordered by total
// degree: 1, xi, eta, xi^2, xi*eta, eta^2, ...

#ifndef VEMCURVE_MONOMIALS_HPP
#define VEMCURVE_MONOMIALS_HPP

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "vemcurve/geometry.hpp"

namespace vemcurve {

inline int polynomial_space_dim(int degree) {
  return degree < 0 ? 0 : (degree + 1) * (degree + 2) / 2;
}

struct MonomialBasis {
  int order = 1;
  Point center;
  double scale = 1.0;

  MonomialBasis() = default;
  MonomialBasis(int m, Point x_K, double h_K) : order(m), center(x_K), scale(h_K) {}

  int size() const { return polynomial_space_dim(order); }

  static std::pair<int, int> exponents(int idx);
  static int index(int px, int py) { int d = px + py; return d * (d + 1) / 2 + py; }

  double eval(int idx, Point p) const;
  Vec2 grad(int idx, Point p) const;

  /// Coefficients of the Laplacian of basis member idx in this same basis
  /// (degree drops by two); carries the 1/h_K^2 factor.
  std::vector<std::pair<int, double>> laplacian_coeffs(int idx) const;

  /// Matrix N with N(beta, alpha) the coefficient of basis member beta in the
  /// directional derivative d/d(dir) of basis member alpha.
  Eigen::MatrixXd directional_derivative_matrix(Vec2 dir) const;

  /// Values of all members at p.
  Eigen::VectorXd eval_all(Point p) const;
};

}  // namespace vemcurve

#endif
