#include "vemcurve/monomials.hpp"

#include <cmath>

namespace vemcurve {

std::pair<int, int> MonomialBasis::exponents(int idx) {
  int d = 0;
  while ((d + 1) * (d + 2) / 2 <= idx) ++d;
  int py = idx - d * (d + 1) / 2;
  return {d - py, py};
}

double MonomialBasis::eval(int idx, Point p) const {
  auto [px, py] = exponents(idx);
  double xi = (p.x - center.x) / scale;
  double eta = (p.y - center.y) / scale;
  double v = 1.0;
  for (int i = 0; i < px; ++i) v *= xi;
  for (int i = 0; i < py; ++i) v *= eta;
  return v;
}

Vec2 MonomialBasis::grad(int idx, Point p) const {
  auto [px, py] = exponents(idx);
  double xi = (p.x - center.x) / scale;
  double eta = (p.y - center.y) / scale;
  auto pw = [](double b, int e) {
    double v = 1.0;
    for (int i = 0; i < e; ++i) v *= b;
    return v;
  };
  Vec2 g{0.0, 0.0};
  if (px > 0) g.x = px * pw(xi, px - 1) * pw(eta, py) / scale;
  if (py > 0) g.y = py * pw(xi, px) * pw(eta, py - 1) / scale;
  return g;
}

std::vector<std::pair<int, double>> MonomialBasis::laplacian_coeffs(int idx) const {
  auto [px, py] = exponents(idx);
  std::vector<std::pair<int, double>> out;
  double s2 = scale * scale;
  if (px >= 2) out.emplace_back(index(px - 2, py), px * (px - 1) / s2);
  if (py >= 2) out.emplace_back(index(px, py - 2), py * (py - 1) / s2);
  return out;
}

Eigen::MatrixXd MonomialBasis::directional_derivative_matrix(Vec2 dir) const {
  int n = size();
  Eigen::MatrixXd N = Eigen::MatrixXd::Zero(n, n);
  for (int a = 0; a < n; ++a) {
    auto [px, py] = exponents(a);
    if (px > 0) N(index(px - 1, py), a) += dir.x * px / scale;
    if (py > 0) N(index(px, py - 1), a) += dir.y * py / scale;
  }
  return N;
}

Eigen::VectorXd MonomialBasis::eval_all(Point p) const {
  int n = size();
  double xi = (p.x - center.x) / scale;
  double eta = (p.y - center.y) / scale;
  Eigen::VectorXd v(n);
  // degree-ordered recurrence: members of degree d are xi*prev plus the pure eta power
  v(0) = 1.0;
  for (int d = 1; d <= order; ++d) {
    int row = d * (d + 1) / 2;
    int prev = (d - 1) * d / 2;
    for (int j = 0; j < d; ++j) v(row + j) = v(prev + j) * xi;
    v(row + d) = v(prev + d - 1) * eta;
  }
  return v;
}

}  // namespace vemcurve
