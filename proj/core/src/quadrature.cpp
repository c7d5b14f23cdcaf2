#include "hermvp/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <string>

#include "hermvp/error.hpp"
#include "hermvp/hermite.hpp"

namespace hermvp {

QuadratureRule gauss_hermite(int Q) {
  if (Q < 1) raise(ErrorKind::Validation, "gauss_hermite: need at least one node");
  if (Q > kMaxDegree + 64) {
    raise(ErrorKind::Overflow, "gauss_hermite: Q = " + std::to_string(Q) + " beyond supported range");
  }

  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(Q, Q);
  for (int i = 1; i < Q; ++i) {
    const double b = std::sqrt(0.5 * i);
    jacobi(i, i - 1) = b;
    jacobi(i - 1, i) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    raise(ErrorKind::NonConvergence, "gauss_hermite: Jacobi eigen-decomposition failed");
  }

  QuadratureRule rule;
  rule.nodes.resize(Q);
  rule.weights.resize(Q);
  for (int i = 0; i < Q; ++i) {
    double x = solver.eigenvalues()(i);
    // p_Q' = sqrt(2Q) p_{Q-1} for the orthonormal family.
    for (int it = 0; it < 3; ++it) {
      const auto p = hermite_orthonormal_all(Q, x);
      const double deriv = std::sqrt(2.0 * Q) * p[Q - 1];
      if (deriv == 0.0) break;
      const double step = p[Q] / deriv;
      x -= step;
      if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(x))) break;
    }
    const auto p = hermite_orthonormal_all(Q - 1, x);
    double christoffel = 0.0;
    for (double pk : p) christoffel += pk * pk;
    rule.nodes[i] = x;
    rule.weights[i] = 1.0 / christoffel;
  }
  // Symmetrize so odd moments cancel exactly.
  for (int i = 0; i < Q / 2; ++i) {
    const int j = Q - 1 - i;
    const double x = 0.5 * (rule.nodes[j] - rule.nodes[i]);
    const double w = 0.5 * (rule.weights[i] + rule.weights[j]);
    rule.nodes[i] = -x;
    rule.nodes[j] = x;
    rule.weights[i] = w;
    rule.weights[j] = w;
  }
  if (Q % 2 == 1) rule.nodes[Q / 2] = 0.0;
  return rule;
}

QuadratureRule default_quadrature(int N) { return gauss_hermite(N + 8); }

}  // namespace hermvp
