#pragma once

#include <vector>

namespace hermvp {

/// Gauss-Hermite rule for \int g(v) e^{-v^2} dv. Exact for polynomials of
/// degree <= 2Q - 1.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  int Q() const noexcept { return static_cast<int>(nodes.size()); }
};

/// Golub-Welsch: eigenvalues of the symmetric Jacobi matrix give the nodes.
/// Each node is then polished by Newton steps on the orthonormal recursion,
/// and weights come from the Christoffel function so they keep full relative
/// accuracy in the tails.
QuadratureRule gauss_hermite(int Q);

/// Q = N + 8 nodes, enough for products H_n H_m with n, m <= N plus a smooth
/// non-polynomial residual.
QuadratureRule default_quadrature(int N);

}  // namespace hermvp
