#include "hermvp/lb_operator.hpp"

#include <cmath>
#include <string>

#include "hermvp/error.hpp"

namespace hermvp {

LBOperator::LBOperator(BasisKind kind, int k, double nu, int N)
    : kind_(kind), k_(k), nu_(nu), sign_(k % 2 == 0 ? 1.0 : -1.0) {
  if (k < 1) raise(ErrorKind::Validation, "LBOperator: order k must be >= 1");
  if (!(nu > 0.0) || !std::isfinite(nu)) raise(ErrorKind::Validation, "LBOperator: viscosity nu must be > 0");
  if (N < 0) raise(ErrorKind::Validation, "LBOperator: truncation N must be >= 0");

  const double scale = kind == BasisKind::SW ? std::ldexp(1.0, k) : 1.0;
  eigenvalues_.assign(static_cast<std::size_t>(N) + 1, 0.0);
  for (int n = k; n <= N; ++n) {
    // n (n-1) ... (n-k+1) as a running product.
    double falling = 1.0;
    for (int i = 0; i < k; ++i) falling *= static_cast<double>(n - i);
    const double lambda = sign_ * scale * falling;
    if (!std::isfinite(lambda)) {
      raise(ErrorKind::Overflow, "LBOperator: eigenvalue overflows at n = " + std::to_string(n) +
                                     ", k = " + std::to_string(k));
    }
    eigenvalues_[n] = lambda;
  }
}

LBOperator build_lb(BasisKind kind, int k, double nu, int N) { return LBOperator(kind, k, nu, N); }

CoefficientVector apply_lb(const LBOperator& op, const CoefficientVector& c) {
  if (c.basis().kind() != op.basis_kind() || c.N() != op.N()) {
    raise(ErrorKind::BasisMismatch, std::string("apply_lb: operator is ") + to_string(op.basis_kind()) +
                                        " N=" + std::to_string(op.N()) + ", coefficients are " +
                                        to_string(c.basis().kind()) + " N=" + std::to_string(c.N()));
  }
  CoefficientVector out = c;
  const auto lambda = op.eigenvalues();
  for (std::size_t n = 0; n < out.size(); ++n) out[n] = lambda[n] * c[n];
  return out;
}

std::vector<int> annihilated_moments(const LBOperator& op) {
  if (op.basis_kind() != BasisKind::AW) {
    raise(ErrorKind::UnsupportedBasis,
          "annihilated_moments: the SW operator does not conserve physical velocity moments");
  }
  std::vector<int> out(static_cast<std::size_t>(op.k()));
  for (int m = 0; m < op.k(); ++m) out[m] = m;
  return out;
}

}  // namespace hermvp
