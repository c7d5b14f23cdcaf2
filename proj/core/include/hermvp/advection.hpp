#pragma once

#include <optional>

#include "hermvp/coefficients.hpp"
#include "hermvp/lb_operator.hpp"

namespace hermvp {

/// Galerkin system for df/dt - df/dv = -(-1)^k nu L*^k L^k f, optionally
/// without the collision term. Coefficients are in the PolynomialC convention
/// and the expansion is closed by C_{N+1} = 0.
class AdvectionSystem {
 public:
  AdvectionSystem(CoefficientVector initial, std::optional<LBOperator> lb = std::nullopt);

  BasisKind basis_kind() const noexcept { return initial_.basis().kind(); }
  int N() const noexcept { return initial_.N(); }
  const HermiteBasis& basis() const noexcept { return initial_.basis(); }
  const std::optional<LBOperator>& lb() const noexcept { return lb_; }
  const CoefficientVector& initial() const noexcept { return initial_; }

  /// Time derivative for this system's basis.
  CoefficientVector rhs(const CoefficientVector& c) const;

 private:
  CoefficientVector initial_;
  std::optional<LBOperator> lb_;
};

/// SW: dC_n/dt = (n+1) C_{n+1} - C_{n-1}/2 for every n >= 0 (the n = 0 row
/// picks up C_1 from d psi_1/dv), plus the optional diagonal damping.
CoefficientVector rhs_sw(const CoefficientVector& c, const std::optional<LBOperator>& lb = std::nullopt);

/// AW: dC_0/dt = 0, dC_n/dt = -C_{n-1} - nu (-1)^k lambda_n C_n for n >= 1.
CoefficientVector rhs_aw(const CoefficientVector& c, const std::optional<LBOperator>& lb = std::nullopt);

/// Closed-form AW solution for k = 1:
///   C_n(t) = sum_{l<=n} alpha_l^(n) e^{-l nu t},
///   alpha_l^(n) = -alpha_l^(n-1) / (nu (n-l)),  alpha_n^(n) = C_{n,0} - sum_{l<n} alpha_l^(n).
/// Raises ErrorKind::UnsupportedOrder for k != 1.
CoefficientVector closed_form_aw(const CoefficientVector& initial, double nu, int k, double t);

/// Coefficients <f, psi^n> of the exact solution f = e^{-(v+t)^2/2} on the SW
/// basis: sqrt(pi) 2^n gamma_n (-t/2)^n e^{-t^2/4}.
double exact_coeffs_sw(double t, int n);

/// Coefficients <f, psi^n> of the exact solution f = e^{-(v+t)^2} on the AW
/// basis: sqrt(pi) 2^n gamma~_n (-t)^n, NormalizedCstar convention.
double exact_coeffs_aw(double t, int n);

}  // namespace hermvp
