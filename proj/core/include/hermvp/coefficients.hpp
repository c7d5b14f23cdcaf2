#pragma once

#include <functional>
#include <span>
#include <vector>

#include "hermvp/hermite.hpp"
#include "hermvp/quadrature.hpp"

namespace hermvp {

/// PolynomialC: f = (sum_n C_n H_n) * weight, the convention the coefficient
/// recursions are written in. NormalizedCstar: f = sum_n C*_n psi_n, with
/// C*_n = C_n / gamma_n.
enum class Convention { PolynomialC, NormalizedCstar };

class CoefficientVector {
 public:
  CoefficientVector(HermiteBasis basis, Convention convention = Convention::PolynomialC);
  CoefficientVector(HermiteBasis basis, std::vector<double> values,
                    Convention convention = Convention::PolynomialC);

  const HermiteBasis& basis() const noexcept { return basis_; }
  Convention convention() const noexcept { return convention_; }
  int N() const noexcept { return basis_.N(); }
  std::size_t size() const noexcept { return values_.size(); }

  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }
  double operator[](std::size_t n) const { return values_[n]; }
  double& operator[](std::size_t n) { return values_[n]; }

  /// Copy in the requested convention. Conversion is a per-mode scaling by
  /// gamma_n.
  CoefficientVector in(Convention target) const;
  CoefficientVector to_polynomial() const { return in(Convention::PolynomialC); }
  CoefficientVector to_normalized() const { return in(Convention::NormalizedCstar); }

 private:
  HermiteBasis basis_;
  std::vector<double> values_;
  Convention convention_;
};

/// Project f(v) onto the basis: AW uses h = f e^{v^2}, SW uses h = f e^{v^2/2},
/// and C_n = (sqrt(pi) 2^n n!)^{-1} \int h H_n e^{-v^2} dv by quadrature.
/// Result is in the PolynomialC convention. Requires quad.Q() > N.
CoefficientVector project(const std::function<double(double)>& f, const HermiteBasis& basis,
                          const QuadratureRule& quad);

/// \int h^2 e^{-v^2} dv = sum_n C_n^2 sqrt(pi) 2^n n! for the polynomial part h.
/// Accepts either convention.
double weighted_norm_sq(const CoefficientVector& c);

/// Value of the represented function f(v) = sum_n C_n H_n(v) * weight(v).
double evaluate(const CoefficientVector& c, double v);

}  // namespace hermvp
