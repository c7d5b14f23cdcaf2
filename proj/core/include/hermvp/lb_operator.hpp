#pragma once

#include <span>
#include <vector>

#include "hermvp/coefficients.hpp"
#include "hermvp/hermite.hpp"

namespace hermvp {

/// Lenard-Bernstein-like operator L*^k L^k of order 2k, diagonal on psi_n.
///
///   AW (L = d/dv / 2 + v, L* = d/dv):  lambda_n = (-1)^k n!/(n-k)!
///   SW (L = d/dv + v,     L* = d/dv - v): lambda_n = (-1)^k 2^k n!/(n-k)!
///
/// with lambda_n = 0 for n < k. The stabilized equation carries the term
/// -(-1)^k nu L*^k L^k f, so mode n decays at rate nu * (-1)^k lambda_n >= 0.
class LBOperator {
 public:
  LBOperator(BasisKind kind, int k, double nu, int N);

  BasisKind basis_kind() const noexcept { return kind_; }
  int k() const noexcept { return k_; }
  double nu() const noexcept { return nu_; }
  int N() const noexcept { return static_cast<int>(eigenvalues_.size()) - 1; }

  std::span<const double> eigenvalues() const noexcept { return eigenvalues_; }
  double eigenvalue(int n) const { return eigenvalues_.at(static_cast<std::size_t>(n)); }

  /// (-1)^k lambda_n, the non-negative per-mode damping factor (without nu).
  double damping(int n) const { return sign_ * eigenvalue(n); }

 private:
  BasisKind kind_;
  int k_;
  double nu_;
  double sign_;
  std::vector<double> eigenvalues_;
};

LBOperator build_lb(BasisKind kind, int k, double nu, int N);

/// D^(k)_n = lambda_n C_n. Diagonal, so the result is in the same convention
/// as the input.
CoefficientVector apply_lb(const LBOperator& op, const CoefficientVector& c);

/// Velocity moments \int v^m f dv left unchanged by the operator: 0..k-1.
/// AW only; the SW operator conserves e^{-v^2/2}-weighted integrals instead,
/// so the query raises ErrorKind::UnsupportedBasis.
std::vector<int> annihilated_moments(const LBOperator& op);

}  // namespace hermvp
