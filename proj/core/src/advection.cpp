#include "hermvp/advection.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "hermvp/error.hpp"

namespace hermvp {
namespace {

void check_lb(const CoefficientVector& c, const std::optional<LBOperator>& lb) {
  if (lb && (lb->basis_kind() != c.basis().kind() || lb->N() != c.N())) {
    raise(ErrorKind::BasisMismatch, "advection: LB operator does not match the coefficient basis");
  }
}

void add_damping(CoefficientVector& out, const CoefficientVector& c, const std::optional<LBOperator>& lb) {
  if (!lb) return;
  const double nu = lb->nu();
  for (int n = 0; n <= c.N(); ++n) out[n] -= nu * lb->damping(n) * c[n];
}

}  // namespace

AdvectionSystem::AdvectionSystem(CoefficientVector initial, std::optional<LBOperator> lb)
    : initial_(initial.to_polynomial()), lb_(std::move(lb)) {
  check_lb(initial_, lb_);
}

CoefficientVector AdvectionSystem::rhs(const CoefficientVector& c) const {
  return basis_kind() == BasisKind::AW ? rhs_aw(c, lb_) : rhs_sw(c, lb_);
}

CoefficientVector rhs_sw(const CoefficientVector& c_in, const std::optional<LBOperator>& lb) {
  if (c_in.basis().kind() != BasisKind::SW) raise(ErrorKind::BasisMismatch, "rhs_sw: coefficients are not SW");
  const auto c = c_in.to_polynomial();
  check_lb(c, lb);
  const int N = c.N();
  CoefficientVector out(c.basis());
  for (int n = 0; n <= N; ++n) {
    const double up = n < N ? (n + 1) * c[n + 1] : 0.0;
    const double down = n > 0 ? 0.5 * c[n - 1] : 0.0;
    out[n] = up - down;
  }
  add_damping(out, c, lb);
  return out;
}

CoefficientVector rhs_aw(const CoefficientVector& c_in, const std::optional<LBOperator>& lb) {
  if (c_in.basis().kind() != BasisKind::AW) raise(ErrorKind::BasisMismatch, "rhs_aw: coefficients are not AW");
  const auto c = c_in.to_polynomial();
  check_lb(c, lb);
  CoefficientVector out(c.basis());
  for (int n = 1; n <= c.N(); ++n) out[n] = -c[n - 1];
  add_damping(out, c, lb);
  return out;
}

CoefficientVector closed_form_aw(const CoefficientVector& initial_in, double nu, int k, double t) {
  if (k != 1) {
    raise(ErrorKind::UnsupportedOrder, "closed_form_aw: closed form only known for k = 1, got k = " +
                                           std::to_string(k));
  }
  if (!(nu > 0.0)) raise(ErrorKind::Validation, "closed_form_aw: nu must be > 0");
  if (initial_in.basis().kind() != BasisKind::AW) {
    raise(ErrorKind::BasisMismatch, "closed_form_aw: initial data must be AW");
  }
  const auto initial = initial_in.to_polynomial();
  const int N = initial.N();

  // alpha[l] holds alpha_l^(n) for the current n.
  std::vector<double> alpha(static_cast<std::size_t>(N) + 1, 0.0);
  CoefficientVector out(initial.basis());
  for (int n = 0; n <= N; ++n) {
    double lower = 0.0;
    for (int l = 0; l < n; ++l) {
      alpha[l] = -alpha[l] / (nu * (n - l));
      lower += alpha[l];
    }
    alpha[n] = initial[n] - lower;
    double value = 0.0;
    for (int l = 0; l <= n; ++l) value += alpha[l] * std::exp(-l * nu * t);
    out[n] = value;
  }
  return out;
}

double exact_coeffs_sw(double t, int n) {
  if (n < 0) raise(ErrorKind::Validation, "exact_coeffs_sw: negative degree");
  // 2^n gamma_n (t/2)^n = gamma_n t^n, accumulated as a running product.
  double term = 1.0 / std::sqrt(std::sqrt(std::numbers::pi));
  for (int i = 1; i <= n; ++i) term *= -t / std::sqrt(2.0 * i);
  return std::sqrt(std::numbers::pi) * term * std::exp(-0.25 * t * t);
}

double exact_coeffs_aw(double t, int n) {
  if (n < 0) raise(ErrorKind::Validation, "exact_coeffs_aw: negative degree");
  // 2^n gamma~_n t^n = t^n sqrt(2^n / n!).
  double term = 1.0;
  for (int i = 1; i <= n; ++i) term *= -t * std::sqrt(2.0 / i);
  return std::sqrt(std::numbers::pi) * term;
}

}  // namespace hermvp
