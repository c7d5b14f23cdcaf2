#include "hermvp/hermite.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "hermvp/error.hpp"

namespace hermvp {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Overflow: return "overflow";
    case ErrorKind::InsufficientQuadrature: return "insufficient-quadrature";
    case ErrorKind::BasisMismatch: return "basis-mismatch";
    case ErrorKind::UnsupportedBasis: return "unsupported-basis";
    case ErrorKind::UnsupportedOrder: return "unsupported-order";
    case ErrorKind::SingularUpdate: return "singular-update";
    case ErrorKind::NonConvergence: return "nonconvergence";
    case ErrorKind::ConfigParse: return "config-parse";
    case ErrorKind::Validation: return "validation";
  }
  return "unknown";
}

const char* to_string(BasisKind kind) noexcept {
  return kind == BasisKind::AW ? "AW" : "SW";
}

BasisKind basis_kind_from_string(const std::string_view text) {
  if (text == "AW" || text == "aw") return BasisKind::AW;
  if (text == "SW" || text == "sw") return BasisKind::SW;
  raise(ErrorKind::Validation, "unknown basis kind '" + std::string(text) + "' (expected AW or SW)");
}

double hermite_eval(int n, double v) {
  if (n < 0) raise(ErrorKind::Validation, "hermite_eval: negative degree");
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = 2.0 * v;
  for (int k = 1; k < n; ++k) {
    const double next = 2.0 * v * cur - 2.0 * k * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

std::vector<double> hermite_eval_all(int N, double v) {
  if (N < 0) raise(ErrorKind::Validation, "hermite_eval_all: negative degree");
  std::vector<double> h(static_cast<std::size_t>(N) + 1);
  h[0] = 1.0;
  if (N >= 1) h[1] = 2.0 * v;
  for (int k = 1; k < N; ++k) {
    h[k + 1] = 2.0 * v * h[k] - 2.0 * k * h[k - 1];
  }
  return h;
}

std::vector<double> hermite_orthonormal_all(int N, double v) {
  if (N < 0) raise(ErrorKind::Validation, "hermite_orthonormal_all: negative degree");
  std::vector<double> p(static_cast<std::size_t>(N) + 1);
  const double p0 = 1.0 / std::sqrt(std::sqrt(std::numbers::pi));
  p[0] = p0;
  if (N >= 1) p[1] = std::numbers::sqrt2 * v * p0;
  for (int k = 1; k < N; ++k) {
    const double kk = static_cast<double>(k);
    p[k + 1] = std::sqrt(2.0 / (kk + 1.0)) * v * p[k] - std::sqrt(kk / (kk + 1.0)) * p[k - 1];
  }
  return p;
}

double hermite_norm_sq(int n) {
  if (n < 0) raise(ErrorKind::Validation, "hermite_norm_sq: negative degree");
  double value = std::sqrt(std::numbers::pi);
  for (int k = 1; k <= n; ++k) value *= 2.0 * k;
  if (!std::isfinite(value)) {
    raise(ErrorKind::Overflow, "hermite_norm_sq: sqrt(pi) 2^n n! overflows double at n = " + std::to_string(n));
  }
  return value;
}

double hermite_derivative_factor(int n, int m) {
  if (n < 0 || m < 0) raise(ErrorKind::Validation, "hermite_derivative_factor: negative argument");
  if (n < m) return 0.0;
  double value = 1.0;
  for (int k = n - m + 1; k <= n; ++k) value *= 2.0 * k;
  if (!std::isfinite(value)) {
    raise(ErrorKind::Overflow, "hermite_derivative_factor: 2^m n!/(n-m)! overflows double for n = " +
                                   std::to_string(n) + ", m = " + std::to_string(m));
  }
  return value;
}

HermiteBasis::HermiteBasis(BasisKind kind, int N) {
  if (N < 0) raise(ErrorKind::Validation, "HermiteBasis: truncation N must be >= 0");
  if (N > kMaxDegree) {
    raise(ErrorKind::Overflow, "HermiteBasis: N = " + std::to_string(N) + " exceeds the supported maximum " +
                                   std::to_string(kMaxDegree));
  }
  Tables t{kind, N, {}, {}, {}};
  const auto size = static_cast<std::size_t>(N) + 1;
  t.gammas.resize(size);
  t.dual_gammas.resize(size);
  t.norms_sq.resize(size);

  // Running ratios: every normalization shrinks by 1/sqrt(2n) per degree.
  const double pi = std::numbers::pi;
  double g = kind == BasisKind::AW ? 1.0 / std::sqrt(pi) : 1.0 / std::sqrt(std::sqrt(pi));
  double gd = kind == BasisKind::AW ? 1.0 : g;
  double norm = std::sqrt(pi);
  for (int n = 0; n <= N; ++n) {
    if (n > 0) {
      const double r = std::sqrt(2.0 * n);
      g /= r;
      gd /= r;
      norm *= 2.0 * n;
    }
    t.gammas[n] = g;
    t.dual_gammas[n] = gd;
    t.norms_sq[n] = norm;
  }
  tables_ = std::make_shared<const Tables>(std::move(t));
}

}  // namespace hermvp
