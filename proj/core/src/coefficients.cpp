#include "hermvp/coefficients.hpp"

#include <cmath>
#include <string>

#include "hermvp/error.hpp"

namespace hermvp {

CoefficientVector::CoefficientVector(HermiteBasis basis, Convention convention)
    : basis_(std::move(basis)), values_(basis_.size(), 0.0), convention_(convention) {}

CoefficientVector::CoefficientVector(HermiteBasis basis, std::vector<double> values,
                                     Convention convention)
    : basis_(std::move(basis)), values_(std::move(values)), convention_(convention) {
  if (values_.size() != basis_.size()) {
    raise(ErrorKind::Validation, "CoefficientVector: expected " + std::to_string(basis_.size()) +
                                     " coefficients, got " + std::to_string(values_.size()));
  }
}

CoefficientVector CoefficientVector::in(Convention target) const {
  if (target == convention_) return *this;
  CoefficientVector out(basis_, values_, target);
  const auto g = basis_.gammas();
  for (std::size_t n = 0; n < out.values_.size(); ++n) {
    out.values_[n] = target == Convention::NormalizedCstar ? values_[n] / g[n] : values_[n] * g[n];
  }
  return out;
}

CoefficientVector project(const std::function<double(double)>& f, const HermiteBasis& basis,
                          const QuadratureRule& quad) {
  const int N = basis.N();
  if (quad.Q() <= N) {
    raise(ErrorKind::InsufficientQuadrature, "project: quadrature with Q = " + std::to_string(quad.Q()) +
                                                 " nodes cannot resolve degree N = " + std::to_string(N));
  }
  const double exponent = basis.kind() == BasisKind::AW ? 1.0 : 0.5;
  std::vector<double> acc(basis.size(), 0.0);
  for (int i = 0; i < quad.Q(); ++i) {
    const double v = quad.nodes[i];
    const double h = f(v) * std::exp(exponent * v * v);
    const auto p = hermite_orthonormal_all(N, v);
    const double wh = quad.weights[i] * h;
    for (int n = 0; n <= N; ++n) acc[n] += wh * p[n];
  }
  // p_n = H_n / sqrt(norm_n), so C_n = acc_n / sqrt(norm_n).
  const auto norms = basis.norms_sq();
  for (int n = 0; n <= N; ++n) acc[n] /= std::sqrt(norms[n]);
  return CoefficientVector(basis, std::move(acc), Convention::PolynomialC);
}

double weighted_norm_sq(const CoefficientVector& c) {
  const auto poly = c.to_polynomial();
  const auto norms = c.basis().norms_sq();
  double sum = 0.0;
  for (std::size_t n = 0; n < poly.size(); ++n) sum += poly[n] * poly[n] * norms[n];
  return sum;
}

double evaluate(const CoefficientVector& c, double v) {
  const auto poly = c.to_polynomial();
  const auto p = hermite_orthonormal_all(c.N(), v);
  const auto norms = c.basis().norms_sq();
  double h = 0.0;
  for (std::size_t n = 0; n < poly.size(); ++n) h += poly[n] * std::sqrt(norms[n]) * p[n];
  const double exponent = c.basis().kind() == BasisKind::AW ? 1.0 : 0.5;
  return h * std::exp(-exponent * v * v);
}

}  // namespace hermvp
