#include "oracles.hpp"

#include <cmath>
#include <numbers>

#include <boost/numeric/odeint.hpp>

#include "hermvp/quadrature.hpp"

namespace oracle {

namespace {

double H(int n, double v) { return n < 0 ? 0.0 : hermvp::hermite_eval(n, v); }

double norm_sq(int n) { return hermvp::hermite_norm_sq(n); }

using Fn = std::function<double(double)>;

constexpr double kStep = 0.015;

// Sixth-order central difference.
Fn derivative(Fn g) {
  return [g = std::move(g)](double v) {
    const double h = kStep;
    return (-g(v - 3 * h) + 9 * g(v - 2 * h) - 45 * g(v - h) + 45 * g(v + h) - 9 * g(v + 2 * h) + g(v + 3 * h)) /
           (60 * h);
  };
}

}  // namespace

Matrix galerkin_matrix(BasisKind, int size, const std::function<double(int, double)>& apply_op) {
  const auto rule = hermvp::gauss_hermite(size + 4);
  Matrix m(static_cast<std::size_t>(size), std::vector<double>(static_cast<std::size_t>(size), 0.0));
  for (int n = 0; n < size; ++n) {
    for (int j = 0; j < size; ++j) {
      double acc = 0.0;
      for (int q = 0; q < rule.Q(); ++q) {
        const double v = rule.nodes[static_cast<std::size_t>(q)];
        acc += rule.weights[static_cast<std::size_t>(q)] * apply_op(n, v) * H(j, v);
      }
      m[static_cast<std::size_t>(j)][static_cast<std::size_t>(n)] = acc / norm_sq(j);
    }
  }
  return m;
}

namespace {

// h -> h' on polynomial coefficients: H_n' = 2n H_{n-1}.
Matrix derivative_map(int size) {
  Matrix d(static_cast<std::size_t>(size), std::vector<double>(static_cast<std::size_t>(size), 0.0));
  for (int n = 1; n < size; ++n) d[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(n)] = 2.0 * n;
  return d;
}

// h -> v h: v H_n = n H_{n-1} + H_{n+1} / 2, the top mode dropped.
Matrix velocity_map(int size) {
  Matrix m(static_cast<std::size_t>(size), std::vector<double>(static_cast<std::size_t>(size), 0.0));
  for (int n = 0; n < size; ++n) {
    if (n >= 1) m[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(n)] = n;
    if (n + 1 < size) m[static_cast<std::size_t>(n + 1)][static_cast<std::size_t>(n)] = 0.5;
  }
  return m;
}

Matrix combine(double a, const Matrix& x, double b, const Matrix& y) {
  Matrix out = x;
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t j = 0; j < out[i].size(); ++j) out[i][j] = a * x[i][j] + b * y[i][j];
  return out;
}

// d/dv of f = h w acting on h: AW w = e^{-v^2} gives h' - 2vh, SW w = e^{-v^2/2} gives h' - vh.
Matrix velocity_derivative(BasisKind kind, int size) {
  return combine(1.0, derivative_map(size), kind == BasisKind::AW ? -2.0 : -1.0, velocity_map(size));
}

}  // namespace

Matrix lb_lower_matrix(BasisKind kind, int size) {
  const Matrix dv = velocity_derivative(kind, size);
  return kind == BasisKind::AW ? combine(0.5, dv, 1.0, velocity_map(size)) : combine(1.0, dv, 1.0, velocity_map(size));
}

Matrix lb_upper_matrix(BasisKind kind, int size) {
  const Matrix dv = velocity_derivative(kind, size);
  return kind == BasisKind::AW ? dv : combine(1.0, dv, -1.0, velocity_map(size));
}

Matrix lb_composed(BasisKind kind, int k, int N) {
  const int size = N + 1 + k;
  const Matrix L = lb_lower_matrix(kind, size);
  const Matrix Ls = lb_upper_matrix(kind, size);
  Matrix acc(static_cast<std::size_t>(size), std::vector<double>(static_cast<std::size_t>(size), 0.0));
  for (int i = 0; i < size; ++i) acc[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1.0;
  for (int i = 0; i < k; ++i) acc = multiply(L, acc);
  for (int i = 0; i < k; ++i) acc = multiply(Ls, acc);
  acc.resize(static_cast<std::size_t>(N + 1));
  for (auto& row : acc) row.resize(static_cast<std::size_t>(N + 1));
  return acc;
}

Matrix advection_matrix(BasisKind kind, int N) {
  if (kind == BasisKind::AW)
    return galerkin_matrix(kind, N + 1, [](int n, double v) { return 2.0 * n * H(n - 1, v) - 2.0 * v * H(n, v); });
  return galerkin_matrix(kind, N + 1, [](int n, double v) { return 2.0 * n * H(n - 1, v) - v * H(n, v); });
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  const std::size_t n = a.size(), m = b.front().size(), inner = b.size();
  Matrix out(n, std::vector<double>(m, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < inner; ++l)
      for (std::size_t j = 0; j < m; ++j) out[i][j] += a[i][l] * b[l][j];
  return out;
}

std::vector<double> apply(const Matrix& a, const std::vector<double>& x) {
  std::vector<double> y(a.size(), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) y[i] += a[i][j] * x[j];
  return y;
}

std::vector<double> integrate_reference(const Rhs& rhs, std::vector<double> y0, double t0, double t1) {
  namespace odeint = boost::numeric::odeint;
  using State = std::vector<double>;
  auto stepper = odeint::make_controlled(1e-12, 1e-12, odeint::runge_kutta_fehlberg78<State>());
  if (t1 > t0)
    odeint::integrate_adaptive(stepper, [&](const State& y, State& dy, double) { rhs(y, dy); }, y0, t0, t1,
                               (t1 - t0) / 100.0);
  return y0;
}

namespace {

double poly(const std::vector<double>& C, double v) {
  double s = 0.0;
  for (std::size_t n = 0; n < C.size(); ++n) s += C[n] * H(static_cast<int>(n), v);
  return s;
}

double poly_derivative(const std::vector<double>& C, int m, double v) {
  // H_n^(m) evaluated through the derivative factor table.
  double s = 0.0;
  for (std::size_t n = 0; n < C.size(); ++n) {
    const int nn = static_cast<int>(n);
    if (nn < m) continue;
    s += C[n] * hermvp::hermite_derivative_factor(nn, m) * H(nn - m, v);
  }
  return s;
}

template <class F>
double quad(int degree, F&& g) {
  const auto rule = hermvp::gauss_hermite(degree / 2 + 2);
  double acc = 0.0;
  for (int q = 0; q < rule.Q(); ++q)
    acc += rule.weights[static_cast<std::size_t>(q)] * g(rule.nodes[static_cast<std::size_t>(q)]);
  return acc;
}

}  // namespace

double weighted_sq(const std::vector<double>& C) {
  return quad(2 * static_cast<int>(C.size()), [&](double v) { return std::pow(poly(C, v), 2); });
}

double weighted_sq_derivative(const std::vector<double>& C, int m) {
  return quad(2 * static_cast<int>(C.size()), [&](double v) { return std::pow(poly_derivative(C, m, v), 2); });
}

double weighted_v2_sq(const std::vector<double>& C) {
  return quad(2 * static_cast<int>(C.size()) + 2, [&](double v) { return v * v * std::pow(poly(C, v), 2); });
}

double moment_quadrature(const std::vector<double>& C, int m) {
  return quad(static_cast<int>(C.size()) + m, [&](double v) { return std::pow(v, m) * poly(C, v); });
}

std::vector<double> naive_to_physical(const std::vector<cplx>& modes, int G) {
  const int M = static_cast<int>(modes.size() / 2);
  std::vector<double> out(static_cast<std::size_t>(G), 0.0);
  for (int j = 0; j < G; ++j) {
    cplx s{};
    for (int m = -M; m <= M; ++m)
      s += modes[static_cast<std::size_t>(m + M)] * std::polar(1.0, 2.0 * std::numbers::pi * m * j / G);
    out[static_cast<std::size_t>(j)] = s.real();
  }
  return out;
}

std::vector<cplx> naive_to_modes(const std::vector<double>& values, int M) {
  const int G = static_cast<int>(values.size());
  std::vector<cplx> out(static_cast<std::size_t>(2 * M + 1));
  for (int m = -M; m <= M; ++m) {
    cplx s{};
    for (int j = 0; j < G; ++j)
      s += values[static_cast<std::size_t>(j)] * std::polar(1.0, -2.0 * std::numbers::pi * m * j / G);
    out[static_cast<std::size_t>(m + M)] = s / static_cast<double>(G);
  }
  return out;
}

hermvp::CoefficientField collocation_rhs(const hermvp::CoefficientField& state, const hermvp::ElectricField& E,
                                         double nu, int k, int Gx) {
  const int N = state.N(), M = state.Mx();
  const double Lx = state.Lx();
  if (Gx % 2 == 0) ++Gx;
  const int Mfull = (Gx - 1) / 2;
  const auto rule = hermvp::gauss_hermite(N + 12);
  const int Q = rule.Q();

  // C_n(x_j) and E(x_j) on the grid.
  std::vector<std::vector<double>> Cx(static_cast<std::size_t>(N + 1));
  for (int n = 0; n <= N; ++n) Cx[static_cast<std::size_t>(n)] = naive_to_physical(state.column(n), Gx);
  const auto Ex = naive_to_physical(E.Ehat, Gx);

  const auto f_at = [&](int j) {
    return Fn([&, j](double v) {
      const auto Hs = hermvp::hermite_eval_all(N, v);
      double s = 0.0;
      for (int n = 0; n <= N; ++n) s += Cx[static_cast<std::size_t>(n)][static_cast<std::size_t>(j)] * Hs[static_cast<std::size_t>(n)];
      return s * std::exp(-v * v);
    });
  };

  // r[q][j] = df/dt at (x_j, v_q)
  std::vector<std::vector<double>> r(static_cast<std::size_t>(Q), std::vector<double>(static_cast<std::size_t>(Gx)));
  for (int q = 0; q < Q; ++q) {
    const double v = rule.nodes[static_cast<std::size_t>(q)];
    std::vector<double> fx(static_cast<std::size_t>(Gx));
    for (int j = 0; j < Gx; ++j) fx[static_cast<std::size_t>(j)] = f_at(j)(v);
    auto modes = naive_to_modes(fx, Mfull);
    for (int m = -Mfull; m <= Mfull; ++m)
      modes[static_cast<std::size_t>(m + Mfull)] *= cplx(0.0, 2.0 * std::numbers::pi * m / Lx);
    const auto dfdx = naive_to_physical(modes, Gx);

    for (int j = 0; j < Gx; ++j) {
      const Fn f = f_at(j);
      const double dfdv = derivative(f)(v);
      Fn g = f;
      for (int i = 0; i < k; ++i) g = [d = derivative(g), g](double w) { return 0.5 * d(w) + w * g(w); };
      for (int i = 0; i < k; ++i) g = derivative(g);
      const double sign = k % 2 == 0 ? 1.0 : -1.0;
      r[static_cast<std::size_t>(q)][static_cast<std::size_t>(j)] =
          -v * dfdx[static_cast<std::size_t>(j)] + Ex[static_cast<std::size_t>(j)] * dfdv - sign * nu * g(v);
    }
  }

  hermvp::CoefficientField out(N, M, Lx);
  for (int q = 0; q < Q; ++q) {
    const double v = rule.nodes[static_cast<std::size_t>(q)];
    const double w = rule.weights[static_cast<std::size_t>(q)] * std::exp(v * v);
    const auto rm = naive_to_modes(r[static_cast<std::size_t>(q)], M);
    for (int n = 0; n <= N; ++n) {
      const double scale = w * H(n, v) / norm_sq(n);
      for (int m = -M; m <= M; ++m) out(m, n) += scale * rm[static_cast<std::size_t>(m + M)];
    }
  }
  return out;
}

hermvp::CoefficientField random_state(std::mt19937_64& rng, int N, int Mx, double Lx, double amplitude) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  auto f = hermvp::CoefficientField::equilibrium(N, Mx, Lx);
  const hermvp::HermiteBasis basis(BasisKind::AW, N);
  for (int n = 1; n <= N; ++n) f(0, n) = amplitude * basis.gamma(n) * u(rng);
  for (int m = 1; m <= Mx; ++m)
    for (int n = 0; n <= N; ++n) {
      f(m, n) = amplitude * basis.gamma(n) * cplx(u(rng), u(rng));
      f(-m, n) = std::conj(f(m, n));
    }
  return f;
}

std::vector<double> random_vector(std::mt19937_64& rng, int size, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> out(static_cast<std::size_t>(size));
  for (auto& x : out) x = u(rng);
  return out;
}

}  // namespace oracle
