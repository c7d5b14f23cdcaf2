#include "hermvp/trapezoidal.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hermvp/error.hpp"

namespace hermvp {
namespace {

double damping_rate(const AdvectionSystem& system, int n) {
  return system.lb() ? system.lb()->nu() * system.lb()->damping(n) : 0.0;
}

void check_pivot(double pivot, int n) {
  if (pivot == 0.0 || !std::isfinite(pivot)) {
    raise(ErrorKind::SingularUpdate, "trap_step: singular implicit update at mode " + std::to_string(n));
  }
}

}  // namespace

TrapState TrapState::start(const AdvectionSystem& system, double dt) {
  return TrapState{system.initial(), 0.0, dt, 0};
}

TrapState trap_step(const TrapState& state, const AdvectionSystem& system) {
  if (!(state.dt > 0.0)) raise(ErrorKind::Validation, "trap_step: dt must be > 0");
  if (state.c.basis() != system.basis()) raise(ErrorKind::BasisMismatch, "trap_step: state/system basis differ");

  const auto prev = state.c.to_polynomial();
  const int N = prev.N();
  const double h = 0.5 * state.dt;
  CoefficientVector next(prev.basis());

  if (system.basis_kind() == BasisKind::AW) {
    next[0] = prev[0];
    for (int n = 1; n <= N; ++n) {
      const double d = damping_rate(system, n);
      const double pivot = 1.0 + h * d;
      check_pivot(pivot, n);
      next[n] = ((1.0 - h * d) * prev[n] - h * (next[n - 1] + prev[n - 1])) / pivot;
    }
  } else {
    // (I - h A) x = (I + h A) prev with A tridiagonal:
    //   A[n][n-1] = -1/2, A[n][n] = -d_n, A[n][n+1] = n+1.
    const auto explicit_part = system.rhs(prev);
    std::vector<double> sub(N + 1), diag(N + 1), sup(N + 1), rhs(N + 1);
    for (int n = 0; n <= N; ++n) {
      sub[n] = n > 0 ? h * 0.5 : 0.0;
      diag[n] = 1.0 + h * damping_rate(system, n);
      sup[n] = n < N ? -h * (n + 1) : 0.0;
      rhs[n] = prev[n] + h * explicit_part[n];
    }
    for (int n = 1; n <= N; ++n) {
      check_pivot(diag[n - 1], n - 1);
      const double m = sub[n] / diag[n - 1];
      diag[n] -= m * sup[n - 1];
      rhs[n] -= m * rhs[n - 1];
    }
    check_pivot(diag[N], N);
    next[N] = rhs[N] / diag[N];
    for (int n = N - 1; n >= 0; --n) next[n] = (rhs[n] - sup[n] * next[n + 1]) / diag[n];
  }

  return TrapState{std::move(next), static_cast<double>(state.step + 1) * state.dt, state.dt, state.step + 1};
}

double chi(int n, double nu, double dt) {
  if (n < 1) raise(ErrorKind::Validation, "chi: mode index must be >= 1");
  if (!(nu > 0.0) || !(dt > 0.0)) raise(ErrorKind::Validation, "chi: nu and dt must be > 0");
  const double a = 0.5 * nu * n * dt;
  return (1.0 - a) / (1.0 + a);
}

StabilityWeights::StabilityWeights(double nu, int N) : nu_(nu), w_(static_cast<std::size_t>(std::max(N, 1)) + 1, 0.0) {
  if (!(nu > 0.0)) raise(ErrorKind::Validation, "StabilityWeights: nu must be > 0");
  if (N < 1) raise(ErrorKind::Validation, "StabilityWeights: N must be >= 1");
  w_[1] = 1.0;
  for (int n = 1; n < N; ++n) {
    w_[n + 1] = nu * nu * (n + 1) * (n - 0.5) * w_[n];
    if (!std::isfinite(w_[n + 1])) {
      raise(ErrorKind::Overflow, "StabilityWeights: w_n overflows at n = " + std::to_string(n + 1));
    }
  }
}

double StabilityWeights::closed_form(double nu, int n) {
  if (n < 2) raise(ErrorKind::Validation, "StabilityWeights::closed_form: defined for n >= 2");
  double fact = 1.0;  // (2n-3)!
  for (int i = 2; i <= 2 * n - 3; ++i) fact *= i;
  return 2.0 * std::pow(nu * nu, n - 1) * n * (n - 1) * fact;
}

StabilityNorm stability_norm_y(const CoefficientVector& c_in, const StabilityWeights& weights) {
  const auto c = c_in.to_polynomial();
  if (c.N() > weights.N()) raise(ErrorKind::Validation, "stability_norm_y: weights shorter than coefficient vector");
  StabilityNorm out{};
  for (int n = 1; n <= c.N(); ++n) out.weighted_sum += weights[n] * c[n] * c[n];
  const double nu = weights.nu();
  const double c0sq = c[0] * c[0];
  out.c0_correction = (2.0 / (nu * nu)) * weights[1] * c0sq;
  out.alt_c0_correction = (1.0 / (2.0 * nu)) * weights[1] * c0sq;
  out.y = out.weighted_sum - out.c0_correction;
  return out;
}

double time_step_heuristic(double nu, int N) {
  if (!(nu > 0.0)) raise(ErrorKind::Validation, "time_step_heuristic: nu must be > 0");
  if (N < 1) raise(ErrorKind::Validation, "time_step_heuristic: N must be >= 1");
  return 1.0 / (2.0 * nu * N);
}

TrapState integrate(const AdvectionSystem& system, double dt, std::int64_t steps, const TrapObserver& observer) {
  auto state = TrapState::start(system, dt);
  if (observer) observer(state);
  for (std::int64_t j = 0; j < steps; ++j) {
    state = trap_step(state, system);
    if (observer) observer(state);
  }
  return state;
}

}  // namespace hermvp
