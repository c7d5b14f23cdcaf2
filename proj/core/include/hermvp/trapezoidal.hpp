#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "hermvp/advection.hpp"

namespace hermvp {

/// Uniformly stepped state of a 1-D coefficient system, t = step * dt.
struct TrapState {
  CoefficientVector c;
  double t = 0.0;
  double dt = 0.0;
  std::int64_t step = 0;

  static TrapState start(const AdvectionSystem& system, double dt);
};

/// One trapezoidal step
///   (C^j - C^{j-1}) / dt = (A C^j + A C^{j-1}) / 2
/// for the system's Galerkin matrix A. The AW matrix is lower bidiagonal and
/// is solved by forward substitution; SW is tridiagonal (Thomas sweep).
TrapState trap_step(const TrapState& state, const AdvectionSystem& system);

/// Amplification factor (1 - nu n dt / 2) / (1 + nu n dt / 2) of mode n.
double chi(int n, double nu, double dt);

/// w_1 = 1, w_{n+1} = nu^2 (n+1)(n - 1/2) w_n. Index 0 is unused and set to 0.
class StabilityWeights {
 public:
  StabilityWeights(double nu, int N);

  double nu() const noexcept { return nu_; }
  int N() const noexcept { return static_cast<int>(w_.size()) - 1; }
  double operator[](int n) const { return w_.at(static_cast<std::size_t>(n)); }
  const std::vector<double>& values() const noexcept { return w_; }

  /// The alternative closed form 2 (nu^2)^{n-1} n (n-1) (2n-3)! for n >= 2.
  /// Kept for reporting; it does not satisfy the recursion at n = 2.
  static double closed_form(double nu, int n);

 private:
  double nu_;
  std::vector<double> w_;
};

struct StabilityNorm {
  double weighted_sum;   ///< sum_{n>=1} w_n C_n^2
  double c0_correction;  ///< (2 / nu^2) w_1 C_0^2
  double y;              ///< weighted_sum - c0_correction
  double alt_c0_correction;  ///< (1 / (2 nu)) w_1 C_0^2, the constant from the decay bound
};

/// Y = sum_{n>=1} w_n C_n^2 - (2/nu^2) w_1 C_0^2 in the PolynomialC convention.
StabilityNorm stability_norm_y(const CoefficientVector& c, const StabilityWeights& weights);

/// dt = 1 / (2 nu N), i.e. nu N dt = 1/2.
double time_step_heuristic(double nu, int N);

/// Per-step observer used by integrate().
using TrapObserver = std::function<void(const TrapState&)>;

/// Advance `steps` trapezoidal steps, calling observer on the initial state
/// and after every step.
TrapState integrate(const AdvectionSystem& system, double dt, std::int64_t steps,
                    const TrapObserver& observer = {});

}  // namespace hermvp
