#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "hermvp/fourier.hpp"
#include "hermvp/hermite.hpp"
#include "hermvp/lb_operator.hpp"

namespace hermvp {

using cplx = std::complex<double>;

/// Fourier x Hermite coefficients of f(x, v) = sum_{m,n} C_{m,n} e^{i kappa_m x} H_n(v) e^{-v^2}
/// with kappa_m = 2 pi m / Lx, m = -Mx..Mx, n = 0..N (PolynomialC convention, AW basis).
///
/// A real f requires C_{-m,n} = conj(C_{m,n}).
class CoefficientField {
 public:
  CoefficientField(int N, int Mx, double Lx);

  int N() const noexcept { return N_; }
  int Mx() const noexcept { return Mx_; }
  double Lx() const noexcept { return Lx_; }
  int modes() const noexcept { return 2 * Mx_ + 1; }
  double kappa(int m) const noexcept;

  cplx& operator()(int m, int n) { return data_[index(m, n)]; }
  const cplx& operator()(int m, int n) const { return data_[index(m, n)]; }

  /// Hermite column n across all Fourier modes, m = -Mx..Mx.
  std::vector<cplx> column(int n) const;
  void set_column(int n, std::span<const cplx> values);

  std::span<const cplx> data() const noexcept { return data_; }
  std::span<cplx> data() noexcept { return data_; }

  HermiteBasis basis() const { return HermiteBasis(BasisKind::AW, N_); }

  /// max |C_{-m,n} - conj(C_{m,n})|.
  double hermitian_defect() const;
  void enforce_hermitian();

  /// max_{m,n} |A - B| / gamma_n, i.e. the difference in the normalized basis.
  static double normalized_max_diff(const CoefficientField& a, const CoefficientField& b);

  /// f on the spatially uniform Maxwellian e^{-v^2} / sqrt(pi) (unit density).
  static CoefficientField equilibrium(int N, int Mx, double Lx);

  /// (1 + amplitude cos(kappa_mode x)) e^{-v^2} / sqrt(pi).
  static CoefficientField landau(int N, int Mx, double Lx, double amplitude, int mode = 1);

 private:
  std::size_t index(int m, int n) const noexcept {
    return static_cast<std::size_t>(m + Mx_) * static_cast<std::size_t>(N_ + 1) + static_cast<std::size_t>(n);
  }

  int N_;
  int Mx_;
  double Lx_;
  std::vector<cplx> data_;
};

/// Project f(x, v) onto the field: velocity by Gauss-Hermite quadrature at
/// each node of the periodic grid, then a discrete Fourier transform in x.
CoefficientField project_field(const std::function<double(double, double)>& f, int N, int Mx, double Lx);

/// E(x) = sum_m E_m e^{i kappa_m x}, E_0 = 0.
struct ElectricField {
  int Mx = 0;
  std::vector<cplx> Ehat;

  explicit ElectricField(int Mx_ = 0) : Mx(Mx_), Ehat(static_cast<std::size_t>(2 * Mx_ + 1)) {}

  cplx operator[](int m) const { return Ehat[static_cast<std::size_t>(m + Mx)]; }
  cplx& operator[](int m) { return Ehat[static_cast<std::size_t>(m + Mx)]; }
};

enum class FieldMode { Implicit, Explicit };

const char* to_string(FieldMode mode) noexcept;

struct VPConfig {
  int N = 32;
  int Mx = 8;
  int k = 3;
  double nu = 0.1;
  double dt = 0.01;
  double T = 1.0;
  double Lx = 12.566370614359172;
  double picard_tol = 1e-12;
  int picard_max = 50;
  Dealias dealias = Dealias::TwoThirds;
  FieldMode field_mode = FieldMode::Implicit;

  /// Raises ErrorKind::Validation on any out-of-range field. dt = 0 is
  /// accepted and makes a step the identity map.
  void validate() const;
};

inline constexpr double kNeutralityTolerance = 1e-8;

struct PoissonResult {
  ElectricField E;
  double neutrality_defect = 0.0;  ///< |1 - sqrt(pi) C_{0,0}|
  bool neutral = true;             ///< defect within kNeutralityTolerance
};

/// Solve dE/dx = 1 - sqrt(pi) C_0(x): E_m = -sqrt(pi) C_{m,0} / (i kappa_m) for m != 0, E_0 = 0.
/// The m = 0 row is the neutrality condition; a violation is reported, not thrown.
PoissonResult poisson_solve(std::span<const cplx> c0_modes, double Lx);
PoissonResult poisson_solve(const CoefficientField& state);

/// max_{m != 0} |i kappa_m E_m + sqrt(pi) C_{m,0}|.
double gauss_residual(const CoefficientField& state, const ElectricField& E);

struct PicardStats {
  int iterations = 0;
  double residual = 0.0;
  double neutrality_defect = 0.0;
  bool neutrality_warning = false;
};

struct StepResult {
  CoefficientField state;
  ElectricField E;
  PicardStats stats;
};

/// Owns the grid transforms and the factored implicit operators for one
/// configuration. Not shareable across threads while stepping.
///
/// Mode couplings in the C_n convention (from 2v H_n = 2n H_{n-1} + H_{n+1} and
/// d/dv (H_n e^{-v^2}) = -H_{n+1} e^{-v^2}):
///   streaming     dC_{m,n}/dt = -i kappa_m [ (n+1) C_{m,n+1} + C_{m,n-1} / 2 ]
///   acceleration  dC_{m,n}/dt = -(E * C_{n-1})_m
///   collisions    dC_{m,n}/dt = -nu (-1)^k lambda_n C_{m,n}
/// In the normalized psi_n basis the streaming factors become sqrt((n+1)/2),
/// sqrt(n/2) and the acceleration factor becomes sqrt(2n).
class VlasovPoissonSolver {
 public:
  VlasovPoissonSolver(VPConfig cfg, LBOperator lb);
  ~VlasovPoissonSolver();
  VlasovPoissonSolver(VlasovPoissonSolver&&) noexcept;
  VlasovPoissonSolver& operator=(VlasovPoissonSolver&&) noexcept;

  const VPConfig& config() const noexcept;
  const LBOperator& lb() const noexcept;
  int grid_size() const noexcept;

  /// dC/dt of the semi-discrete system for a given field.
  CoefficientField rhs(const CoefficientField& state, const ElectricField& E);

  /// -(E * C_{n-1})_m for every (m, n), pseudo-spectral in x.
  CoefficientField acceleration(const CoefficientField& state, const ElectricField& E);

  /// One implicit trapezoidal step; Picard sweeps until the normalized
  /// coefficient change drops below cfg.picard_tol. Raises
  /// ErrorKind::NonConvergence after cfg.picard_max sweeps.
  StepResult step(const CoefficientField& state);

  /// Field evaluated on a uniform grid of `samples` points.
  std::vector<double> field_samples(const ElectricField& E, int samples) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Stateless conveniences; each builds a solver internally.
CoefficientField vlasov_rhs(const CoefficientField& state, const ElectricField& E, const LBOperator& lb,
                            const VPConfig& cfg);
StepResult vp_step(const CoefficientField& state, const VPConfig& cfg, const LBOperator& lb);

struct StabilityBounds {
  double dt_visc;       ///< 16 nu / M^2
  double dt_spec;       ///< 4 / (M sqrt(2N))
  double nu_suggested;  ///< M / (4 sqrt(2N))
};

/// Sufficient time-step bounds for the linearized implicit step; infinite
/// when the field bound M is zero.
StabilityBounds stability_bounds(double M_field, double nu, int N);

struct FieldMaxEstimate {
  double direct;        ///< max_x |2E(x)| on a fine grid
  double bound_sq_per_length;  ///< 8 |Omega_x| + sqrt(pi) H
  double bound;         ///< sqrt(|Omega_x| (8 |Omega_x| + sqrt(pi) H)); >= direct for neutral states
};

/// Estimate M ~ 2 max|E| directly and through the integral bound built from
/// H = \int\int h^2 e^{-v^2} dv dx of the state.
FieldMaxEstimate field_max_estimate(const ElectricField& E, const CoefficientField& state, int samples = 512);

}  // namespace hermvp
