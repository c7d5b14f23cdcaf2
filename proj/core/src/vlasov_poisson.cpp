#include "hermvp/vlasov_poisson.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

#include "hermvp/error.hpp"
#include "hermvp/quadrature.hpp"

namespace hermvp {

namespace {

constexpr double kSqrtPi = 1.7724538509055160273;

double kappa_of(int m, double Lx) { return 2.0 * std::numbers::pi * m / Lx; }

}  // namespace

const char* to_string(FieldMode mode) noexcept {
  switch (mode) {
    case FieldMode::Implicit: return "implicit";
    case FieldMode::Explicit: return "explicit";
  }
  return "?";
}

CoefficientField::CoefficientField(int N, int Mx, double Lx) : N_(N), Mx_(Mx), Lx_(Lx) {
  if (N < 0 || N > kMaxDegree) raise(ErrorKind::Validation, "CoefficientField: N out of range");
  if (Mx < 0) raise(ErrorKind::Validation, "CoefficientField: Mx must be non-negative");
  if (!(Lx > 0.0) || !std::isfinite(Lx)) raise(ErrorKind::Validation, "CoefficientField: Lx must be positive");
  data_.assign(static_cast<std::size_t>(2 * Mx + 1) * static_cast<std::size_t>(N + 1), cplx{});
}

double CoefficientField::kappa(int m) const noexcept { return kappa_of(m, Lx_); }

std::vector<cplx> CoefficientField::column(int n) const {
  std::vector<cplx> out(static_cast<std::size_t>(modes()));
  for (int m = -Mx_; m <= Mx_; ++m) out[static_cast<std::size_t>(m + Mx_)] = (*this)(m, n);
  return out;
}

void CoefficientField::set_column(int n, std::span<const cplx> values) {
  if (values.size() != static_cast<std::size_t>(modes())) raise(ErrorKind::Validation, "set_column: size mismatch");
  for (int m = -Mx_; m <= Mx_; ++m) (*this)(m, n) = values[static_cast<std::size_t>(m + Mx_)];
}

double CoefficientField::hermitian_defect() const {
  double worst = 0.0;
  for (int m = 0; m <= Mx_; ++m)
    for (int n = 0; n <= N_; ++n) worst = std::max(worst, std::abs((*this)(-m, n) - std::conj((*this)(m, n))));
  return worst;
}

void CoefficientField::enforce_hermitian() {
  for (int n = 0; n <= N_; ++n) {
    (*this)(0, n) = cplx((*this)(0, n).real(), 0.0);
    for (int m = 1; m <= Mx_; ++m) {
      const cplx avg = 0.5 * ((*this)(m, n) + std::conj((*this)(-m, n)));
      (*this)(m, n) = avg;
      (*this)(-m, n) = std::conj(avg);
    }
  }
}

double CoefficientField::normalized_max_diff(const CoefficientField& a, const CoefficientField& b) {
  if (a.N_ != b.N_ || a.Mx_ != b.Mx_) raise(ErrorKind::Validation, "normalized_max_diff: shape mismatch");
  const HermiteBasis basis = a.basis();
  double worst = 0.0;
  for (int m = -a.Mx_; m <= a.Mx_; ++m)
    for (int n = 0; n <= a.N_; ++n) worst = std::max(worst, std::abs(a(m, n) - b(m, n)) / basis.gamma(n));
  return worst;
}

CoefficientField CoefficientField::equilibrium(int N, int Mx, double Lx) {
  CoefficientField f(N, Mx, Lx);
  f(0, 0) = 1.0 / kSqrtPi;
  return f;
}

CoefficientField CoefficientField::landau(int N, int Mx, double Lx, double amplitude, int mode) {
  if (mode < 1 || mode > Mx) raise(ErrorKind::Validation, "landau: perturbed mode must lie in 1..Mx");
  CoefficientField f = equilibrium(N, Mx, Lx);
  f(mode, 0) = amplitude / (2.0 * kSqrtPi);
  f(-mode, 0) = amplitude / (2.0 * kSqrtPi);
  return f;
}

CoefficientField project_field(const std::function<double(double, double)>& f, int N, int Mx, double Lx) {
  CoefficientField out(N, Mx, Lx);
  PeriodicGrid grid(Mx, Dealias::TwoThirds);
  const int G = grid.grid_size();
  const HermiteBasis basis(BasisKind::AW, N);
  const QuadratureRule quad = default_quadrature(N);
  std::vector<std::vector<double>> samples(static_cast<std::size_t>(N + 1), std::vector<double>(static_cast<std::size_t>(G)));
  for (int j = 0; j < G; ++j) {
    const double x = Lx * j / G;
    const auto c = project([&](double v) { return f(x, v); }, basis, quad);
    for (int n = 0; n <= N; ++n) samples[static_cast<std::size_t>(n)][static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(n)];
  }
  std::vector<cplx> modes(static_cast<std::size_t>(2 * Mx + 1));
  for (int n = 0; n <= N; ++n) {
    grid.to_modes(samples[static_cast<std::size_t>(n)], modes);
    out.set_column(n, modes);
  }
  out.enforce_hermitian();
  return out;
}

void VPConfig::validate() const {
  std::ostringstream bad;
  if (N < 1 || N > kMaxDegree) bad << " N=" << N;
  if (Mx < 0) bad << " Mx=" << Mx;
  if (k < 1) bad << " k=" << k;
  if (!(nu > 0.0) || !std::isfinite(nu)) bad << " nu=" << nu;
  if (!(dt >= 0.0) || !std::isfinite(dt)) bad << " dt=" << dt;
  if (!(T > 0.0) || !std::isfinite(T)) bad << " T=" << T;
  if (!(Lx > 0.0) || !std::isfinite(Lx)) bad << " Lx=" << Lx;
  if (!(picard_tol > 0.0)) bad << " picard_tol=" << picard_tol;
  if (picard_max < 1) bad << " picard_max=" << picard_max;
  const std::string msg = bad.str();
  if (!msg.empty()) raise(ErrorKind::Validation, "invalid VP configuration:" + msg);
}

PoissonResult poisson_solve(std::span<const cplx> c0_modes, double Lx) {
  if (c0_modes.size() % 2 == 0) raise(ErrorKind::Validation, "poisson_solve: expected 2M+1 modes");
  const int Mx = static_cast<int>(c0_modes.size() / 2);
  PoissonResult out{ElectricField(Mx)};
  for (int m = -Mx; m <= Mx; ++m) {
    if (m == 0) continue;
    const cplx c = c0_modes[static_cast<std::size_t>(m + Mx)];
    out.E[m] = cplx(0.0, 1.0) * kSqrtPi * c / kappa_of(m, Lx);
  }
  out.neutrality_defect = std::abs(1.0 - kSqrtPi * c0_modes[static_cast<std::size_t>(Mx)]);
  out.neutral = out.neutrality_defect <= kNeutralityTolerance;
  return out;
}

PoissonResult poisson_solve(const CoefficientField& state) {
  const auto col = state.column(0);
  return poisson_solve(col, state.Lx());
}

double gauss_residual(const CoefficientField& state, const ElectricField& E) {
  double worst = 0.0;
  for (int m = -state.Mx(); m <= state.Mx(); ++m) {
    if (m == 0) continue;
    const cplx r = cplx(0.0, state.kappa(m)) * E[m] + kSqrtPi * state(m, 0);
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

struct VlasovPoissonSolver::Impl {
  VPConfig cfg;
  LBOperator lb;
  PeriodicGrid grid;
  HermiteBasis basis;
  // Thomas factors of (I + h G_m) per mode, h = dt/2:
  // sub_n = h i kappa / 2, diag_n = 1 + h nu d_n, sup_n = h i kappa (n+1).
  std::vector<cplx> cprime;  // modified super-diagonal, (2M+1) x (N+1)
  std::vector<cplx> denom;   // pivots, (2M+1) x (N+1)
  std::vector<double> ephys, cphys;

  Impl(VPConfig c, LBOperator l)
      : cfg(std::move(c)), lb(std::move(l)), grid(cfg.Mx, cfg.dealias), basis(BasisKind::AW, cfg.N) {
    ephys.resize(static_cast<std::size_t>(grid.grid_size()));
    cphys.resize(ephys.size());
    factor();
  }

  std::size_t at(int m, int n) const {
    return static_cast<std::size_t>(m + cfg.Mx) * static_cast<std::size_t>(cfg.N + 1) + static_cast<std::size_t>(n);
  }

  void factor() {
    const int N = cfg.N;
    const double h = 0.5 * cfg.dt;
    cprime.assign(static_cast<std::size_t>(2 * cfg.Mx + 1) * static_cast<std::size_t>(N + 1), cplx{});
    denom.assign(cprime.size(), cplx{});
    for (int m = -cfg.Mx; m <= cfg.Mx; ++m) {
      const cplx ik(0.0, kappa_of(m, cfg.Lx));
      cplx prev_cp{};
      for (int n = 0; n <= N; ++n) {
        const cplx sub = n > 0 ? h * ik * 0.5 : cplx{};
        const cplx diag = 1.0 + h * cfg.nu * lb.damping(n);
        const cplx sup = n < N ? h * ik * static_cast<double>(n + 1) : cplx{};
        const cplx d = diag - sub * prev_cp;
        if (std::abs(d) < 1e-300) raise(ErrorKind::SingularUpdate, "vp_step: singular implicit operator");
        denom[at(m, n)] = d;
        prev_cp = sup / d;
        cprime[at(m, n)] = prev_cp;
      }
    }
  }

  // out = -G C, G = i kappa (streaming) + nu d (collisions).
  void apply_linear(const CoefficientField& c, CoefficientField& out) const {
    const int N = cfg.N;
    for (int m = -cfg.Mx; m <= cfg.Mx; ++m) {
      const cplx ik(0.0, c.kappa(m));
      for (int n = 0; n <= N; ++n) {
        cplx s = n < N ? static_cast<double>(n + 1) * c(m, n + 1) : cplx{};
        if (n > 0) s += 0.5 * c(m, n - 1);
        out(m, n) = -ik * s - cfg.nu * lb.damping(n) * c(m, n);
      }
    }
  }

  void acceleration(const CoefficientField& c, const ElectricField& E, CoefficientField& out) {
    grid.to_physical(E.Ehat, ephys);
    std::vector<cplx> col(static_cast<std::size_t>(2 * cfg.Mx + 1));
    std::vector<cplx> prod(col.size());
    for (int m = -cfg.Mx; m <= cfg.Mx; ++m) out(m, 0) = cplx{};
    for (int n = 1; n <= cfg.N; ++n) {
      for (int m = -cfg.Mx; m <= cfg.Mx; ++m) col[static_cast<std::size_t>(m + cfg.Mx)] = c(m, n - 1);
      grid.to_physical(col, cphys);
      for (std::size_t j = 0; j < cphys.size(); ++j) cphys[j] *= ephys[j];
      grid.to_modes(cphys, prod);
      for (int m = -cfg.Mx; m <= cfg.Mx; ++m) out(m, n) = -prod[static_cast<std::size_t>(m + cfg.Mx)];
    }
  }

  // Solve (I + h G_m) x = rhs in place, mode by mode.
  void solve(CoefficientField& x) const {
    const int N = cfg.N;
    const double h = 0.5 * cfg.dt;
    for (int m = -cfg.Mx; m <= cfg.Mx; ++m) {
      const cplx sub = h * cplx(0.0, kappa_of(m, cfg.Lx)) * 0.5;
      cplx prev{};
      for (int n = 0; n <= N; ++n) {
        const cplx r = n > 0 ? x(m, n) - sub * prev : x(m, n);
        prev = r / denom[at(m, n)];
        x(m, n) = prev;
      }
      for (int n = N - 1; n >= 0; --n) x(m, n) -= cprime[at(m, n)] * x(m, n + 1);
    }
  }
};

VlasovPoissonSolver::VlasovPoissonSolver(VPConfig cfg, LBOperator lb) {
  cfg.validate();
  if (lb.basis_kind() != BasisKind::AW)
    raise(ErrorKind::UnsupportedBasis, "Vlasov-Poisson solver requires the AW basis");
  if (lb.N() != cfg.N) raise(ErrorKind::BasisMismatch, "LB operator truncation differs from configuration N");
  impl_ = std::make_unique<Impl>(std::move(cfg), std::move(lb));
}

VlasovPoissonSolver::~VlasovPoissonSolver() = default;
VlasovPoissonSolver::VlasovPoissonSolver(VlasovPoissonSolver&&) noexcept = default;
VlasovPoissonSolver& VlasovPoissonSolver::operator=(VlasovPoissonSolver&&) noexcept = default;

const VPConfig& VlasovPoissonSolver::config() const noexcept { return impl_->cfg; }
const LBOperator& VlasovPoissonSolver::lb() const noexcept { return impl_->lb; }
int VlasovPoissonSolver::grid_size() const noexcept { return impl_->grid.grid_size(); }

static void check_shape(const VPConfig& cfg, const CoefficientField& s, const ElectricField* E) {
  if (s.N() != cfg.N || s.Mx() != cfg.Mx)
    raise(ErrorKind::BasisMismatch, "state shape does not match the solver configuration");
  if (std::abs(s.Lx() - cfg.Lx) > 1e-12 * cfg.Lx) raise(ErrorKind::Validation, "state Lx differs from configuration");
  if (E && E->Mx != cfg.Mx) raise(ErrorKind::BasisMismatch, "field Mx does not match the solver configuration");
}

CoefficientField VlasovPoissonSolver::acceleration(const CoefficientField& state, const ElectricField& E) {
  check_shape(impl_->cfg, state, &E);
  CoefficientField out(state.N(), state.Mx(), state.Lx());
  impl_->acceleration(state, E, out);
  return out;
}

CoefficientField VlasovPoissonSolver::rhs(const CoefficientField& state, const ElectricField& E) {
  check_shape(impl_->cfg, state, &E);
  CoefficientField lin(state.N(), state.Mx(), state.Lx());
  CoefficientField acc(state.N(), state.Mx(), state.Lx());
  impl_->apply_linear(state, lin);
  impl_->acceleration(state, E, acc);
  auto out = lin.data();
  auto a = acc.data();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += a[i];
  return lin;
}

StepResult VlasovPoissonSolver::step(const CoefficientField& prev) {
  Impl& im = *impl_;
  const VPConfig& cfg = im.cfg;
  check_shape(cfg, prev, nullptr);

  const PoissonResult p0 = poisson_solve(prev);
  const ElectricField& E_prev = p0.E;

  // Explicit half of the trapezoidal update: (I - h G) C^{j-1}.
  CoefficientField explicit_part(prev.N(), prev.Mx(), prev.Lx());
  im.apply_linear(prev, explicit_part);
  {
    auto e = explicit_part.data();
    auto c = prev.data();
    const double h = 0.5 * cfg.dt;
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = c[i] + h * e[i];
  }

  StepResult res{prev, E_prev, {}};
  res.stats.neutrality_defect = p0.neutrality_defect;
  res.stats.neutrality_warning = !p0.neutral;

  CoefficientField mid(prev.N(), prev.Mx(), prev.Lx());
  CoefficientField acc(prev.N(), prev.Mx(), prev.Lx());
  CoefficientField next(prev.N(), prev.Mx(), prev.Lx());
  ElectricField E_mid(cfg.Mx);

  double residual = std::numeric_limits<double>::infinity();
  for (int it = 1; it <= cfg.picard_max; ++it) {
    if (cfg.field_mode == FieldMode::Implicit) {
      for (std::size_t i = 0; i < E_mid.Ehat.size(); ++i) E_mid.Ehat[i] = 0.5 * (res.E.Ehat[i] + E_prev.Ehat[i]);
    } else {
      E_mid = E_prev;
    }
    {
      auto md = mid.data();
      auto a = res.state.data();
      auto b = prev.data();
      for (std::size_t i = 0; i < md.size(); ++i) md[i] = 0.5 * (a[i] + b[i]);
    }
    im.acceleration(mid, E_mid, acc);
    {
      auto nx = next.data();
      auto ex = explicit_part.data();
      auto ac = acc.data();
      for (std::size_t i = 0; i < nx.size(); ++i) nx[i] = ex[i] + cfg.dt * ac[i];
    }
    im.solve(next);
    next.enforce_hermitian();

    residual = CoefficientField::normalized_max_diff(next, res.state);
    std::swap(res.state, next);
    res.E = poisson_solve(res.state).E;
    res.stats.iterations = it;
    res.stats.residual = residual;
    if (residual < cfg.picard_tol) return res;
  }
  std::ostringstream msg;
  msg << "Picard iteration did not converge in " << cfg.picard_max << " sweeps (last residual " << residual << ")";
  raise(ErrorKind::NonConvergence, msg.str());
}

std::vector<double> VlasovPoissonSolver::field_samples(const ElectricField& E, int samples) const {
  if (samples < 1) raise(ErrorKind::Validation, "field_samples: need at least one sample");
  std::vector<double> out(static_cast<std::size_t>(samples));
  const double Lx = impl_->cfg.Lx;
  for (int j = 0; j < samples; ++j) {
    const double x = Lx * j / samples;
    double v = 0.0;
    for (int m = -E.Mx; m <= E.Mx; ++m) v += (E[m] * std::polar(1.0, kappa_of(m, Lx) * x)).real();
    out[static_cast<std::size_t>(j)] = v;
  }
  return out;
}

CoefficientField vlasov_rhs(const CoefficientField& state, const ElectricField& E, const LBOperator& lb,
                            const VPConfig& cfg) {
  VlasovPoissonSolver solver(cfg, lb);
  return solver.rhs(state, E);
}

StepResult vp_step(const CoefficientField& state, const VPConfig& cfg, const LBOperator& lb) {
  VlasovPoissonSolver solver(cfg, lb);
  return solver.step(state);
}

StabilityBounds stability_bounds(double M_field, double nu, int N) {
  if (!(M_field >= 0.0) || !std::isfinite(M_field)) raise(ErrorKind::Validation, "stability_bounds: M must be >= 0");
  if (!(nu > 0.0)) raise(ErrorKind::Validation, "stability_bounds: nu must be positive");
  if (N < 1) raise(ErrorKind::Validation, "stability_bounds: N must be >= 1");
  const double root = std::sqrt(2.0 * N);
  if (M_field == 0.0) {
    const double inf = std::numeric_limits<double>::infinity();
    return {inf, inf, 0.0};
  }
  return {16.0 * nu / (M_field * M_field), 4.0 / (M_field * root), M_field / (4.0 * root)};
}

FieldMaxEstimate field_max_estimate(const ElectricField& E, const CoefficientField& state, int samples) {
  if (samples < 1) raise(ErrorKind::Validation, "field_max_estimate: need at least one sample");
  if (E.Mx != state.Mx()) raise(ErrorKind::BasisMismatch, "field_max_estimate: Mx mismatch");
  const double Lx = state.Lx();
  double direct = 0.0;
  for (int j = 0; j < samples; ++j) {
    const double x = Lx * j / samples;
    double v = 0.0;
    for (int m = -E.Mx; m <= E.Mx; ++m) v += (E[m] * std::polar(1.0, kappa_of(m, Lx) * x)).real();
    direct = std::max(direct, std::abs(2.0 * v));
  }
  const HermiteBasis basis = state.basis();
  const auto norms = basis.norms_sq();
  double H = 0.0;
  for (int m = -state.Mx(); m <= state.Mx(); ++m)
    for (int n = 0; n <= state.N(); ++n) H += std::norm(state(m, n)) * norms[static_cast<std::size_t>(n)];
  H *= Lx;
  const double bracket = 8.0 * Lx + kSqrtPi * H;
  return {direct, bracket, std::sqrt(Lx * bracket)};
}

}  // namespace hermvp
