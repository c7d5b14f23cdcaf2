#include "hermvp/fourier.hpp"

#include <fftw3.h>

#include <mutex>
#include <string>

#include "hermvp/error.hpp"

namespace hermvp {
namespace {

// The FFTW planner is not re-entrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

const char* to_string(Dealias d) noexcept { return d == Dealias::None ? "none" : "two_thirds"; }

struct PeriodicGrid::Impl {
  int M;
  int G;
  fftw_complex* spec;
  fftw_complex* phys;
  fftw_plan backward;
  fftw_plan forward;

  Impl(int M_, Dealias dealias) : M(M_), G(dealias == Dealias::TwoThirds ? 3 * M_ + 1 : 2 * M_ + 1) {
    spec = fftw_alloc_complex(static_cast<std::size_t>(G));
    phys = fftw_alloc_complex(static_cast<std::size_t>(G));
    std::lock_guard lock(planner_mutex());
    backward = fftw_plan_dft_1d(G, spec, phys, FFTW_BACKWARD, FFTW_ESTIMATE);
    forward = fftw_plan_dft_1d(G, phys, spec, FFTW_FORWARD, FFTW_ESTIMATE);
  }

  ~Impl() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(backward);
    fftw_destroy_plan(forward);
    fftw_free(spec);
    fftw_free(phys);
  }
};

namespace {

void check_sizes(int M, int G, std::size_t modes, std::size_t values, const char* what) {
  if (modes != static_cast<std::size_t>(2 * M + 1) || values != static_cast<std::size_t>(G))
    raise(ErrorKind::Validation, std::string("PeriodicGrid::") + what + ": span sizes do not match the grid");
}

}  // namespace

PeriodicGrid::PeriodicGrid(int M, Dealias dealias) {
  if (M < 0) raise(ErrorKind::Validation, "PeriodicGrid: M must be >= 0");
  impl_ = std::make_unique<Impl>(M, dealias);
}

PeriodicGrid::~PeriodicGrid() = default;
PeriodicGrid::PeriodicGrid(PeriodicGrid&&) noexcept = default;
PeriodicGrid& PeriodicGrid::operator=(PeriodicGrid&&) noexcept = default;

int PeriodicGrid::M() const noexcept { return impl_->M; }
int PeriodicGrid::grid_size() const noexcept { return impl_->G; }

void PeriodicGrid::to_physical(std::span<const std::complex<double>> modes, std::span<double> values) {
  const int M = impl_->M;
  const int G = impl_->G;
  check_sizes(M, G, modes.size(), values.size(), "to_physical");
  auto* spec = impl_->spec;
  for (int i = 0; i < G; ++i) spec[i][0] = spec[i][1] = 0.0;
  for (int m = -M; m <= M; ++m) {
    const int slot = m >= 0 ? m : m + G;
    spec[slot][0] = modes[m + M].real();
    spec[slot][1] = modes[m + M].imag();
  }
  fftw_execute(impl_->backward);
  for (int j = 0; j < G; ++j) values[j] = impl_->phys[j][0];
}

void PeriodicGrid::to_modes(std::span<const double> values, std::span<std::complex<double>> modes) {
  const int M = impl_->M;
  const int G = impl_->G;
  check_sizes(M, G, modes.size(), values.size(), "to_modes");
  auto* phys = impl_->phys;
  for (int j = 0; j < G; ++j) {
    phys[j][0] = values[j];
    phys[j][1] = 0.0;
  }
  fftw_execute(impl_->forward);
  const double scale = 1.0 / G;
  for (int m = -M; m <= M; ++m) {
    const int slot = m >= 0 ? m : m + G;
    modes[m + M] = std::complex<double>(impl_->spec[slot][0], impl_->spec[slot][1]) * scale;
  }
}

}  // namespace hermvp
