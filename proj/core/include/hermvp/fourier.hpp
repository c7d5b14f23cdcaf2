#pragma once

#include <complex>
#include <memory>
#include <span>

namespace hermvp {

enum class Dealias { None, TwoThirds };

const char* to_string(Dealias d) noexcept;

/// Periodic modes u(x) = sum_{|m|<=M} u_m e^{i 2 pi m x / L} sampled on a
/// uniform grid x_j = j L / G. With Dealias::TwoThirds, G >= 3M + 1 so the
/// truncated product of two band-limited fields is alias-free; with
/// Dealias::None, G = 2M + 1.
///
/// Holds FFTW plans and scratch buffers; one instance per thread.
class PeriodicGrid {
 public:
  PeriodicGrid(int M, Dealias dealias);
  ~PeriodicGrid();
  PeriodicGrid(PeriodicGrid&&) noexcept;
  PeriodicGrid& operator=(PeriodicGrid&&) noexcept;
  PeriodicGrid(const PeriodicGrid&) = delete;
  PeriodicGrid& operator=(const PeriodicGrid&) = delete;

  int M() const noexcept;
  int grid_size() const noexcept;

  /// modes: 2M+1 entries ordered m = -M..M. values: grid_size() samples.
  void to_physical(std::span<const std::complex<double>> modes, std::span<double> values);

  /// Real samples to modes |m| <= M (higher modes dropped).
  void to_modes(std::span<const double> values, std::span<std::complex<double>> modes);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace hermvp
