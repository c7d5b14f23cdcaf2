#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hermvp/coefficients.hpp"
#include "hermvp/lb_operator.hpp"
#include "hermvp/vlasov_poisson.hpp"

namespace hermvp {

/// \int v^m H_n e^{-v^2} dv for n = 0..N, exact via
/// I_{m+1,n} = n I_{m,n-1} + I_{m,n+1} / 2 and I_{0,n} = sqrt(pi) delta_{n0}.
/// Zero for n > m.
std::vector<double> moment_overlaps(int m, int N);

/// \int v^m f dv of an AW coefficient vector. Requires m <= N.
double moment(const CoefficientVector& c, int m);

/// \int\int v^m f dx dv over one period.
double moment(const CoefficientField& state, int m);

/// H = \int\int h^2 e^{-v^2} dv dx, with f = h e^{-v^2}.
double hermite_weighted_h(const CoefficientField& state);

/// (1/2) \int E^2 dx.
double field_energy(const ElectricField& E, double Lx);

struct DiagnosticsRecord {
  long long step = 0;
  double t = 0.0;
  double mass = 0.0;
  double momentum = 0.0;
  double moment2 = 0.0;
  double field_energy = 0.0;
  double gauss_residual = 0.0;
  double weighted_l2 = 0.0;
  std::optional<double> stability_Y;
  double M_field = 0.0;
  int picard_iterations = 0;
  double dt_visc = 0.0;
  double dt_spec = 0.0;
};

/// Everything except the Picard count and the time-step bounds, which the
/// caller fills in.
DiagnosticsRecord measure(const CoefficientField& state, const ElectricField& E, long long step, double t);

inline constexpr int kDiagnosticsSchemaVersion = 1;

/// Accumulates records and writes them as CSV. The first line is
/// "# hermvp-diagnostics schema_version=1", the second the column names.
class DiagnosticsSink {
 public:
  void push(const DiagnosticsRecord& r) { records_.push_back(r); }
  const std::vector<DiagnosticsRecord>& records() const noexcept { return records_; }

  static void write_header(std::ostream& os);
  static void write_row(std::ostream& os, const DiagnosticsRecord& r);
  void write_csv(std::ostream& os) const;

  /// JSON object with min, max and drift (last - first) per quantity.
  std::string summary_json() const;

 private:
  std::vector<DiagnosticsRecord> records_;
};

/// n, lambda_n, damping rate per mode as CSV.
void write_lb_table(std::ostream& os, const LBOperator& op);

}  // namespace hermvp
