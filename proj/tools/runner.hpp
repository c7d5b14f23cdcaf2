#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hermvp/error.hpp"
#include "hermvp/hermite.hpp"
#include "hermvp/vlasov_poisson.hpp"

namespace hermvp::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 2,
  kExitValidation = 3,
  kExitSolver = 4,
};

int exit_code_for(ErrorKind kind) noexcept;

struct RunSpec {
  std::string command;  // advect | vp | project-ic
  std::string config_path;
  std::filesystem::path out_dir;
  std::optional<std::int64_t> seed;
  std::vector<std::string> overrides;
  bool force = false;
  bool deterministic = false;
};

/// Runs a config-driven command. Errors are reported on `err` with their
/// category and mapped to an exit code; nothing is written to out_dir unless
/// the configuration validated.
int run(const RunSpec& spec, std::ostream& out, std::ostream& err);

/// Prints dt_visc, dt_spec and nu_suggested, one key=value per line.
int run_stability_calc(double M_field, double nu, int N, std::ostream& out, std::ostream& err);

/// Prints "n,lambda,kernel" rows; rows past double range read "overflow".
int run_lb_table(const std::string& basis, int k, int N, std::ostream& out, std::ostream& err);

/// Snapshot files.
///
/// Binary (little-endian):
///   8 bytes  magic "HVPSNAP1"
///   int32    N
///   int32    Mx
///   float64  Lx
///   float64  t
///   float64  re, im of C_{m,n} for m = -Mx..Mx (outer), n = 0..N (inner)
///
/// Text:
///   # hermvp-snapshot N=<N> Mx=<Mx> Lx=<Lx> t=<t>
///   m n re im        (one line per coefficient, same order)
struct Snapshot {
  CoefficientField state;
  double t;
};

void write_snapshot_binary(const std::filesystem::path& path, const CoefficientField& state, double t);
void write_snapshot_text(const std::filesystem::path& path, const CoefficientField& state, double t);
/// Detects the format from the leading bytes.
Snapshot read_snapshot(const std::filesystem::path& path);

/// f(x, v) tabulated as "x v f" lines on a full tensor grid (any order,
/// '#' comments allowed). x is periodic on [0, Lx); values are interpolated
/// linearly in both directions and taken as zero outside the v range.
class TabulatedDistribution {
 public:
  static TabulatedDistribution load(const std::filesystem::path& path, double Lx);
  double operator()(double x, double v) const;

 private:
  double Lx_ = 1.0;
  std::vector<double> xs_, vs_, f_;  // f_ row-major in x
};

}  // namespace hermvp::cli
