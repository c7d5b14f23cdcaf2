#include "hermvp/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <ostream>

#include <nlohmann/json.hpp>

#include "hermvp/error.hpp"

namespace hermvp {

namespace {

constexpr double kSqrtPi = 1.7724538509055160273;

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

std::vector<double> moment_overlaps(int m, int N) {
  if (m < 0 || N < 0) raise(ErrorKind::Validation, "moment_overlaps: negative order");
  const int width = std::max(m, N) + 2;
  std::vector<double> row(static_cast<std::size_t>(width), 0.0), next(row.size());
  row[0] = kSqrtPi;
  for (int j = 0; j < m; ++j) {
    for (int n = 0; n + 1 < width; ++n) next[n] = (n > 0 ? n * row[n - 1] : 0.0) + 0.5 * row[n + 1];
    next[width - 1] = (width - 1) * row[width - 2];
    std::swap(row, next);
  }
  row.resize(static_cast<std::size_t>(N + 1));
  return row;
}

double moment(const CoefficientVector& c, int m) {
  if (c.basis().kind() != BasisKind::AW)
    raise(ErrorKind::UnsupportedBasis, "moment: physical moments are defined for the AW basis only");
  if (m < 0 || m > c.N()) raise(ErrorKind::Validation, "moment: order must satisfy 0 <= m <= N");
  const auto poly = c.to_polynomial();
  const auto I = moment_overlaps(m, c.N());
  double sum = 0.0;
  for (int n = 0; n <= std::min(m, c.N()); ++n) sum += poly[static_cast<std::size_t>(n)] * I[static_cast<std::size_t>(n)];
  return sum;
}

double moment(const CoefficientField& state, int m) {
  if (m < 0 || m > state.N()) raise(ErrorKind::Validation, "moment: order must satisfy 0 <= m <= N");
  const auto I = moment_overlaps(m, state.N());
  double sum = 0.0;
  for (int n = 0; n <= m; ++n) sum += state(0, n).real() * I[static_cast<std::size_t>(n)];
  return state.Lx() * sum;
}

double hermite_weighted_h(const CoefficientField& state) {
  const HermiteBasis basis = state.basis();
  const auto norms = basis.norms_sq();
  double sum = 0.0;
  for (int m = -state.Mx(); m <= state.Mx(); ++m)
    for (int n = 0; n <= state.N(); ++n) sum += std::norm(state(m, n)) * norms[static_cast<std::size_t>(n)];
  return state.Lx() * sum;
}

double field_energy(const ElectricField& E, double Lx) {
  double sum = 0.0;
  for (const auto& e : E.Ehat) sum += std::norm(e);
  return 0.5 * Lx * sum;
}

DiagnosticsRecord measure(const CoefficientField& state, const ElectricField& E, long long step, double t) {
  DiagnosticsRecord r;
  r.step = step;
  r.t = t;
  r.mass = moment(state, 0);
  r.momentum = state.N() >= 1 ? moment(state, 1) : 0.0;
  r.moment2 = state.N() >= 2 ? moment(state, 2) : 0.0;
  r.field_energy = field_energy(E, state.Lx());
  r.gauss_residual = gauss_residual(state, E);
  r.weighted_l2 = hermite_weighted_h(state);
  r.M_field = field_max_estimate(E, state).direct;
  return r;
}

void DiagnosticsSink::write_header(std::ostream& os) {
  os << "# hermvp-diagnostics schema_version=" << kDiagnosticsSchemaVersion << '\n'
     << "step,t,mass,momentum,moment2,field_energy,gauss_residual,weighted_l2,stability_Y,M_field,"
        "picard_iterations,dt_visc,dt_spec\n";
}

void DiagnosticsSink::write_row(std::ostream& os, const DiagnosticsRecord& r) {
  os << r.step << ',' << fmt(r.t) << ',' << fmt(r.mass) << ',' << fmt(r.momentum) << ',' << fmt(r.moment2) << ','
     << fmt(r.field_energy) << ',' << fmt(r.gauss_residual) << ',' << fmt(r.weighted_l2) << ','
     << (r.stability_Y ? fmt(*r.stability_Y) : std::string()) << ',' << fmt(r.M_field) << ','
     << r.picard_iterations << ',' << fmt(r.dt_visc) << ',' << fmt(r.dt_spec) << '\n';
}

void DiagnosticsSink::write_csv(std::ostream& os) const {
  write_header(os);
  for (const auto& r : records_) write_row(os, r);
}

std::string DiagnosticsSink::summary_json() const {
  using Getter = std::function<double(const DiagnosticsRecord&)>;
  const std::vector<std::pair<const char*, Getter>> columns = {
      {"mass", [](const DiagnosticsRecord& r) { return r.mass; }},
      {"momentum", [](const DiagnosticsRecord& r) { return r.momentum; }},
      {"moment2", [](const DiagnosticsRecord& r) { return r.moment2; }},
      {"field_energy", [](const DiagnosticsRecord& r) { return r.field_energy; }},
      {"total_energy", [](const DiagnosticsRecord& r) { return 0.5 * r.moment2 + r.field_energy; }},
      {"gauss_residual", [](const DiagnosticsRecord& r) { return r.gauss_residual; }},
      {"weighted_l2", [](const DiagnosticsRecord& r) { return r.weighted_l2; }},
  };
  nlohmann::json out;
  out["schema_version"] = kDiagnosticsSchemaVersion;
  out["records"] = records_.size();
  if (!records_.empty()) {
    out["t_final"] = records_.back().t;
    for (const auto& [name, get] : columns) {
      double lo = get(records_.front()), hi = lo;
      for (const auto& r : records_) {
        lo = std::min(lo, get(r));
        hi = std::max(hi, get(r));
      }
      out["quantities"][name] = {{"min", lo}, {"max", hi}, {"drift", get(records_.back()) - get(records_.front())}};
    }
  }
  return out.dump(2);
}

void write_lb_table(std::ostream& os, const LBOperator& op) {
  os << "n,lambda,damping_rate\n";
  for (int n = 0; n <= op.N(); ++n)
    os << n << ',' << fmt(op.eigenvalue(n)) << ',' << fmt(op.nu() * op.damping(n)) << '\n';
}

}  // namespace hermvp
