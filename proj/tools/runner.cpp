#include "runner.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "hermvp/advection.hpp"
#include "hermvp/config.hpp"
#include "hermvp/diagnostics.hpp"
#include "hermvp/trapezoidal.hpp"

#ifndef HERMVP_VERSION
#define HERMVP_VERSION "unknown"
#endif

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace hermvp::cli {

namespace {

constexpr char kMagic[8] = {'H', 'V', 'P', 'S', 'N', 'A', 'P', '1'};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// ---- little-endian encoding -------------------------------------------------

void put_u64(std::ostream& os, std::uint64_t v) {
  std::array<char, 8> b;
  for (int i = 0; i < 8; ++i) b[static_cast<std::size_t>(i)] = static_cast<char>((v >> (8 * i)) & 0xff);
  os.write(b.data(), 8);
}

void put_i32(std::ostream& os, std::int32_t v) {
  const auto u = static_cast<std::uint32_t>(v);
  std::array<char, 4> b;
  for (int i = 0; i < 4; ++i) b[static_cast<std::size_t>(i)] = static_cast<char>((u >> (8 * i)) & 0xff);
  os.write(b.data(), 4);
}

void put_f64(std::ostream& os, double v) { put_u64(os, std::bit_cast<std::uint64_t>(v)); }

std::uint64_t get_u64(std::istream& is) {
  std::array<unsigned char, 8> b{};
  if (!is.read(reinterpret_cast<char*>(b.data()), 8)) raise(ErrorKind::ConfigParse, "snapshot truncated");
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | b[static_cast<std::size_t>(i)];
  return v;
}

std::int32_t get_i32(std::istream& is) {
  std::array<unsigned char, 4> b{};
  if (!is.read(reinterpret_cast<char*>(b.data()), 4)) raise(ErrorKind::ConfigParse, "snapshot truncated");
  std::uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | b[static_cast<std::size_t>(i)];
  return static_cast<std::int32_t>(v);
}

double get_f64(std::istream& is) { return std::bit_cast<double>(get_u64(is)); }

// ---- output directory -------------------------------------------------------

void check_out_dir(const fs::path& dir, bool force) {
  if (dir.empty()) raise(ErrorKind::Validation, "no output directory given (--out)");
  if (!fs::exists(dir)) return;
  if (!fs::is_directory(dir)) raise(ErrorKind::Validation, "output path exists and is not a directory: " + dir.string());
  if (!fs::is_empty(dir) && !force)
    raise(ErrorKind::Validation, "output directory is not empty (use --force to overwrite): " + dir.string());
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) raise(ErrorKind::Validation, "cannot write " + path.string());
  return os;
}

// ---- config schemas ---------------------------------------------------------

const std::set<std::string> kVpKeys = {"N",      "Mx",          "k",          "nu",        "dt",
                                       "T",      "steps",       "Lx",         "picard_tol", "picard_max",
                                       "dealias", "field_mode", "ic",         "ic.amplitude", "ic.mode",
                                       "ic.file", "seed",       "snapshot.every", "snapshot.format"};

const std::set<std::string> kAdvectKeys = {"basis", "N", "k", "nu", "lb", "dt", "T", "steps", "ic", "ic.coeffs"};

std::int64_t resolve_steps(const Config& cfg, double dt, double T) {
  if (cfg.has("steps")) {
    const auto steps = cfg.get_int("steps");
    if (steps < 0) raise(ErrorKind::Validation, "steps must be >= 0");
    return steps;
  }
  if (!(dt > 0.0)) raise(ErrorKind::Validation, "dt must be positive to derive the step count from T");
  return static_cast<std::int64_t>(std::ceil(T / dt - 1e-9));
}

struct VpPlan {
  Config cfg;
  VPConfig vp;
  std::int64_t steps = 0;
  std::string ic;
  std::optional<std::int64_t> seed;
  std::int64_t snapshot_every = 0;
  std::string snapshot_format = "binary";
  CoefficientField initial{1, 1, 1.0};
  double t0 = 0.0;
};

CoefficientField random_perturbation(const VPConfig& vp, double amplitude, std::int64_t seed) {
  std::mt19937_64 rng(static_cast<std::uint64_t>(seed));
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  CoefficientField f = CoefficientField::equilibrium(vp.N, vp.Mx, vp.Lx);
  const HermiteBasis basis(BasisKind::AW, vp.N);
  for (int m = 1; m <= std::min(vp.Mx, 3); ++m)
    for (int n = 0; n <= std::min(vp.N, 3); ++n) {
      const cplx c(u(rng), u(rng));
      // Scale in the normalized basis so every Hermite mode carries a similar weight.
      f(m, n) = amplitude * basis.gamma(n) * c;
      f(-m, n) = std::conj(f(m, n));
    }
  return f;
}

VpPlan plan_vp(const RunSpec& spec) {
  VpPlan p;
  p.cfg = Config::load(spec.config_path);
  for (const auto& o : spec.overrides) p.cfg.apply_override(o);
  p.cfg.require_known(kVpKeys);
  p.vp = vp_config_from(p.cfg);
  p.steps = resolve_steps(p.cfg, p.vp.dt, p.vp.T);
  p.ic = p.cfg.get_string("ic", "landau");
  p.seed = spec.seed;
  if (!p.seed && p.cfg.has("seed")) p.seed = p.cfg.get_int("seed");
  p.snapshot_every = p.cfg.get_int("snapshot.every", 0);
  if (p.snapshot_every < 0) raise(ErrorKind::Validation, "snapshot.every must be >= 0");
  p.snapshot_format = p.cfg.get_string("snapshot.format", "binary");
  if (p.snapshot_format != "binary" && p.snapshot_format != "text")
    raise(ErrorKind::ConfigParse, "snapshot.format must be 'binary' or 'text'");

  const double amplitude = p.cfg.get_double("ic.amplitude", 0.01);
  if (p.ic == "landau") {
    p.initial = CoefficientField::landau(p.vp.N, p.vp.Mx, p.vp.Lx, amplitude,
                                         static_cast<int>(p.cfg.get_int("ic.mode", 1)));
  } else if (p.ic == "equilibrium") {
    p.initial = CoefficientField::equilibrium(p.vp.N, p.vp.Mx, p.vp.Lx);
  } else if (p.ic == "random") {
    if (!p.seed) raise(ErrorKind::Validation, "ic = random needs a seed (--seed or seed = ...)");
    p.initial = random_perturbation(p.vp, amplitude, *p.seed);
  } else if (p.ic == "tabulated") {
    const auto table = TabulatedDistribution::load(p.cfg.get_string("ic.file"), p.vp.Lx);
    p.initial = project_field(table, p.vp.N, p.vp.Mx, p.vp.Lx);
  } else if (p.ic == "snapshot") {
    auto snap = read_snapshot(p.cfg.get_string("ic.file"));
    if (snap.state.N() != p.vp.N || snap.state.Mx() != p.vp.Mx)
      raise(ErrorKind::Validation, "snapshot shape differs from configured N / Mx");
    if (std::abs(snap.state.Lx() - p.vp.Lx) > 1e-12 * p.vp.Lx)
      raise(ErrorKind::Validation, "snapshot Lx differs from configured Lx");
    p.initial = std::move(snap.state);
    p.t0 = snap.t;
  } else {
    raise(ErrorKind::ConfigParse, "ic must be one of landau, equilibrium, random, tabulated, snapshot");
  }
  return p;
}

json vp_resolved(const VpPlan& p) {
  return {{"N", p.vp.N},
          {"Mx", p.vp.Mx},
          {"k", p.vp.k},
          {"nu", p.vp.nu},
          {"dt", p.vp.dt},
          {"T", p.vp.T},
          {"steps", p.steps},
          {"Lx", p.vp.Lx},
          {"picard_tol", p.vp.picard_tol},
          {"picard_max", p.vp.picard_max},
          {"dealias", to_string(p.vp.dealias)},
          {"field_mode", to_string(p.vp.field_mode)},
          {"ic", p.ic},
          {"snapshot.every", p.snapshot_every},
          {"snapshot.format", p.snapshot_format}};
}

json manifest_base(const RunSpec& spec, const Config& cfg) {
  json m;
  m["program"] = "hermvp";
  m["version"] = HERMVP_VERSION;
  m["command"] = spec.command;
  m["config_path"] = spec.config_path;
  m["config"] = cfg.values();
  m["overrides"] = spec.overrides;
  m["seed"] = spec.seed ? json(*spec.seed) : json(nullptr);
  m["deterministic"] = spec.deterministic;
  return m;
}

void write_json(const fs::path& path, const json& j) {
  auto os = open_out(path);
  os << j.dump(2) << '\n';
}

void write_snapshot(const fs::path& dir, const VpPlan& p, const CoefficientField& state, double t, std::int64_t step) {
  char name[64];
  std::snprintf(name, sizeof name, "snap_%08lld.%s", static_cast<long long>(step),
                p.snapshot_format == "binary" ? "bin" : "txt");
  if (p.snapshot_format == "binary")
    write_snapshot_binary(dir / name, state, t);
  else
    write_snapshot_text(dir / name, state, t);
}

void fill_bounds(DiagnosticsRecord& r, const VPConfig& vp) {
  const auto b = stability_bounds(r.M_field, vp.nu, vp.N);
  r.dt_visc = b.dt_visc;
  r.dt_spec = b.dt_spec;
}

int run_vp(const RunSpec& spec, std::ostream& out, std::ostream& err) {
  const VpPlan p = plan_vp(spec);
  const LBOperator lb(BasisKind::AW, p.vp.k, p.vp.nu, p.vp.N);
  VlasovPoissonSolver solver(p.vp, lb);
  if (p.vp.dt == 0.0 && p.steps > 0) raise(ErrorKind::Validation, "dt must be positive for a time-stepping run");

  check_out_dir(spec.out_dir, spec.force);
  fs::create_directories(spec.out_dir);
  if (p.snapshot_every > 0) fs::create_directories(spec.out_dir / "snapshots");

  json manifest = manifest_base(spec, p.cfg);
  manifest["resolved"] = vp_resolved(p);
  manifest["seed"] = p.seed ? json(*p.seed) : json(nullptr);
  manifest["status"] = "running";
  write_json(spec.out_dir / "manifest.json", manifest);

  auto csv = open_out(spec.out_dir / "diagnostics.csv");
  DiagnosticsSink sink;
  DiagnosticsSink::write_header(csv);

  CoefficientField state = p.initial;
  const PoissonResult p0 = poisson_solve(state);
  if (!p0.neutral)
    err << "warning: initial state is not neutral, |1 - sqrt(pi) C00| = " << p0.neutrality_defect << '\n';
  ElectricField E = p0.E;
  double t = p.t0;

  auto record = [&](std::int64_t step, int iterations) {
    DiagnosticsRecord r = measure(state, E, step, t);
    r.picard_iterations = iterations;
    fill_bounds(r, p.vp);
    sink.push(r);
    DiagnosticsSink::write_row(csv, r);
    if (p.snapshot_every > 0 && step % p.snapshot_every == 0) write_snapshot(spec.out_dir / "snapshots", p, state, t, step);
    return r;
  };

  DiagnosticsRecord last = record(0, 0);
  std::int64_t advisory_exceeded = 0;
  int max_iterations = 0;
  std::int64_t neutrality_warnings = 0;
  try {
    for (std::int64_t j = 1; j <= p.steps; ++j) {
      if (p.vp.dt > std::min(last.dt_visc, last.dt_spec)) ++advisory_exceeded;
      StepResult res = solver.step(state);
      if (res.stats.neutrality_warning) ++neutrality_warnings;
      state = std::move(res.state);
      E = std::move(res.E);
      t = p.t0 + static_cast<double>(j) * p.vp.dt;
      max_iterations = std::max(max_iterations, res.stats.iterations);
      last = record(j, res.stats.iterations);
    }
  } catch (const Error& e) {
    csv.flush();
    manifest["status"] = "failed";
    manifest["error"] = {{"category", to_string(e.kind())}, {"message", e.what()}};
    write_json(spec.out_dir / "manifest.json", manifest);
    throw;
  }

  if (advisory_exceeded > 0)
    err << "note: dt exceeded the advisory stability bound on " << advisory_exceeded << " of " << p.steps
        << " steps\n";

  json summary = json::parse(sink.summary_json());
  summary["max_picard_iterations"] = max_iterations;
  summary["dt_advisory_exceeded_steps"] = advisory_exceeded;
  summary["neutrality_warnings"] = neutrality_warnings;
  write_json(spec.out_dir / "summary.json", summary);

  manifest["status"] = "completed";
  manifest["outputs"] = {"diagnostics.csv", "summary.json"};
  if (p.snapshot_every > 0) manifest["outputs"].push_back("snapshots/");
  write_json(spec.out_dir / "manifest.json", manifest);
  out << summary.dump(2) << '\n';
  return kExitOk;
}

int run_project_ic(const RunSpec& spec, std::ostream& out) {
  VpPlan p = plan_vp(spec);
  check_out_dir(spec.out_dir, spec.force);
  fs::create_directories(spec.out_dir);
  write_snapshot_binary(spec.out_dir / "initial.bin", p.initial, p.t0);
  write_snapshot_text(spec.out_dir / "initial.txt", p.initial, p.t0);
  const PoissonResult pr = poisson_solve(p.initial);
  json manifest = manifest_base(spec, p.cfg);
  manifest["resolved"] = vp_resolved(p);
  manifest["status"] = "completed";
  manifest["outputs"] = {"initial.bin", "initial.txt"};
  manifest["neutrality_defect"] = pr.neutrality_defect;
  write_json(spec.out_dir / "manifest.json", manifest);
  out << "projected " << p.ic << " onto N=" << p.vp.N << " Mx=" << p.vp.Mx << ", mass=" << fmt(moment(p.initial, 0))
      << ", neutrality_defect=" << fmt(pr.neutrality_defect) << '\n';
  return kExitOk;
}

std::vector<double> parse_coeffs(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const Config one = Config::parse("c = " + item);
    out.push_back(one.get_double("c"));
  }
  return out;
}

int run_advect(const RunSpec& spec, std::ostream& out) {
  Config cfg = Config::load(spec.config_path);
  for (const auto& o : spec.overrides) cfg.apply_override(o);
  cfg.require_known(kAdvectKeys);

  const BasisKind kind = basis_kind_from_string(cfg.get_string("basis", "AW"));
  const int N = static_cast<int>(cfg.get_int("N", 16));
  const int k = static_cast<int>(cfg.get_int("k", 1));
  const double nu = cfg.get_double("nu", 1.0);
  const bool use_lb = cfg.get_bool("lb", true);
  if (N < 1 || N > kMaxDegree) raise(ErrorKind::Validation, "N must lie in 1.." + std::to_string(kMaxDegree));
  if (k > N) raise(ErrorKind::Validation, "k must not exceed N");
  double dt = 0.0;
  if (cfg.get_string("dt", "auto") == "auto")
    dt = time_step_heuristic(nu, N);
  else
    dt = cfg.get_double("dt");
  if (!(dt > 0.0) || !std::isfinite(dt)) raise(ErrorKind::Validation, "dt must be positive");
  const double T = cfg.get_double("T", 1.0);
  const std::int64_t steps = resolve_steps(cfg, dt, T);

  const HermiteBasis basis(kind, N);
  std::vector<double> c0(static_cast<std::size_t>(N + 1), 0.0);
  const std::string ic = cfg.get_string("ic", "maxwellian");
  if (ic == "maxwellian") {
    c0[0] = 1.0;
  } else if (ic == "coeffs") {
    const auto given = parse_coeffs(cfg.get_string("ic.coeffs"));
    if (given.size() > c0.size()) raise(ErrorKind::Validation, "ic.coeffs has more than N+1 entries");
    std::copy(given.begin(), given.end(), c0.begin());
  } else {
    raise(ErrorKind::ConfigParse, "ic must be 'maxwellian' or 'coeffs'");
  }
  std::optional<LBOperator> lb;
  if (use_lb) lb.emplace(kind, k, nu, N);
  const AdvectionSystem system(CoefficientVector(basis, c0), lb);
  std::optional<StabilityWeights> weights;
  if (kind == BasisKind::AW && use_lb && k == 1) weights.emplace(nu, N);

  check_out_dir(spec.out_dir, spec.force);
  fs::create_directories(spec.out_dir);
  json manifest = manifest_base(spec, cfg);
  manifest["resolved"] = {{"basis", to_string(kind)}, {"N", N}, {"k", k}, {"nu", nu}, {"lb", use_lb},
                          {"dt", dt},  {"steps", steps}, {"ic", ic}};

  auto csv = open_out(spec.out_dir / "diagnostics.csv");
  csv << "# hermvp-advect schema_version=1\nstep,t,weighted_l2,mass,momentum,stability_Y\n";
  const auto observer = [&](const TrapState& s) {
    csv << s.step << ',' << fmt(s.t) << ',' << fmt(weighted_norm_sq(s.c)) << ',';
    if (kind == BasisKind::AW) csv << fmt(moment(s.c, 0)) << ',' << fmt(moment(s.c, 1));
    else csv << ',';
    csv << ',';
    if (weights) csv << fmt(stability_norm_y(s.c, *weights).y);
    csv << '\n';
  };
  const TrapState final_state = integrate(system, dt, steps, observer);

  auto coeffs = open_out(spec.out_dir / "coefficients.csv");
  coeffs << "n,C,Cstar\n";
  const auto normalized = final_state.c.to_normalized();
  for (int n = 0; n <= N; ++n)
    coeffs << n << ',' << fmt(final_state.c[static_cast<std::size_t>(n)]) << ','
           << fmt(normalized[static_cast<std::size_t>(n)]) << '\n';

  manifest["status"] = "completed";
  manifest["outputs"] = {"diagnostics.csv", "coefficients.csv"};
  write_json(spec.out_dir / "manifest.json", manifest);
  out << "advect " << to_string(kind) << " N=" << N << ": " << steps << " steps to t=" << fmt(final_state.t)
      << ", weighted_l2=" << fmt(weighted_norm_sq(final_state.c)) << '\n';
  return kExitOk;
}

template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const Error& e) {
    err << "error [" << to_string(e.kind()) << "]: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const fs::filesystem_error& e) {
    err << "error [io]: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "error [internal]: " << e.what() << '\n';
    return kExitSolver;
  }
}

}  // namespace

int exit_code_for(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::ConfigParse: return kExitConfig;
    case ErrorKind::SingularUpdate:
    case ErrorKind::NonConvergence: return kExitSolver;
    case ErrorKind::Overflow:
    case ErrorKind::InsufficientQuadrature:
    case ErrorKind::BasisMismatch:
    case ErrorKind::UnsupportedBasis:
    case ErrorKind::UnsupportedOrder:
    case ErrorKind::Validation: return kExitValidation;
  }
  return kExitSolver;
}

int run(const RunSpec& spec, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (spec.command == "vp") return run_vp(spec, out, err);
    if (spec.command == "advect") return run_advect(spec, out);
    if (spec.command == "project-ic") return run_project_ic(spec, out);
    raise(ErrorKind::ConfigParse, "unknown command '" + spec.command + "'");
  });
}

int run_stability_calc(double M_field, double nu, int N, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto b = stability_bounds(M_field, nu, N);
    out << "dt_visc=" << fmt(b.dt_visc) << '\n'
        << "dt_spec=" << fmt(b.dt_spec) << '\n'
        << "nu_suggested=" << fmt(b.nu_suggested) << '\n';
    return kExitOk;
  });
}

int run_lb_table(const std::string& basis, int k, int N, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const BasisKind kind = basis_kind_from_string(basis);
    if (k < 1) raise(ErrorKind::Validation, "k must be >= 1");
    if (N < 0) raise(ErrorKind::Validation, "N must be >= 0");
    out << "n,lambda,kernel\n";
    bool overflowed = false;
    for (int n = 0; n <= N; ++n) {
      out << n << ',';
      if (!overflowed) {
        try {
          out << fmt(LBOperator(kind, k, 1.0, n).eigenvalue(n));
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::Overflow) throw;
          overflowed = true;
        }
      }
      if (overflowed) out << "overflow";
      out << ',' << (n < k ? 1 : 0) << '\n';
    }
    return kExitOk;
  });
}

// ---- snapshots --------------------------------------------------------------

void write_snapshot_binary(const fs::path& path, const CoefficientField& state, double t) {
  auto os = open_out(path);
  os.write(kMagic, sizeof kMagic);
  put_i32(os, state.N());
  put_i32(os, state.Mx());
  put_f64(os, state.Lx());
  put_f64(os, t);
  for (const cplx& c : state.data()) {
    put_f64(os, c.real());
    put_f64(os, c.imag());
  }
  if (!os) raise(ErrorKind::Validation, "failed writing " + path.string());
}

void write_snapshot_text(const fs::path& path, const CoefficientField& state, double t) {
  auto os = open_out(path);
  os << "# hermvp-snapshot N=" << state.N() << " Mx=" << state.Mx() << " Lx=" << fmt(state.Lx()) << " t=" << fmt(t)
     << '\n';
  for (int m = -state.Mx(); m <= state.Mx(); ++m)
    for (int n = 0; n <= state.N(); ++n)
      os << m << ' ' << n << ' ' << fmt(state(m, n).real()) << ' ' << fmt(state(m, n).imag()) << '\n';
  if (!os) raise(ErrorKind::Validation, "failed writing " + path.string());
}

Snapshot read_snapshot(const fs::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) raise(ErrorKind::ConfigParse, "cannot open snapshot " + path.string());
  char head[8] = {};
  is.read(head, sizeof head);
  if (is && std::memcmp(head, kMagic, sizeof kMagic) == 0) {
    const int N = get_i32(is);
    const int Mx = get_i32(is);
    const double Lx = get_f64(is);
    const double t = get_f64(is);
    Snapshot s{CoefficientField(N, Mx, Lx), t};
    for (cplx& c : s.state.data()) {
      const double re = get_f64(is);
      const double im = get_f64(is);
      c = {re, im};
    }
    return s;
  }
  is.clear();
  is.seekg(0);
  std::string line;
  std::getline(is, line);
  int N = -1, Mx = -1;
  double Lx = 0.0, t = 0.0;
  if (std::sscanf(line.c_str(), "# hermvp-snapshot N=%d Mx=%d Lx=%lf t=%lf", &N, &Mx, &Lx, &t) != 4)
    raise(ErrorKind::ConfigParse, "unrecognized snapshot header in " + path.string());
  Snapshot s{CoefficientField(N, Mx, Lx), t};
  int m = 0, n = 0;
  double re = 0.0, im = 0.0;
  std::size_t count = 0;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (std::sscanf(line.c_str(), "%d %d %lf %lf", &m, &n, &re, &im) != 4 || m < -Mx || m > Mx || n < 0 || n > N)
      raise(ErrorKind::ConfigParse, "bad snapshot line: " + line);
    s.state(m, n) = {re, im};
    ++count;
  }
  if (count != s.state.data().size()) raise(ErrorKind::ConfigParse, "snapshot is missing coefficients");
  return s;
}

// ---- tabulated distributions ------------------------------------------------

TabulatedDistribution TabulatedDistribution::load(const fs::path& path, double Lx) {
  std::ifstream is(path);
  if (!is) raise(ErrorKind::ConfigParse, "cannot open tabulated distribution " + path.string());
  std::vector<std::array<double, 3>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (const auto h = line.find('#'); h != std::string::npos) line.resize(h);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::array<double, 3> r{};
    std::istringstream ls(line);
    if (!(ls >> r[0] >> r[1] >> r[2]))
      raise(ErrorKind::ConfigParse, path.string() + ":" + std::to_string(lineno) + ": expected 'x v f'");
    rows.push_back(r);
  }
  TabulatedDistribution d;
  d.Lx_ = Lx;
  for (const auto& r : rows) {
    d.xs_.push_back(r[0]);
    d.vs_.push_back(r[1]);
  }
  for (auto* axis : {&d.xs_, &d.vs_}) {
    std::sort(axis->begin(), axis->end());
    axis->erase(std::unique(axis->begin(), axis->end()), axis->end());
  }
  if (d.xs_.empty() || d.vs_.size() < 2) raise(ErrorKind::Validation, "tabulated distribution needs >= 2 v values");
  if (d.xs_.front() < 0.0 || d.xs_.back() >= Lx) raise(ErrorKind::Validation, "tabulated x must lie in [0, Lx)");
  if (rows.size() != d.xs_.size() * d.vs_.size())
    raise(ErrorKind::Validation, "tabulated distribution is not a full x-v tensor grid");
  d.f_.assign(rows.size(), std::nan(""));
  for (const auto& r : rows) {
    const auto i = static_cast<std::size_t>(std::lower_bound(d.xs_.begin(), d.xs_.end(), r[0]) - d.xs_.begin());
    const auto j = static_cast<std::size_t>(std::lower_bound(d.vs_.begin(), d.vs_.end(), r[1]) - d.vs_.begin());
    d.f_[i * d.vs_.size() + j] = r[2];
  }
  if (std::any_of(d.f_.begin(), d.f_.end(), [](double v) { return std::isnan(v); }))
    raise(ErrorKind::Validation, "tabulated distribution has duplicate or missing grid points");
  return d;
}

double TabulatedDistribution::operator()(double x, double v) const {
  if (v < vs_.front() || v > vs_.back()) return 0.0;
  const std::size_t nv = vs_.size();
  auto jt = std::upper_bound(vs_.begin(), vs_.end(), v);
  std::size_t j1 = std::min(static_cast<std::size_t>(jt - vs_.begin()), nv - 1);
  const std::size_t j0 = j1 - 1;
  const double sv = (v - vs_[j0]) / (vs_[j1] - vs_[j0]);

  const auto along_v = [&](std::size_t i) { return (1.0 - sv) * f_[i * nv + j0] + sv * f_[i * nv + j1]; };
  const std::size_t nx = xs_.size();
  if (nx == 1) return along_v(0);
  x = std::fmod(x, Lx_);
  if (x < 0.0) x += Lx_;
  // Periodic neighbours: the segment after the last node wraps to the first.
  auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
  const std::size_t i1 = static_cast<std::size_t>(it - xs_.begin()) % nx;
  const std::size_t i0 = (i1 + nx - 1) % nx;
  double x0 = xs_[i0], x1 = xs_[i1];
  if (x1 <= x0) x1 += Lx_;
  double xx = x;
  if (xx < x0) xx += Lx_;
  const double sx = (xx - x0) / (x1 - x0);
  return (1.0 - sx) * along_v(i0) + sx * along_v(i1);
}

}  // namespace hermvp::cli
