#include <iostream>

#include <CLI11.hpp>

#include "runner.hpp"

int main(int argc, char** argv) {
  using namespace hermvp::cli;

  CLI::App app{"Hermite-Fourier Vlasov-Poisson and velocity-advection driver"};
  app.require_subcommand(1);

  RunSpec spec;
  const auto add_run_flags = [&](CLI::App* sub) {
    sub->add_option("--config", spec.config_path, "Configuration file (key = value)")->required();
    sub->add_option("--out", spec.out_dir, "Output directory")->required();
    sub->add_flag("--force", spec.force, "Allow writing into a non-empty output directory");
    sub->add_option("--seed", spec.seed, "Seed for randomized initial data");
    sub->add_option("--set", spec.overrides, "Override a config entry, key=value (repeatable)");
    sub->add_flag("--deterministic", spec.deterministic, "Fixed reduction order (recorded in the manifest)");
  };

  auto* advect = app.add_subcommand("advect", "Velocity advection with Lenard-Bernstein stabilization");
  add_run_flags(advect);
  auto* vp = app.add_subcommand("vp", "Vlasov-Poisson run");
  add_run_flags(vp);
  auto* project = app.add_subcommand("project-ic", "Project the configured initial condition and write it out");
  add_run_flags(project);

  double M_field = 0.0, nu = 0.0;
  int N = 0;
  auto* stab = app.add_subcommand("stability-calc", "Advisory time-step bounds for a field magnitude");
  stab->add_option("--M", M_field, "Field magnitude bound M")->required();
  stab->add_option("--nu", nu, "Viscosity")->required();
  stab->add_option("--N", N, "Hermite truncation")->required();

  std::string basis = "AW";
  int k = 1, lbN = 0;
  auto* table = app.add_subcommand("lb-table", "Lenard-Bernstein eigenvalue table");
  table->add_option("--basis", basis, "AW or SW")->required();
  table->add_option("--k", k, "Operator order")->required();
  table->add_option("--N", lbN, "Hermite truncation")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  if (stab->parsed()) return run_stability_calc(M_field, nu, N, std::cout, std::cerr);
  if (table->parsed()) return run_lb_table(basis, k, lbN, std::cout, std::cerr);
  spec.command = app.get_subcommands().front()->get_name();
  return run(spec, std::cout, std::cerr);
}
