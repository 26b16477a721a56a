// cgwave: command-line front end.
//
//   cgwave dispersion   [--config F] [--out D]
//   cgwave kernel-check [--config F] [--out D] [--k K]
//   cgwave branch       [--config F] [--out D] [--k K] [--s-max S] [--steps N] [--n-modes N]
//   cgwave validate     [--config F] [--out D] [--branch FILE] [--point I]
//   cgwave reconstruct  [--config F] [--out D] [--branch FILE] [--point I]

#include <iostream>

#include "CLI11.hpp"
#include "cgwave/cli/commands.hpp"

int main(int argc, char** argv) {
  using cgwave::cli::Overrides;
  CLI::App app{"Steady capillary-gravity waves: dispersion, bifurcation branches, flow-force fields"};
  app.require_subcommand(1);

  Overrides o;
  std::string config, out, branch;
  double k = 0.0, s_max = 0.0;
  int steps = 0, n_modes = 0, point = 0;

  const auto common = [&](CLI::App* sub) {
    sub->add_option("--config", config, "INI configuration file")->check(CLI::ExistingFile);
    sub->add_option("--out", out, "output directory (overrides CGWAVE_OUT_DIR and [output] dir)");
  };
  const auto physics = [&](CLI::App* sub) {
    sub->add_option("--k", k, "wavenumber 2*pi/L [1/m]");
    sub->add_option("--n-modes", n_modes, "Fourier modes N");
  };

  CLI::App* dispersion = app.add_subcommand("dispersion", "tabulate lambda*(k) over [dispersion]");
  common(dispersion);
  CLI::App* kernel = app.add_subcommand("kernel-check", "kernel simplicity report at k");
  common(kernel);
  physics(kernel);
  CLI::App* br = app.add_subcommand("branch", "trace the bifurcating branch at k");
  common(br);
  physics(br);
  br->add_option("--s-max", s_max, "largest amplitude s [m]");
  br->add_option("--steps", steps, "number of continuation steps");
  CLI::App* validate = app.add_subcommand("validate", "reconstruct and audit every branch point");
  CLI::App* recon = app.add_subcommand("reconstruct", "write the flow-force fields of one point");
  for (CLI::App* sub : {validate, recon}) {
    common(sub);
    sub->add_option("--branch", branch, "branch JSON (default <out>/branch.json)");
    sub->add_option("--point", point, "point index");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cgwave::cli::kExitConfig;
  }

  CLI::App* sub = app.get_subcommands().front();
  const auto given = [&](const char* name) {
    try {
      return sub->count(name) > 0;
    } catch (const CLI::OptionNotFound&) {
      return false;
    }
  };
  if (given("--config")) o.config_path = config;
  if (given("--out")) o.out_dir = out;
  if (given("--k")) o.k = k;
  if (given("--s-max")) o.s_max = s_max;
  if (given("--steps")) o.steps = steps;
  if (given("--n-modes")) o.n_modes = n_modes;
  if (given("--branch")) o.branch_file = branch;
  if (given("--point")) o.point = point;

  return cgwave::cli::run_command(sub->get_name(), o, std::cerr);
}
