#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"
#include "ghbf/suites.hpp"

int main(int argc, char** argv) {
  namespace cli = ghbf::cli;
  CLI::App app{"ghbf: periodic pseudo-spectral flows and stretch-fold diagnostics"};
  app.require_subcommand(1);

  std::string config, out, suite, snapshot;
  std::optional<double> tolerance;

  auto* sim = app.add_subcommand("simulate", "integrate a config and write series.csv and snapshots");
  sim->add_option("--config", config, "config file")->required()->check(CLI::ExistingFile);
  sim->add_option("--out", out, "run directory")->required();

  auto* ver = app.add_subcommand("verify", "residual table for an identity suite");
  ver->add_option("--config", config, "config file")->required()->check(CLI::ExistingFile);
  ver->add_option("--suite", suite, "ideal | boussinesq | compressible-q1 | compressible-q2")
      ->required()
      ->check(CLI::IsMember(ghbf::suite_names()));
  ver->add_option("--tolerance", tolerance, "override every row's tolerance");
  ver->add_option("--out", out, "also write the table as CSV here");

  auto* surf = app.add_subcommand("surface-flux", "Lagrangian B-flux balance on a marker surface");
  surf->add_option("--config", config, "config file")->required()->check(CLI::ExistingFile);
  surf->add_option("--out", out, "run directory")->required();

  auto* diag = app.add_subcommand("diagnose", "derived-field snapshot from a state snapshot");
  diag->add_option("--config", config, "config file")->required()->check(CLI::ExistingFile);
  diag->add_option("--snapshot", snapshot, "snapshot with u and theta")->required();
  diag->add_option("--out", out, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::config_error;
  }

  if (*sim) return cli::guarded([&] { return cli::simulate(config, out, std::cout); }, std::cerr);
  if (*ver) {
    std::optional<std::filesystem::path> dir;
    if (!out.empty()) dir = out;
    return cli::guarded([&] { return cli::verify(config, suite, tolerance, dir, std::cout); }, std::cerr);
  }
  if (*surf)
    return cli::guarded([&] { return cli::surface_flux(config, out, std::cout); }, std::cerr,
                        cli::surface_invalidated);
  return cli::guarded([&] { return cli::diagnose(config, snapshot, out, std::cout); }, std::cerr);
}
