#include <string>
#include <vector>

#include <CLI11.hpp>

#include "viscowave/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{
      "viscowave: 1D nonlinear wave solver with p-Laplacian viscosity, "
      "set-valued forcing and eps K_r regularization"};
  app.require_subcommand(1);

  std::string config_path, out_dir = "out", preset = "klein_gordon";
  std::vector<std::string> overrides;
  std::vector<double> eps_list, r_list;

  CLI::App* solve = app.add_subcommand("solve", "solve one trajectory");
  solve->add_option("--config", config_path, "key=value config file");
  solve->add_option("--out", out_dir, "output directory (default: out)");
  solve->add_option("overrides", overrides, "key=value overrides");

  CLI::App* sweep = app.add_subcommand("sweep", "eps / r continuation sweep");
  sweep->add_option("--config", config_path, "key=value config file");
  sweep->add_option("--out", out_dir, "output directory (default: out)");
  sweep->add_option("--eps", eps_list, "descending eps values")
      ->delimiter(',')
      ->required();
  sweep->add_option("--r", r_list, "regularizer orders (default: config r)")
      ->delimiter(',');
  sweep->add_option("overrides", overrides, "key=value overrides");

  CLI::App* verify =
      app.add_subcommand("verify", "run the invariant suite for a preset");
  verify->add_option("preset", preset, "preset name")->required();
  verify->add_option("overrides", overrides, "key=value overrides");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : viscowave::cli::exit_config_error;
  }

  if (solve->parsed())
    return viscowave::cli::cmd_solve(config_path, overrides, out_dir);
  if (sweep->parsed())
    return viscowave::cli::cmd_sweep(config_path, overrides, eps_list, r_list,
                                     out_dir);
  return viscowave::cli::cmd_verify(preset, overrides);
}
