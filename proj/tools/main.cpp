#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "oscact/cli.hpp"

namespace {

using oscact::cli::RunConfig;

void add_common_options(CLI::App* cmd, RunConfig& config, std::string& format,
                        std::string& output) {
  cmd->add_option("--hbar", config.hbar, "Action quantum (default 1)")->check(CLI::PositiveNumber);
  cmd->add_option("--format", format, "Output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("-o,--output", output,
                  "Output file (default: stdout; relative paths resolve against "
                  "$OSCACT_OUTPUT_DIR)");
}

void add_grid_options(CLI::App* cmd, std::string& grid, std::string& points, bool& log_grid) {
  auto* g = cmd->add_option("--grid", grid, "Grid as start:stop:count");
  auto* p = cmd->add_option("--points", points, "Explicit comma-separated grid points");
  g->excludes(p);
  cmd->add_flag("--log", log_grid, "Log-spaced grid (range form only)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Oscillator actions, Darboux-transformed families and noise spectra"};
  app.require_subcommand(1);

  RunConfig config;
  std::string format = "csv";
  std::string output;
  std::string grid_text, points_text;
  bool log_grid = false;
  std::string family_text = "planck", seed_text = "vacuum", suite_text = "all";
  std::string lambda_text, resistance_text = "1";
  bool permissive = false;

  // action ------------------------------------------------------------------
  auto* action = app.add_subcommand("action", "Evaluate a closed-form action on a grid");
  action->add_option("--family", family_text, "planck|vacuum|thermal|fermi|general")
      ->check(CLI::IsMember({"planck", "vacuum", "thermal", "fermi", "general"}));
  action->add_option("--A", config.A, "General zero-mode coefficient A");
  action->add_option("--B", config.B, "General zero-mode coefficient B");
  action->add_option("--omega", [&config](const CLI::results_t& res) {
    config.omega = std::stod(res[0]);
    return true;
  }, "Frequency; adds the internal-energy column U = omega f");
  add_grid_options(action, grid_text, points_text, log_grid);
  add_common_options(action, config, format, output);
  action->add_flag("--permissive", permissive, "Flag singular rows instead of aborting");

  // family ------------------------------------------------------------------
  auto* family = app.add_subcommand("family", "Tabulate a Darboux-transformed family");
  family->add_option("--seed", seed_text, "planck|vacuum|fermi|general")
      ->check(CLI::IsMember({"planck", "vacuum", "fermi", "general"}));
  family->add_option("--A", config.A, "General seed coefficient A");
  family->add_option("--B", config.B, "General seed coefficient B");
  family->add_option("--lambda", lambda_text, "Comma-separated lambda list; inf = seed member");
  family->add_flag("--include-seed", config.include_seed, "Append the lambda=inf reference series");
  family->add_flag("--allow-negative-x", config.allow_negative_x,
                   "Planck seed: admit the x < 0 branch");
  add_grid_options(family, grid_text, points_text, log_grid);
  add_common_options(family, config, format, output);
  family->add_flag("--permissive", permissive, "Scan-only lambda validation (no positivity)");

  // verify ------------------------------------------------------------------
  auto* verify = app.add_subcommand("verify", "Run the equation-residual verification suites");
  verify->add_option("--suite", suite_text, "riccati|darboux|limits|entropy|fdt|all")
      ->check(CLI::IsMember({"riccati", "darboux", "limits", "entropy", "fdt", "all"}));
  verify->add_option("--tolerance", config.tolerance, "Residual tolerance (default 1e-8)")
      ->check(CLI::PositiveNumber);
  add_common_options(verify, config, format, output);

  // spectrum ----------------------------------------------------------------
  auto* spectrum = app.add_subcommand("spectrum", "Tabulate noise spectral power");
  spectrum->add_option("--seed", seed_text, "planck|vacuum|fermi|general")
      ->check(CLI::IsMember({"planck", "vacuum", "fermi", "general"}));
  spectrum->add_option("--A", config.A, "General seed coefficient A");
  spectrum->add_option("--B", config.B, "General seed coefficient B");
  spectrum->add_option("--lambda", lambda_text, "Comma-separated lambda list");
  spectrum->add_option("--beta", config.beta, "Inverse temperature (sign carries the T sign)");
  spectrum->add_option("--resistance", resistance_text,
                       "Resistance: '50', 'constant:50' or 'rlc:R=100,L=1,C=0.01'");
  spectrum->add_flag("--allow-negative-x", config.allow_negative_x,
                     "Admit x < 0 sweeps for the planck seed");
  add_grid_options(spectrum, grid_text, points_text, log_grid);
  add_common_options(spectrum, config, format, output);
  spectrum->add_flag("--permissive", permissive, "Scan-only lambda validation");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? oscact::cli::kExitOk : oscact::cli::kExitUsage;
  }

  try {
    config.output_format =
        format == "json" ? oscact::cli::OutputFormat::json : oscact::cli::OutputFormat::csv;
    config.output_path = output;
    config.strict = !permissive;

    if (!grid_text.empty()) {
      config.grid = oscact::cli::parse_grid(grid_text);
      config.grid.log = log_grid;
    } else if (!points_text.empty()) {
      config.grid = oscact::cli::parse_points(points_text);
    }
    if (!lambda_text.empty()) config.lambdas = oscact::cli::parse_lambda_list(lambda_text);

    if (action->parsed()) {
      config.command = oscact::cli::Command::action;
      config.seed = oscact::family_from_name(family_text);
      if (grid_text.empty() && points_text.empty())
        throw oscact::ArgumentError("action: --grid or --points is required");
    } else if (family->parsed()) {
      config.command = oscact::cli::Command::family;
      config.seed = oscact::family_from_name(seed_text);
      if (grid_text.empty() && points_text.empty())
        throw oscact::ArgumentError("family: --grid or --points is required");
    } else if (verify->parsed()) {
      config.command = oscact::cli::Command::verify;
      config.suite = oscact::suite_from_name(suite_text);
    } else if (spectrum->parsed()) {
      config.command = oscact::cli::Command::spectrum;
      config.seed = oscact::family_from_name(seed_text);
      config.resistance = oscact::cli::parse_resistance(resistance_text);
      if (grid_text.empty() && points_text.empty())
        throw oscact::ArgumentError("spectrum: --grid or --points is required");
    }
  } catch (const oscact::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return oscact::cli::kExitUsage;
  }

  return oscact::cli::run_command(config, std::cout, std::cerr);
}
