#include <CLI11.hpp>

#include <iostream>

#include "commands.hpp"
#include "config.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Biphoton interferometry for plasma diagnostics"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(bpi_version()));

  std::string config_path;
  std::optional<std::uint64_t> seed;
  bpi_cli::CommandOptions options;
  app.add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
  app.add_option("--seed", seed, "Monte Carlo master seed (overrides mc.seed)");
  app.add_option("--out", options.out, "Output path (stdout when omitted)");
  app.add_option("--format", options.format, "Output format")->check(CLI::IsMember({"csv", "json"}));

  const std::pair<const char*, const char*> commands[] = {
      {"dispersion", "Refractive-index term breakdown per species"},
      {"phase", "Chord phase shift and path-configuration delays"},
      {"dip", "Steady coincidence dip curve"},
      {"lg-dip", "Linear-growth coincidence dip curve at time t"},
      {"mc", "Monte Carlo dip scan with counts, optional events and a fit report"},
      {"fit", "Fit a dip curve or counts CSV"},
      {"scaling", "Estimator precision versus pair count"},
      {"sensitivity", "Phase and delay sensitivity limits"},
      {"reference-report", "Reference magnitude checks with pass/fail"},
  };
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    if (std::string(name) == "fit") sub->add_option("--input", options.input, "CSV to fit")->required();
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : bpi_cli::exit_validation;
  }

  try {
    bpi_cli::RunConfig cfg = config_path.empty() ? bpi_cli::RunConfig{} : bpi_cli::load_config(config_path);
    if (seed) cfg.mc.seed = *seed;
    return bpi_cli::run_command(app.get_subcommands().front()->get_name(), cfg, options);
  } catch (const bpi_cli::ConfigError& e) {
    std::cerr << "error: config: " << e.what() << '\n';
    return bpi_cli::exit_validation;
  } catch (const bpi_cli::CommandError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return bpi_cli::exit_numerical;
  }
}
