// graphon-spectrum: top of the spectrum and bipartiteness ratio of step
// graphons and weighted graphs.

#include <map>
#include <string>

#include "CLI11.hpp"

#include "graphon/cli.hpp"

int main(int argc, char** argv) {
  using graphon::cli::BetaMethod;
  using graphon::cli::Command;

  CLI::App app{"Top of the spectrum and bipartiteness ratio of step graphons"};
  app.require_subcommand(1, 1);

  graphon::cli::RunConfig config;
  std::string method = "auto";

  const std::map<std::string, Command> commands = {
      {"lambda-max", Command::lambda_max},
      {"beta", Command::beta},
      {"verify", Command::verify},
      {"from-graph", Command::from_graph},
      {"mixing", Command::mixing},
      {"round", Command::round}};
  const std::map<std::string, std::string> help = {
      {"lambda-max", "Top of the Laplacian spectrum"},
      {"beta", "Bipartiteness ratio (exhaustive and/or spectral rounding)"},
      {"verify", "Check the spectral/bipartiteness inequalities"},
      {"from-graph", "Associated step graphon of a weighted graph"},
      {"mixing", "Ratio along the doubling-map partition sequence"},
      {"round", "Threshold sweep of the top eigenfunction"}};

  for (const auto& [name, cmd] : commands) {
    CLI::App* sub = app.add_subcommand(name, help.at(name));
    sub->add_option("--input", config.input, "Graphon or graph JSON file")->required();
    sub->add_option("--out", config.output, "Report path (default stdout)");
    sub->add_option("--csv", config.csv, "CSV output (mixing and round)");
    sub->add_option("--grid", config.grid, "Grid resolution m")
        ->check(CLI::PositiveNumber);
    sub->add_option("--tol", config.tol, "Eigensolver tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--max-iter", config.max_iter, "Power iteration cap")
        ->check(CLI::PositiveNumber);
    sub->add_option("--seed", config.seed, "RNG seed");
    sub->add_option("--restarts", config.restarts, "Fractional search restarts")
        ->check(CLI::PositiveNumber);
    sub->add_option("--method", method, "exhaustive|rounding|both")
        ->check(CLI::IsMember({"auto", "exhaustive", "rounding", "both"}));
    sub->add_option("--blocks", config.blocks, "Cells per vertex for graph inputs")
        ->check(CLI::PositiveNumber);
    sub->add_option("--levels", config.levels, "Doubling levels for mixing");
    sub->add_flag("--no-timing", config.no_timing, "Report runtime_ms as 0");
    sub->callback([&config, cmd = cmd] { config.command = cmd; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Usage errors share the input-error exit code; --help exits 0.
    return app.exit(e) == 0 ? 0 : graphon::cli::kExitError;
  }

  for (const CLI::App* sub : app.get_subcommands()) {
    config.grid_explicit = sub->count("--grid") > 0;
  }
  if (method != "auto") config.method = *graphon::cli::parse_beta_method(method);
  return graphon::cli::run(config);
}
