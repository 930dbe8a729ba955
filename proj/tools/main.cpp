#include "conformal_cli/run.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
  using namespace conformal::cli;

  CLI::App app{"Conformal points of symmetric two-tensors on surfaces"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1, 1);

  RunOptions options;
  std::string out;
  std::uint64_t seed = 0;

  const std::map<std::string, std::string> help{
      {"verify", "index identity for (g, h)"},
      {"diffeo", "boundary windings of a diffeomorphism"},
      {"vf", "index identity for the dbar of a vector field"},
      {"umbilics", "umbilical points of an ellipsoid"},
      {"realize", "build h with prescribed conformal points and windings"},
      {"explore", "search for f vanishing on the circle with nowhere-zero dbar f"}};
  for (const auto& name : commands()) {
    CLI::App* sub = app.add_subcommand(name, help.at(name));
    sub->add_option("--config", options.config, "JSON configuration file")->required();
    sub->add_option("--out", out, "directory for report.json and plot data");
    sub->add_flag("--plot", options.plot, "write CSV grids and a points file (needs --out)");
    sub->add_option("--seed", seed, "override the config seed");
    sub->add_flag("--timing", options.timing, "include wall-clock time in the report");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 3;
  }

  for (const auto* sub : app.get_subcommands()) options.command = sub->get_name();
  const CLI::App* sub = app.get_subcommand(options.command);
  if (!out.empty()) options.out = out;
  if (sub->count("--seed") > 0) options.seed = seed;

  const RunReport report = run(options);
  std::cout << serialize(report);
  if (report.error) std::cerr << "error: " << report.error->kind << ": " << report.error->message << "\n";
  return report.exit_code;
}
