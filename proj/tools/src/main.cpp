#include "commands.hpp"
#include "config.hpp"

#include "geuler/errors.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>

int main(int argc, char** argv) {
  using geuler::cli::RunConfig;

  RunConfig config;
  std::string config_path;

  CLI::App app{"Exact transport-plan solver for time-discretized incompressible flows"};
  app.add_option("--config", config_path,
                 "JSON run configuration; replaces all subcommand flags");

  CLI::App* solve = app.add_subcommand("solve", "Solve one transport LP and report the plan");
  solve->add_option("--grid", config.grid, "three-point | midpoint:<n> | points:<p,q,...>")
      ->capture_default_str();
  solve->add_option("--steps", config.steps, "number of time steps N")->capture_default_str();
  solve->add_option("--endpoint", config.endpoint, "flip | identity | perm:<i,...>")
      ->capture_default_str();
  solve->add_option("--cost", config.cost,
                    "cost name; defaults to the action matching --form");
  solve->add_option("--form", config.form, "reduced | full")->capture_default_str();
  solve->add_option("--arith", config.arith, "rational | float")->capture_default_str();
  solve->add_option("--path-cap", config.path_cap, "abort if the path count exceeds this")
      ->capture_default_str();
  solve->add_option("--time-limit", config.time_limit, "float-mode solve budget in seconds")
      ->capture_default_str();
  solve->add_option("--output", config.output, "write the optimal plan as JSON");

  CLI::App* threepoint =
      app.add_subcommand("threepoint", "Check the three-point flip family and emit a CSV");
  threepoint->add_option("--min-steps", config.min_steps, "first N")->capture_default_str();
  threepoint->add_option("--max-steps", config.max_steps, "last N")->capture_default_str();
  threepoint->add_option("--path-cap", config.path_cap, "abort if the path count exceeds this")
      ->capture_default_str();
  threepoint->add_option("--output", config.output, "also write the CSV here");

  CLI::App* branching =
      app.add_subcommand("branching", "Check the discretized branching construction");
  branching->add_option("--cells", config.cells, "parameter cells per unit (even)")
      ->capture_default_str();
  branching->add_option("--output", config.output,
                        "prefix for the three component plan JSONs");

  CLI::App* sweep = app.add_subcommand("sweep", "Float-mode solver sweep over a grid/step list");
  sweep->add_option("--grids", config.grids, "comma-separated grid specs")
      ->capture_default_str();
  sweep->add_option("--steps-list", config.steps_list, "comma-separated step counts")
      ->capture_default_str();
  sweep->add_option("--time-limit", config.time_limit, "per-instance budget in seconds")
      ->capture_default_str();
  sweep->add_option("--path-cap", config.path_cap, "abort if the path count exceeds this")
      ->capture_default_str();
  sweep->add_option("--output", config.output, "also write the CSV here");

  CLI::App* render = app.add_subcommand("render", "Render a plan JSON as SVG or ASCII");
  render->add_option("--input", config.input, "plan JSON path")->required();
  render->add_option("--format", config.format, "svg | ascii")->capture_default_str();
  render->add_option("--columns", config.columns, "ascii canvas width")->capture_default_str();
  render->add_option("--rows", config.rows, "ascii canvas height")->capture_default_str();
  render->add_option("--output", config.output, "write here instead of stdout");

  app.require_subcommand(0, 1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& help) {
    return app.exit(help);
  } catch (const CLI::CallForAllHelp& help) {
    return app.exit(help);
  } catch (const CLI::ParseError& error) {
    app.exit(error);
    return 1;
  }

  try {
    if (!config_path.empty()) {
      if (!app.get_subcommands().empty()) {
        throw std::invalid_argument("--config cannot be combined with a subcommand");
      }
      config = geuler::cli::load_config(config_path);
    } else if (solve->parsed()) {
      config.subcommand = "solve";
    } else if (threepoint->parsed()) {
      config.subcommand = "threepoint";
    } else if (branching->parsed()) {
      config.subcommand = "branching";
    } else if (sweep->parsed()) {
      config.subcommand = "sweep";
    } else if (render->parsed()) {
      config.subcommand = "render";
    } else {
      std::cerr << app.help();
      return 1;
    }
    return geuler::cli::dispatch(config);
  } catch (const geuler::cli::CheckFailure& error) {
    std::cerr << "check failed: " << error.what() << "\n";
    return 2;
  } catch (const geuler::cli::SolverFailure& error) {
    std::cerr << "solver failure: " << error.what() << "\n";
    return 3;
  } catch (const geuler::ResourceLimitError& error) {
    std::cerr << "resource limit: " << error.what() << "\n";
    return 3;
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << "\n";
    return 1;
  }
}
