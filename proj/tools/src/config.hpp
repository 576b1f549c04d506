#pragma once

#include "geuler/grid.hpp"

#include <cstdint>
#include <string>

namespace geuler::cli {

/// Complete description of one command invocation. Every flag has a config
/// counterpart so runs can be replayed from a JSON file; the structure
/// round-trips through its JSON form unchanged.
struct RunConfig {
  std::string subcommand = "solve";

  // Instance selection.
  std::string grid = "three-point";  // three-point | midpoint:<n> | points:<p,...>
  int steps = 3;
  std::string endpoint = "flip";  // flip | identity | perm:<i,...>
  std::string cost;               // cost kind; empty picks the form's default
  std::string form = "reduced";   // reduced | full
  std::string arith = "rational";

  // Resource caps.
  std::uint64_t path_cap = kDefaultPathCap;
  double time_limit = 60.0;  // float-mode LP budget, seconds

  // threepoint table range.
  int min_steps = 3;
  int max_steps = 5;

  // branching resolution.
  int cells = 8;

  // sweep instance lists.
  std::string grids = "three-point,midpoint:4";
  std::string steps_list = "3,4,5";

  // render input and shape.
  std::string input;
  std::string format = "svg";  // svg | ascii
  int columns = 79;
  int rows = 21;

  std::string output;  // plan JSON, CSV, or rendered file; empty = stdout only

  bool operator==(const RunConfig&) const = default;
};

std::string config_to_json_string(const RunConfig& config);
RunConfig config_from_json_string(const std::string& text);
RunConfig load_config(const std::string& path);

SpatialGrid parse_grid_spec(const std::string& spec);
EndpointMap parse_endpoint_spec(const std::string& spec, const SpatialGrid& grid);

}  // namespace geuler::cli
