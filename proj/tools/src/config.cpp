#include "config.hpp"

#include "geuler/rational.hpp"

#include <json.hpp>

#include <fstream>
#include <stdexcept>
#include <vector>

namespace geuler::cli {

namespace {

using OrderedJson = nlohmann::ordered_json;

std::vector<std::string> split_list(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string current;
  for (char c : text) {
    if (c == sep) {
      parts.push_back(current);
      current.clear();
    } else {
      current += c;
    }
  }
  parts.push_back(current);
  return parts;
}

}  // namespace

std::string config_to_json_string(const RunConfig& config) {
  OrderedJson doc;
  doc["subcommand"] = config.subcommand;
  doc["grid"] = config.grid;
  doc["steps"] = config.steps;
  doc["endpoint"] = config.endpoint;
  doc["cost"] = config.cost;
  doc["form"] = config.form;
  doc["arith"] = config.arith;
  doc["path_cap"] = config.path_cap;
  doc["time_limit"] = config.time_limit;
  doc["min_steps"] = config.min_steps;
  doc["max_steps"] = config.max_steps;
  doc["cells"] = config.cells;
  doc["grids"] = config.grids;
  doc["steps_list"] = config.steps_list;
  doc["input"] = config.input;
  doc["format"] = config.format;
  doc["columns"] = config.columns;
  doc["rows"] = config.rows;
  doc["output"] = config.output;
  return doc.dump(2) + "\n";
}

RunConfig config_from_json_string(const std::string& text) {
  const OrderedJson doc = OrderedJson::parse(text);
  if (!doc.is_object()) {
    throw std::runtime_error("config JSON: document must be an object");
  }
  RunConfig config;
  auto read_string = [&](const char* key, std::string& field) {
    if (doc.contains(key)) {
      field = doc[key].get<std::string>();
    }
  };
  auto read_int = [&](const char* key, int& field) {
    if (doc.contains(key)) {
      field = doc[key].get<int>();
    }
  };
  read_string("subcommand", config.subcommand);
  read_string("grid", config.grid);
  read_int("steps", config.steps);
  read_string("endpoint", config.endpoint);
  read_string("cost", config.cost);
  read_string("form", config.form);
  read_string("arith", config.arith);
  if (doc.contains("path_cap")) {
    config.path_cap = doc["path_cap"].get<std::uint64_t>();
  }
  if (doc.contains("time_limit")) {
    config.time_limit = doc["time_limit"].get<double>();
  }
  read_int("min_steps", config.min_steps);
  read_int("max_steps", config.max_steps);
  read_int("cells", config.cells);
  read_string("grids", config.grids);
  read_string("steps_list", config.steps_list);
  read_string("input", config.input);
  read_string("format", config.format);
  read_int("columns", config.columns);
  read_int("rows", config.rows);
  read_string("output", config.output);
  return config;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("config: cannot open " + path);
  }
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return config_from_json_string(text);
}

SpatialGrid parse_grid_spec(const std::string& spec) {
  if (spec == "three-point") {
    return three_point_grid();
  }
  if (spec.rfind("midpoint:", 0) == 0) {
    const std::string arg = spec.substr(9);
    std::size_t used = 0;
    const int n = std::stoi(arg, &used);
    if (used != arg.size() || n <= 0) {
      throw std::invalid_argument("grid spec: midpoint count '" + arg +
                                  "' is not a positive integer");
    }
    return uniform_symmetric_grid(static_cast<std::size_t>(n));
  }
  if (spec.rfind("points:", 0) == 0) {
    std::vector<Rat> points;
    for (const std::string& part : split_list(spec.substr(7), ',')) {
      points.push_back(parse_rational(part));
    }
    return SpatialGrid(std::move(points));
  }
  throw std::invalid_argument("grid spec '" + spec +
                              "': expected three-point, midpoint:<n>, or points:<p,...>");
}

EndpointMap parse_endpoint_spec(const std::string& spec, const SpatialGrid& grid) {
  if (spec == "flip") {
    return flip_map(grid);
  }
  if (spec == "identity") {
    return EndpointMap::identity(grid.size());
  }
  if (spec.rfind("perm:", 0) == 0) {
    std::vector<std::int32_t> permutation;
    for (const std::string& part : split_list(spec.substr(5), ',')) {
      std::size_t used = 0;
      const int idx = std::stoi(part, &used);
      if (used != part.size()) {
        throw std::invalid_argument("endpoint spec: '" + part + "' is not an integer");
      }
      permutation.push_back(idx);
    }
    return EndpointMap(std::move(permutation));
  }
  throw std::invalid_argument("endpoint spec '" + spec +
                              "': expected flip, identity, or perm:<i,...>");
}

}  // namespace geuler::cli
