#include "commands.hpp"

#include "geuler/costs.hpp"
#include "geuler/euler.hpp"
#include "geuler/lp.hpp"
#include "geuler/measures.hpp"
#include "geuler/plan_io.hpp"
#include "geuler/render.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace geuler::cli {

namespace {

PlanForm parse_form(const std::string& name) {
  if (name == "reduced") {
    return PlanForm::kReduced;
  }
  if (name == "full") {
    return PlanForm::kFull;
  }
  throw std::invalid_argument("form '" + name + "': expected reduced or full");
}

CostSpec pick_cost(const RunConfig& config, PlanForm form) {
  CostSpec spec;
  if (config.cost.empty()) {
    spec.kind = form == PlanForm::kReduced ? CostKind::kReducedAction : CostKind::kAction;
  } else {
    spec.kind = cost_kind_from_string(config.cost);
  }
  return spec;
}

std::string join_bools(const std::vector<bool>& flags, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < flags.size(); ++i) {
    if (i > 0) {
      out += sep;
    }
    out += flags[i] ? "true" : "false";
  }
  return out;
}

std::string format_seconds(double seconds) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", seconds);
  return buf;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open " + path + " for writing");
  }
  out << text;
  if (!out) {
    throw std::runtime_error("write to " + path + " failed");
  }
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open " + path);
  }
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

void require_claim(bool ok, const std::string& claim, int n) {
  if (!ok) {
    throw CheckFailure("claim '" + claim + "' failed at N=" + std::to_string(n));
  }
}

template <class S>
std::vector<bool> splitting_flags(const TransportPlan<S>& plan) {
  std::vector<bool> flags;
  flags.reserve(plan.path_length());
  for (std::size_t i = 0; i < plan.path_length(); ++i) {
    flags.push_back(is_mass_splitting(plan, i));
  }
  return flags;
}

template <class S>
int solve_impl(const RunConfig& config) {
  const SpatialGrid grid = parse_grid_spec(config.grid);
  if (config.steps < 2) {
    throw std::invalid_argument("steps must be at least 2");
  }
  const TimeGrid timegrid = TimeGrid::unit_steps(static_cast<std::size_t>(config.steps));
  const EndpointMap endpoint = parse_endpoint_spec(config.endpoint, grid);
  const PlanForm form = parse_form(config.form);
  AssemblyOptions assembly;
  assembly.path_cap = config.path_cap;
  const MmotLp<S> lp =
      assemble_mmot_lp<S>(grid, timegrid, endpoint, pick_cost(config, form), form, assembly);

  SimplexOptions simplex;
  if constexpr (!ScalarOps<S>::exact) {
    simplex.time_limit_seconds = config.time_limit;
    simplex.partial_pricing = true;
  }
  const LpSolution<S> solution = solve_mmot(lp, simplex);
  if (solution.status != LpStatus::kOptimal) {
    throw SolverFailure(std::string("solver finished with status ") +
                        to_string(solution.status));
  }

  const TransportPlan<S> plan = solution_plan(lp, solution);
  const TransportPlan<S> full =
      plan.form() == PlanForm::kReduced ? extend_plan(plan, endpoint) : plan;

  std::cout << "status optimal\n";
  std::cout << "value " << ScalarOps<S>::str(solution.objective_value) << "\n";
  std::cout << "columns " << lp.cols() << "\n";
  std::cout << "rows " << lp.row_count << "\n";
  std::cout << "iterations " << solution.iterations << "\n";
  std::cout << "seconds " << format_seconds(solution.seconds) << "\n";
  std::cout << "atoms " << full.atoms().size() << "\n";
  std::cout << "splitting " << join_bools(splitting_flags(full), ",") << "\n";
  std::vector<bool> monge;
  for (std::size_t i = 0; i < full.path_length(); ++i) {
    monge.push_back(is_monge(full, i).monge);
  }
  std::cout << "monge " << join_bools(monge, ",") << "\n";
  if (!config.output.empty()) {
    save_plan(full, config.output);
    std::cout << "plan " << config.output << "\n";
  }
  return 0;
}

}  // namespace

int run_solve(const RunConfig& config) {
  if (config.arith == "rational") {
    return solve_impl<Rat>(config);
  }
  if (config.arith == "float") {
    return solve_impl<double>(config);
  }
  throw std::invalid_argument("arith '" + config.arith + "': expected rational or float");
}

int run_threepoint(const RunConfig& config) {
  if (config.min_steps < 3) {
    throw std::invalid_argument("threepoint: minimum step count is 3");
  }
  if (config.max_steps < config.min_steps) {
    throw std::invalid_argument("threepoint: empty step range");
  }
  const SpatialGrid grid = three_point_grid();
  const EndpointMap endpoint = flip_map(grid);
  std::ostringstream csv;
  csv << "N,lp_value,closed_value,monge_value,splitting,probe_width\n";

  for (int n = config.min_steps; n <= config.max_steps; ++n) {
    const TimeGrid timegrid = TimeGrid::unit_steps(static_cast<std::size_t>(n));
    AssemblyOptions assembly;
    assembly.path_cap = config.path_cap;
    const MmotLp<Rat> lp =
        assemble_mmot_lp<Rat>(grid, timegrid, endpoint, CostSpec{CostKind::kReducedAction, {}},
                              PlanForm::kReduced, assembly);
    const LpSolution<Rat> solution = solve_mmot(lp);
    if (solution.status != LpStatus::kOptimal) {
      throw SolverFailure(std::string("three-point LP at N=") + std::to_string(n) +
                          " finished with status " + to_string(solution.status));
    }
    require_claim(solution.objective_value == Rat(4 * n, 3 * (n - 1)), "lp-value-formula", n);

    const TransportPlan<Rat> closed = split_optimizer_plan(static_cast<std::size_t>(n));
    const GridCost<Rat> action(CostSpec{CostKind::kAction, {}}, grid, timegrid);
    const Rat closed_value = plan_cost(closed, action);
    require_claim(closed_value == solution.objective_value, "closed-form-optimal", n);
    require_claim(lp_feasible(lp, reduce_plan(closed, endpoint)), "closed-form-feasible", n);

    const auto monge =
        monge_bruteforce<Rat>(grid, timegrid, endpoint, CostSpec{CostKind::kAction, {}});
    require_claim(monge.best_cost == Rat(2), "monge-value", n);
    if (n >= 4) {
      require_claim(solution.objective_value < monge.best_cost, "monge-strictly-above", n);
    } else {
      require_claim(solution.objective_value == monge.best_cost, "monge-equals-lp", n);
    }

    const TransportPlan<Rat> vertex =
        extend_plan(solution_plan(lp, solution), endpoint);
    const std::vector<bool> flags = splitting_flags(vertex);
    bool split_everywhere = true;
    for (bool f : flags) {
      split_everywhere = split_everywhere && f;
    }
    if (n >= 4) {
      require_claim(split_everywhere, "splitting-everywhere", n);
    }

    DiscretePath probe_path;
    probe_path.indices.push_back(1);
    for (int i = 1; i < n; ++i) {
      probe_path.indices.push_back(2);
    }
    const auto column = lp.column_index(probe_path);
    require_claim(column.has_value(), "probe-column-present", n);
    const FaceInterval<Rat> interval =
        optimal_face_probe(lp, solution.objective_value, *column);
    const Rat width = interval.upper - interval.lower;
    const Rat expected_width = n % 2 == 1 ? Rat(2, 3 * (n - 1)) : Rat(0);
    require_claim(width == expected_width, "probe-width", n);

    csv << n << "," << format_rational(solution.objective_value) << ","
        << format_rational(closed_value) << "," << format_rational(monge.best_cost) << ","
        << (split_everywhere ? "true" : "false") << "," << format_rational(width) << "\n";
  }

  std::cout << csv.str();
  if (!config.output.empty()) {
    write_text(config.output, csv.str());
  }
  return 0;
}

int run_branching(const RunConfig& config) {
  if (config.cells < 2 || config.cells % 2 != 0) {
    throw std::invalid_argument("branching: cell count must be even and >= 2");
  }
  const auto cells = static_cast<std::size_t>(config.cells);
  const auto n = config.cells;
  const auto start = std::chrono::steady_clock::now();

  const BranchingDiscretization mixture =
      discretized_branching_plan(cells, BranchComponent::kMixture);
  const BranchingDiscretization t_branch =
      discretized_branching_plan(cells, BranchComponent::kTBranch);
  const BranchingDiscretization s_branch =
      discretized_branching_plan(cells, BranchComponent::kSBranch);

  const Rat per_point(1, 2 * n);
  for (std::size_t i = 0; i < 4; ++i) {
    for (const Rat& mass : marginal(mixture.snapped, i)) {
      require_claim(mass == per_point, "snapped-marginals-uniform", n);
    }
  }
  for (const auto& tuple : mixture.tuples) {
    require_claim(el_residual<Rat>(tuple.exact) == 0, "unsnapped-stationarity", n);
    require_claim(modified_cost<Rat>(tuple.exact[0], tuple.exact[1], tuple.exact[2]) == 0,
                  "modified-cost-zero", n);
  }

  const GridCost<Rat> action(CostSpec{CostKind::kAction, {}}, mixture.snapped.grid(),
                             mixture.snapped.timegrid());
  const Rat cost = plan_cost(mixture.snapped, action);
  const Rat gap = cost >= 1 ? Rat(cost - 1) : Rat(1 - cost);
  require_claim(gap <= Rat(4, n), "cost-near-one", n);

  const std::vector<bool> mix_flags = splitting_flags(mixture.exact);
  for (bool f : mix_flags) {
    require_claim(f, "mixture-splitting-everywhere", n);
  }
  require_claim(!is_mass_splitting(t_branch.exact, 0), "t-branch-deterministic-start", n);
  require_claim(!is_mass_splitting(s_branch.exact, 0), "s-branch-deterministic-start", n);

  const auto elapsed = std::chrono::steady_clock::now() - start;
  std::cout << "cells " << n << "\n";
  std::cout << "atoms " << mixture.snapped.atoms().size() << "\n";
  std::cout << "cost " << format_rational(cost) << "\n";
  std::cout << "cost_gap " << format_rational(gap) << " (bound "
            << format_rational(Rat(4, n)) << ")\n";
  std::cout << "splitting " << join_bools(mix_flags, ",") << "\n";
  std::cout << "checks passed\n";
  std::cout << "seconds "
            << format_seconds(std::chrono::duration<double>(elapsed).count()) << "\n";

  if (!config.output.empty()) {
    save_plan(mixture.snapped, config.output + "-mixture.json");
    save_plan(t_branch.snapped, config.output + "-tbranch.json");
    save_plan(s_branch.snapped, config.output + "-sbranch.json");
    std::cout << "plans " << config.output << "-{mixture,tbranch,sbranch}.json\n";
  }
  return 0;
}

int run_sweep(const RunConfig& config) {
  std::ostringstream csv;
  csv << "grid,steps,status,value,splitting,monge,seconds,note\n";

  std::vector<std::string> grid_specs;
  {
    std::string current;
    for (char c : config.grids + ",") {
      if (c == ',') {
        if (!current.empty()) {
          grid_specs.push_back(current);
        }
        current.clear();
      } else {
        current += c;
      }
    }
  }
  std::vector<int> step_counts;
  {
    std::string current;
    for (char c : config.steps_list + ",") {
      if (c == ',') {
        if (!current.empty()) {
          step_counts.push_back(std::stoi(current));
        }
        current.clear();
      } else {
        current += c;
      }
    }
  }

  for (const std::string& spec : grid_specs) {
    for (int n : step_counts) {
      std::string status = "optimal";
      std::string value;
      std::string splitting;
      std::string monge;
      std::string note;
      const auto t0 = std::chrono::steady_clock::now();
      try {
        const SpatialGrid grid = parse_grid_spec(spec);
        const TimeGrid timegrid = TimeGrid::unit_steps(static_cast<std::size_t>(n));
        const EndpointMap endpoint = flip_map(grid);
        AssemblyOptions assembly;
        assembly.path_cap = config.path_cap;
        const MmotLp<double> lp =
            assemble_mmot_lp<double>(grid, timegrid, endpoint,
                                     CostSpec{CostKind::kReducedAction, {}},
                                     PlanForm::kReduced, assembly);
        SimplexOptions simplex;
        simplex.time_limit_seconds = config.time_limit;
        simplex.partial_pricing = true;
        const LpSolution<double> solution = solve_mmot(lp, simplex);
        status = to_string(solution.status);
        if (solution.status == LpStatus::kOptimal) {
          value = ScalarOps<double>::str(solution.objective_value);
          const TransportPlan<double> full =
              extend_plan(solution_plan(lp, solution), endpoint);
          const std::vector<bool> flags = splitting_flags(full);
          std::string joined;
          bool monge_everywhere = true;
          for (std::size_t i = 0; i < flags.size(); ++i) {
            if (i > 0) {
              joined += ";";
            }
            joined += flags[i] ? "1" : "0";
            monge_everywhere = monge_everywhere && !flags[i];
          }
          splitting = joined;
          monge = monge_everywhere ? "true" : "false";
        }
      } catch (const std::exception& error) {
        status = "error";
        note = error.what();
        for (char& c : note) {
          if (c == ',' || c == '\n') {
            c = ';';
          }
        }
      }
      const auto elapsed = std::chrono::steady_clock::now() - t0;
      csv << spec << "," << n << "," << status << "," << value << "," << splitting << ","
          << monge << "," << format_seconds(std::chrono::duration<double>(elapsed).count())
          << "," << note << "\n";
    }
  }

  std::cout << csv.str();
  if (!config.output.empty()) {
    write_text(config.output, csv.str());
  }
  return 0;
}

int run_render(const RunConfig& config) {
  if (config.input.empty()) {
    throw std::invalid_argument("render: --input plan JSON path is required");
  }
  if (config.format != "svg" && config.format != "ascii") {
    throw std::invalid_argument("render: format '" + config.format +
                                "': expected svg or ascii");
  }
  const std::string text = read_text(config.input);
  // Parse errors surface here with the byte offset of the problem.
  const nlohmann::json doc = nlohmann::json::parse(text);
  const std::string arith = doc.value("arith", "rational");

  std::string rendered;
  auto render_any = [&](const auto& plan) {
    if (config.format == "svg") {
      return render_svg(plan);
    }
    return render_ascii(plan, static_cast<std::size_t>(config.columns),
                        static_cast<std::size_t>(config.rows));
  };
  if (arith == "float") {
    rendered = render_any(plan_from_json_string<double>(text));
  } else {
    rendered = render_any(plan_from_json_string<Rat>(text));
  }

  if (config.output.empty()) {
    std::cout << rendered;
  } else {
    write_text(config.output, rendered);
    std::cout << "wrote " << config.output << "\n";
  }
  return 0;
}

int dispatch(const RunConfig& config) {
  if (config.subcommand == "solve") {
    return run_solve(config);
  }
  if (config.subcommand == "threepoint") {
    return run_threepoint(config);
  }
  if (config.subcommand == "branching") {
    return run_branching(config);
  }
  if (config.subcommand == "sweep") {
    return run_sweep(config);
  }
  if (config.subcommand == "render") {
    return run_render(config);
  }
  throw std::invalid_argument("unknown subcommand '" + config.subcommand + "'");
}

}  // namespace geuler::cli
