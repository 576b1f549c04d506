#pragma once

#include "config.hpp"

#include <stdexcept>

namespace geuler::cli {

/// A verified claim does not hold; maps to exit code 2.
struct CheckFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The solver did not produce an optimal solution; maps to exit code 3.
struct SolverFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int run_solve(const RunConfig& config);
int run_threepoint(const RunConfig& config);
int run_branching(const RunConfig& config);
int run_sweep(const RunConfig& config);
int run_render(const RunConfig& config);

/// Routes by config.subcommand; exceptions map to exit codes in main.
int dispatch(const RunConfig& config);

}  // namespace geuler::cli
