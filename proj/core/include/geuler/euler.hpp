#pragma once

#include "geuler/grid.hpp"
#include "geuler/measures.hpp"
#include "geuler/rational.hpp"
#include "geuler/sqrt3.hpp"

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace geuler {

/// Pressure potential entering the stationarity relation
///   w_{i+1} - 2 w_i + w_{i-1} = -p'(w_i).
/// Only the gradient is needed; harmonic() is p(x) = x^2/2.
template <class S>
struct PressureFunction {
  std::function<S(const S&)> grad;

  static PressureFunction harmonic() {
    return PressureFunction{[](const S& x) { return x; }};
  }
};

/// Largest interior stationarity defect
///   max_i |w_{i+1} - 2 w_i + w_{i-1} + p'(w_i)|,
/// which for the harmonic pressure is max_i |w_{i+1} - w_i + w_{i-1}|.
template <class S>
S el_residual(std::span<const S> path,
              const PressureFunction<S>& pressure = PressureFunction<S>::harmonic()) {
  if (path.size() < 3) {
    throw std::invalid_argument("el_residual: need at least three coordinates");
  }
  S worst(0);
  for (std::size_t i = 1; i + 1 < path.size(); ++i) {
    S r = path[i + 1] - path[i] - path[i] + path[i - 1] + pressure.grad(path[i]);
    if (r < S(0)) {
      r = -r;
    }
    if (r > worst) {
      worst = r;
    }
  }
  return worst;
}

/// Initial data for the closed-form stationary paths: position x, discrete
/// initial velocity v, and the number of unit time steps.
struct TrigPathParams {
  Sqrt3Rat x;
  Sqrt3Rat v;
  std::size_t steps = 3;
};

/// Stationary path w_n = x cos(n pi/3) + v sin(n pi/3) for n = 0..steps,
/// evaluated exactly: the cosines are in {1, 1/2, -1/2, -1} and the sines in
/// {0, sqrt(3)/2, -sqrt(3)/2}, so the result stays in the sqrt(3) field.
std::vector<Sqrt3Rat> solve_discrete_el(const TrigPathParams& params);

/// Discrete initial velocity (2 w_1 - w_0) / sqrt(3) recovered from the
/// first two coordinates; inverts solve_discrete_el on v.
Sqrt3Rat velocity_from_path(std::span<const Sqrt3Rat> path);

/// Piecewise linear maps on [-1,1] driving the branching construction; the
/// branch boundary x = 0 uses the x >= 0 formula.
Rat map_T1(const Rat& x);  // 2x-1 for x >= 0, else 2x+1
Rat map_T2(const Rat& x);  // x-1 for x >= 0, else x+1
Rat map_S1(const Rat& x);  // -x+1 for x >= 0, else -x-1
Rat map_S2(const Rat& x);  // -2x+1 for x >= 0, else -2x-1

/// Closed-form optimizer of the three-point problem with flip endpoint and
/// unit steps. Mass 1/(3(N-1)) rides each path that starts at 1, sits at 0
/// for one time step t_v, and continues to -1 (and each mirrored path); the
/// central mass stays at 0 except for 1/(3(N-1)) excursions to 1 and to -1.
/// Zero-mass atoms are removed, so N=3 has six atoms.
TransportPlan<Rat> split_optimizer_plan(std::size_t steps);

/// One-parameter family of optimizers around split_optimizer_plan: delta
/// shifts the excursion masses with alternating signs. Requires
/// |delta| <= 1/(3(N-1)); even N forces delta = 0, since any shift breaks a
/// marginal. delta_family_plan(3, 1/6) is a three-atom Monge plan.
TransportPlan<Rat> delta_family_plan(std::size_t steps, const Rat& delta);

/// Landmark exact costs of the three-point problem.
struct CostBounds {
  Rat no_split_optimum;     // best cost over non-splitting competitors: 2
  Rat middle_static_lower;  // lower bound when the central mass never moves: 8/3
  Rat split_optimum;        // attained optimum (4 + 4/(N-1))/3

  bool operator==(const CostBounds&) const = default;
};

CostBounds cost_bounds(std::size_t steps);

/// Components of the continuum optimizer on [-1,1] over times {0,1,2,3}:
/// the T-branch pushes uniform mass through (id, T1, T2, -id), the S-branch
/// through (id, S1, S2, -id), and the mixture averages the two.
enum class BranchComponent { kMixture, kTBranch, kSBranch };

/// Phase-space description of the continuum optimizer: from each start
/// point x the mass splits evenly onto the two discrete initial velocities
/// +-(3|x|-2)/sqrt(3).
struct ContinuousPlanSpec {
  BranchComponent component = BranchComponent::kMixture;

  static Sqrt3Rat branch_velocity(const Rat& x, bool positive);
};

/// Midpoint of the width-1/cells subcell of [-1,1] containing x.
Rat snap_to_subcell_midpoint(const Rat& x, std::size_t cells);

/// Image histogram of the 4*cells parameter-piece midpoints under `map`,
/// binned at subcell (1/cells) resolution with weight 1/(4*cells) each.
/// A measure-preserving map yields exactly 1/(2*cells) per bin.
std::vector<Rat> pushforward_histogram(std::size_t cells,
                                       const std::function<Rat(const Rat&)>& map);

/// One parameter piece of the discretized continuum optimizer: the piece
/// midpoint, the unsnapped path it generates, its discrete initial velocity,
/// and the mass it carries.
struct BranchTuple {
  Rat parameter;
  std::array<Rat, 4> exact;
  Sqrt3Rat velocity;
  Rat mass;
};

/// Discretization of one continuum-optimizer component at resolution
/// `cells`. The parameter interval [-1,1] is split into 4*cells pieces of
/// width 1/(2*cells); each piece midpoint x* generates the path
/// (x*, M1(x*), M2(x*), -x*).
///
/// `exact` keeps the unsnapped coordinates on the union grid they span and
/// is the faithful copy of the continuum component: splitting happens at
/// exactly the times it does in the continuum. `snapped` moves every
/// coordinate to its subcell midpoint, a perturbation of at most
/// 1/(4*cells), and lives on the uniform 2*cells-point grid, where its
/// marginals are exactly uniform and it is feasible for the transport LP
/// with flip endpoint.
struct BranchingDiscretization {
  std::size_t cells = 0;
  BranchComponent component = BranchComponent::kMixture;
  TransportPlan<Rat> exact;
  TransportPlan<Rat> snapped;
  std::vector<BranchTuple> tuples;
};

BranchingDiscretization discretized_branching_plan(std::size_t cells, BranchComponent component);

/// Action of the continuum optimizer with uniform probability marginals
/// on [-1,1]; equals 1 exactly.
Rat continuous_optimal_cost();

}  // namespace geuler
