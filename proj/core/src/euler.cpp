#include "geuler/euler.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>

namespace geuler {

namespace {

// cos(n*pi/3) and sin(n*pi/3)/sqrt(3) for n mod 6; the sine coefficients are
// stored divided by sqrt(3) so every table entry is rational.
constexpr int kCosNum[6] = {2, 1, -1, -2, -1, 1};
constexpr int kSinNum[6] = {0, 3, 3, 0, -3, -3};

void require_unit_interval(const Rat& x, const char* who) {
  if (x < -1 || x > 1) {
    throw std::invalid_argument(std::string(who) + ": argument " + format_rational(x) +
                                " lies outside [-1, 1]");
  }
}

}  // namespace

std::vector<Sqrt3Rat> solve_discrete_el(const TrigPathParams& params) {
  std::vector<Sqrt3Rat> path;
  path.reserve(params.steps + 1);
  for (std::size_t n = 0; n <= params.steps; ++n) {
    const std::size_t k = n % 6;
    // cos = kCosNum/2, sin = (kSinNum/6) * sqrt(3).
    const Sqrt3Rat cosine(Rat(kCosNum[k], 2));
    const Sqrt3Rat sine(Rat(0), Rat(kSinNum[k], 6));
    path.push_back(params.x * cosine + params.v * sine);
  }
  return path;
}

Sqrt3Rat velocity_from_path(std::span<const Sqrt3Rat> path) {
  if (path.size() < 2) {
    throw std::invalid_argument("velocity_from_path: need at least two coordinates");
  }
  return (path[1] + path[1] - path[0]) / Sqrt3Rat::sqrt3();
}

Rat map_T1(const Rat& x) {
  require_unit_interval(x, "map_T1");
  return x >= 0 ? Rat(2 * x - 1) : Rat(2 * x + 1);
}

Rat map_T2(const Rat& x) {
  require_unit_interval(x, "map_T2");
  return x >= 0 ? Rat(x - 1) : Rat(x + 1);
}

Rat map_S1(const Rat& x) {
  require_unit_interval(x, "map_S1");
  return x >= 0 ? Rat(-x + 1) : Rat(-x - 1);
}

Rat map_S2(const Rat& x) {
  require_unit_interval(x, "map_S2");
  return x >= 0 ? Rat(-2 * x + 1) : Rat(-2 * x - 1);
}

TransportPlan<Rat> split_optimizer_plan(std::size_t steps) {
  if (steps < 3) {
    throw std::invalid_argument("split_optimizer_plan: need at least three steps");
  }
  return delta_family_plan(steps, Rat(0));
}

TransportPlan<Rat> delta_family_plan(std::size_t steps, const Rat& delta) {
  if (steps < 3) {
    throw std::invalid_argument("delta_family_plan: need at least three steps");
  }
  const auto n = static_cast<int>(steps);
  const Rat kappa(1, 3 * (n - 1));
  if (delta < -kappa || delta > kappa) {
    throw std::invalid_argument("delta_family_plan: |delta| may not exceed 1/(3(N-1)) = " +
                                format_rational(kappa));
  }
  if (steps % 2 == 0 && delta != 0) {
    throw std::invalid_argument(
        "delta_family_plan: an even step count admits only delta = 0; any shift breaks a "
        "marginal");
  }
  // Grid {-1, 0, 1} with indices 0, 1, 2.
  constexpr std::int32_t kLo = 0;
  constexpr std::int32_t kMid = 1;
  constexpr std::int32_t kHi = 2;
  typename TransportPlan<Rat>::Builder builder(three_point_grid(), TimeGrid::unit_steps(steps),
                                               PlanForm::kFull);
  // Paths from 1 to -1 pausing at 0 at time v, and their mirrors; the pause
  // masses alternate around kappa in +-delta.
  for (int v = 1; v <= n - 1; ++v) {
    DiscretePath up;
    DiscretePath down;
    for (int i = 0; i <= n; ++i) {
      const std::int32_t s = i < v ? kHi : (i == v ? kMid : kLo);
      down.indices.push_back(s);
      up.indices.push_back(s == kHi ? kLo : (s == kLo ? kHi : kMid));
    }
    const Rat shift = (v % 2 == 1) ? delta : Rat(-delta);
    builder.add(std::move(down), kappa + shift);
    builder.add(std::move(up), kappa - shift);
  }
  DiscretePath stay;
  DiscretePath excursion_hi;
  DiscretePath excursion_lo;
  for (int i = 0; i <= n; ++i) {
    stay.indices.push_back(kMid);
    const bool interior = i > 0 && i < n;
    excursion_hi.indices.push_back(interior ? kHi : kMid);
    excursion_lo.indices.push_back(interior ? kLo : kMid);
  }
  builder.add(std::move(stay), Rat(n - 3) * kappa);
  builder.add(std::move(excursion_hi), kappa + delta);
  builder.add(std::move(excursion_lo), kappa - delta);
  return std::move(builder).build();
}

CostBounds cost_bounds(std::size_t steps) {
  if (steps < 3) {
    throw std::invalid_argument("cost_bounds: need at least three steps");
  }
  const auto n = static_cast<int>(steps);
  return CostBounds{Rat(2), Rat(8, 3), (Rat(4) + Rat(4, n - 1)) / 3};
}

Sqrt3Rat ContinuousPlanSpec::branch_velocity(const Rat& x, bool positive) {
  require_unit_interval(x, "branch_velocity");
  const Rat a = x < 0 ? Rat(-x) : x;
  // (3|x| - 2)/sqrt(3) = (3|x| - 2) * sqrt(3)/3.
  const Sqrt3Rat v(Rat(0), (3 * a - 2) / 3);
  return positive ? v : -v;
}

Rat snap_to_subcell_midpoint(const Rat& x, std::size_t cells) {
  if (cells == 0) {
    throw std::invalid_argument("snap_to_subcell_midpoint: cells must be positive");
  }
  require_unit_interval(x, "snap_to_subcell_midpoint");
  const auto n = static_cast<long>(cells);
  long k = rational_floor((x + 1) * n).convert_to<long>();
  k = std::clamp(k, 0L, 2 * n - 1);
  return Rat(-1) + Rat(2 * k + 1, 2 * n);
}

std::vector<Rat> pushforward_histogram(std::size_t cells,
                                       const std::function<Rat(const Rat&)>& map) {
  if (cells == 0) {
    throw std::invalid_argument("pushforward_histogram: cells must be positive");
  }
  const auto n = static_cast<long>(cells);
  std::vector<Rat> histogram(2 * cells, Rat(0));
  const Rat weight(1, 4 * n);
  for (long j = 0; j < 4 * n; ++j) {
    const Rat x = Rat(-1) + Rat(2 * j + 1, 4 * n);
    const Rat y = map(x);
    long k = rational_floor((y + 1) * n).convert_to<long>();
    k = std::clamp(k, 0L, 2 * n - 1);
    histogram[static_cast<std::size_t>(k)] += weight;
  }
  return histogram;
}

BranchingDiscretization discretized_branching_plan(std::size_t cells, BranchComponent component) {
  if (cells < 2 || cells % 2 != 0) {
    throw std::invalid_argument("discretized_branching_plan: cell count must be even and >= 2");
  }
  const auto n = static_cast<long>(cells);
  const TimeGrid timegrid = TimeGrid::unit_steps(3);

  std::vector<BranchTuple> tuples;
  auto add_family = [&](bool t_family, const Rat& mass) {
    for (long j = 0; j < 4 * n; ++j) {
      const Rat x = Rat(-1) + Rat(2 * j + 1, 4 * n);
      const Rat m1 = t_family ? map_T1(x) : map_S1(x);
      const Rat m2 = t_family ? map_T2(x) : map_S2(x);
      const std::array<Sqrt3Rat, 2> head{Sqrt3Rat(x), Sqrt3Rat(m1)};
      tuples.push_back(BranchTuple{x, {x, m1, m2, Rat(-x)}, velocity_from_path(head), mass});
    }
  };
  switch (component) {
    case BranchComponent::kTBranch:
      add_family(true, Rat(1, 4 * n));
      break;
    case BranchComponent::kSBranch:
      add_family(false, Rat(1, 4 * n));
      break;
    case BranchComponent::kMixture:
      add_family(true, Rat(1, 8 * n));
      add_family(false, Rat(1, 8 * n));
      break;
  }

  // The exact plan lives on whatever coordinates the tuples produce.
  std::vector<Rat> coords;
  coords.reserve(tuples.size() * 4);
  for (const auto& tuple : tuples) {
    coords.insert(coords.end(), tuple.exact.begin(), tuple.exact.end());
  }
  std::sort(coords.begin(), coords.end());
  coords.erase(std::unique(coords.begin(), coords.end()), coords.end());
  const SpatialGrid exact_grid(coords);

  typename TransportPlan<Rat>::Builder exact_builder(exact_grid, timegrid, PlanForm::kFull);
  for (const auto& tuple : tuples) {
    DiscretePath path;
    for (const Rat& c : tuple.exact) {
      path.indices.push_back(static_cast<std::int32_t>(exact_grid.index_of(c).value()));
    }
    exact_builder.add(std::move(path), tuple.mass);
  }

  const SpatialGrid snap_grid = uniform_symmetric_grid(2 * cells);
  typename TransportPlan<Rat>::Builder snap_builder(snap_grid, timegrid, PlanForm::kFull);
  for (const auto& tuple : tuples) {
    DiscretePath path;
    for (const Rat& c : tuple.exact) {
      const Rat snapped = snap_to_subcell_midpoint(c, cells);
      path.indices.push_back(static_cast<std::int32_t>(snap_grid.index_of(snapped).value()));
    }
    snap_builder.add(std::move(path), tuple.mass);
  }

  return BranchingDiscretization{cells, component, std::move(exact_builder).build(),
                                 std::move(snap_builder).build(), std::move(tuples)};
}

Rat continuous_optimal_cost() { return Rat(1); }

}  // namespace geuler
