#pragma once

#include "geuler/costs.hpp"
#include "geuler/errors.hpp"
#include "geuler/grid.hpp"
#include "geuler/scalar.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace geuler {

/// Full plans carry one coordinate per time point. Reduced plans omit the
/// final coordinate, which is determined by an endpoint map applied to the
/// first one.
enum class PlanForm { kFull, kReduced };

template <class S>
struct PlanAtom {
  DiscretePath path;
  S mass;

  bool operator==(const PlanAtom&) const = default;
};

/// Finitely supported probability measure on discrete path space. Atoms are
/// kept lexicographically sorted by path, duplicates merged, zero-mass atoms
/// pruned, and the total mass is validated to be 1 (exactly in rational mode,
/// within 1e-12 in float mode).
template <class S>
class TransportPlan {
 public:
  class Builder {
   public:
    Builder(SpatialGrid grid, TimeGrid timegrid, PlanForm form = PlanForm::kFull)
        : grid_(std::move(grid)), timegrid_(std::move(timegrid)), form_(form) {}

    Builder& add(DiscretePath path, S mass) {
      const std::size_t want = form_ == PlanForm::kFull ? timegrid_.point_count()
                                                        : timegrid_.point_count() - 1;
      if (path.length() != want) {
        throw InconsistentPlanError("plan atom has " + std::to_string(path.length()) +
                                    " coordinates, expected " + std::to_string(want));
      }
      for (std::int32_t idx : path.indices) {
        if (idx < 0 || static_cast<std::size_t>(idx) >= grid_.size()) {
          throw InconsistentPlanError("plan atom references grid index " + std::to_string(idx) +
                                      " outside the grid");
        }
      }
      if (mass < S(0) && !ScalarOps<S>::negligible_mass(mass)) {
        throw InconsistentPlanError("plan atom has negative mass");
      }
      atoms_.push_back(PlanAtom<S>{std::move(path), std::move(mass)});
      return *this;
    }

    TransportPlan build() && {
      std::sort(atoms_.begin(), atoms_.end(),
                [](const PlanAtom<S>& a, const PlanAtom<S>& b) { return a.path < b.path; });
      std::vector<PlanAtom<S>> merged;
      for (auto& atom : atoms_) {
        if (!merged.empty() && merged.back().path == atom.path) {
          merged.back().mass += atom.mass;
        } else {
          merged.push_back(std::move(atom));
        }
      }
      std::erase_if(merged,
                    [](const PlanAtom<S>& a) { return ScalarOps<S>::negligible_mass(a.mass); });
      S total(0);
      for (const auto& atom : merged) {
        total += atom.mass;
      }
      if (!ScalarOps<S>::mass_sums_to_one(total)) {
        throw InconsistentPlanError("plan mass sums to " + ScalarOps<S>::str(total) +
                                    ", expected 1");
      }
      return TransportPlan(std::move(grid_), std::move(timegrid_), form_, std::move(merged));
    }

   private:
    SpatialGrid grid_;
    TimeGrid timegrid_;
    PlanForm form_;
    std::vector<PlanAtom<S>> atoms_;
  };

  const SpatialGrid& grid() const { return grid_; }
  const TimeGrid& timegrid() const { return timegrid_; }
  PlanForm form() const { return form_; }
  const std::vector<PlanAtom<S>>& atoms() const { return atoms_; }

  /// Number of coordinates in every atom path.
  std::size_t path_length() const {
    return form_ == PlanForm::kFull ? timegrid_.point_count() : timegrid_.point_count() - 1;
  }

  S total_mass() const {
    S total(0);
    for (const auto& atom : atoms_) {
      total += atom.mass;
    }
    return total;
  }

  bool operator==(const TransportPlan&) const = default;

 private:
  TransportPlan(SpatialGrid grid, TimeGrid timegrid, PlanForm form,
                std::vector<PlanAtom<S>> atoms)
      : grid_(std::move(grid)),
        timegrid_(std::move(timegrid)),
        form_(form),
        atoms_(std::move(atoms)) {}

  SpatialGrid grid_;
  TimeGrid timegrid_;
  PlanForm form_;
  std::vector<PlanAtom<S>> atoms_;
};

/// Mass of the time-i marginal at each grid point.
template <class S>
std::vector<S> marginal(const TransportPlan<S>& plan, std::size_t time_index) {
  if (time_index >= plan.path_length()) {
    throw std::out_of_range("marginal: time index " + std::to_string(time_index) +
                            " out of range for path length " +
                            std::to_string(plan.path_length()));
  }
  std::vector<S> masses(plan.grid().size(), S(0));
  for (const auto& atom : plan.atoms()) {
    masses[static_cast<std::size_t>(atom.path.indices[time_index])] += atom.mass;
  }
  return masses;
}

/// True when two distinct support paths pass through the same point at
/// `time_index`, i.e. mass leaving that point splits.
template <class S>
bool is_mass_splitting(const TransportPlan<S>& plan, std::size_t time_index) {
  if (time_index >= plan.path_length()) {
    throw std::out_of_range("is_mass_splitting: time index out of range");
  }
  std::vector<bool> seen(plan.grid().size(), false);
  for (const auto& atom : plan.atoms()) {
    const auto idx = static_cast<std::size_t>(atom.path.indices[time_index]);
    if (seen[idx]) {
      return true;
    }
    seen[idx] = true;
  }
  return false;
}

/// Result of a Monge test anchored at one time slice. When the plan is
/// Monge from that slice, maps[k][x] gives the grid index the mass at x is
/// transported to at time k (-1 where the slice carries no mass).
struct MongeMaps {
  bool monge = false;
  std::size_t anchor = 0;
  std::vector<std::vector<std::int32_t>> maps;
};

template <class S>
MongeMaps is_monge(const TransportPlan<S>& plan, std::size_t time_index) {
  MongeMaps result;
  result.anchor = time_index;
  result.monge = !is_mass_splitting(plan, time_index);
  if (!result.monge) {
    return result;
  }
  result.maps.assign(plan.path_length(),
                     std::vector<std::int32_t>(plan.grid().size(), -1));
  for (const auto& atom : plan.atoms()) {
    const auto anchor_idx = static_cast<std::size_t>(atom.path.indices[time_index]);
    for (std::size_t k = 0; k < plan.path_length(); ++k) {
      result.maps[k][anchor_idx] = atom.path.indices[k];
    }
  }
  return result;
}

/// Drops the final coordinate of every atom. Fails unless the plan is
/// supported on paths whose final coordinate is the endpoint image of the
/// first.
template <class S>
TransportPlan<S> reduce_plan(const TransportPlan<S>& plan, const EndpointMap& endpoint) {
  if (plan.form() != PlanForm::kFull) {
    throw std::invalid_argument("reduce_plan: plan is already reduced");
  }
  if (endpoint.size() != plan.grid().size()) {
    throw std::invalid_argument("reduce_plan: endpoint map size does not match grid");
  }
  typename TransportPlan<S>::Builder builder(plan.grid(), plan.timegrid(), PlanForm::kReduced);
  for (const auto& atom : plan.atoms()) {
    if (atom.path.indices.back() != endpoint.apply(atom.path.indices.front())) {
      throw InconsistentPlanError(
          "reduce_plan: an atom's final coordinate is not the endpoint image of its first");
    }
    DiscretePath prefix{{atom.path.indices.begin(), atom.path.indices.end() - 1}};
    builder.add(std::move(prefix), atom.mass);
  }
  return std::move(builder).build();
}

/// Restores the final coordinate as the endpoint image of the first.
/// Inverse of reduce_plan.
template <class S>
TransportPlan<S> extend_plan(const TransportPlan<S>& plan, const EndpointMap& endpoint) {
  if (plan.form() != PlanForm::kReduced) {
    throw std::invalid_argument("extend_plan: plan is already full");
  }
  if (endpoint.size() != plan.grid().size()) {
    throw std::invalid_argument("extend_plan: endpoint map size does not match grid");
  }
  typename TransportPlan<S>::Builder builder(plan.grid(), plan.timegrid(), PlanForm::kFull);
  for (const auto& atom : plan.atoms()) {
    DiscretePath full = atom.path;
    full.indices.push_back(endpoint.apply(atom.path.indices.front()));
    builder.add(std::move(full), atom.mass);
  }
  return std::move(builder).build();
}

namespace detail {
template <class T>
struct is_optional : std::false_type {};
template <class U>
struct is_optional<std::optional<U>> : std::true_type {};
}  // namespace detail

/// Integral of a path cost against the plan. Throws std::domain_error when
/// the plan charges a path whose cost is infinite (nullopt).
template <class S, class Fn>
S plan_cost(const TransportPlan<S>& plan, Fn&& cost) {
  S total(0);
  for (const auto& atom : plan.atoms()) {
    auto value = std::invoke(cost, atom.path);
    if constexpr (detail::is_optional<std::decay_t<decltype(value)>>::value) {
      if (!value.has_value()) {
        throw std::domain_error("plan_cost: plan charges a path of infinite cost");
      }
      total += atom.mass * *value;
    } else {
      total += atom.mass * value;
    }
  }
  return total;
}

}  // namespace geuler
