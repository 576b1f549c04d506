#include "geuler/costs.hpp"

#include <cstddef>
#include <stdexcept>
#include <utility>

namespace geuler {

template <class S>
S action_cost(std::span<const S> path, const TimeGrid& timegrid) {
  if (path.size() != timegrid.point_count()) {
    throw std::invalid_argument("action_cost: path has " + std::to_string(path.size()) +
                                " coordinates for " + std::to_string(timegrid.point_count()) +
                                " time points");
  }
  S total(0);
  for (std::size_t i = 1; i < path.size(); ++i) {
    const S d = path[i] - path[i - 1];
    total += d * d / ScalarOps<S>::from_rat(timegrid.step(i));
  }
  return total;
}

template <class S>
S reduced_cost(std::span<const S> path, const TimeGrid& timegrid,
               const std::function<S(const S&)>& endpoint_image) {
  if (path.size() + 1 != timegrid.point_count()) {
    throw std::invalid_argument("reduced_cost: path has " + std::to_string(path.size()) +
                                " coordinates for " + std::to_string(timegrid.point_count()) +
                                " time points");
  }
  if (path.empty()) {
    throw std::invalid_argument("reduced_cost: empty path");
  }
  std::vector<S> extended(path.begin(), path.end());
  extended.push_back(endpoint_image(path[0]));
  return action_cost<S>(extended, timegrid);
}

template <class S>
S reduced_cost(std::span<const S> path, const TimeGrid& timegrid, const SpatialGrid& grid,
               const EndpointMap& endpoint) {
  std::vector<S> coords;
  coords.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    coords.push_back(ScalarOps<S>::from_rat(grid.point(i)));
  }
  auto image = [&](const S& x) -> S {
    for (std::size_t i = 0; i < coords.size(); ++i) {
      if (coords[i] == x) {
        return coords[endpoint.apply(static_cast<std::int32_t>(i))];
      }
    }
    throw std::invalid_argument("reduced_cost: initial coordinate is not a grid point");
  };
  return reduced_cost<S>(path, timegrid, image);
}

template <class S>
S modified_cost(const S& w0, const S& w1, const S& w2) {
  const S r = w0 - w1 + w2;
  return r * r;
}

template <class S>
S barycenter_cost(std::span<const S> points, std::span<const S> weights) {
  if (points.empty()) {
    throw std::invalid_argument("barycenter_cost: empty point tuple");
  }
  std::vector<S> equal;
  if (weights.empty()) {
    equal.assign(points.size(), S(1) / S(static_cast<int>(points.size())));
    weights = equal;
  }
  if (weights.size() != points.size()) {
    throw std::invalid_argument("barycenter_cost: weight count does not match point count");
  }
  S wsum(0);
  S bary(0);
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (weights[i] < S(0)) {
      throw std::invalid_argument("barycenter_cost: negative weight");
    }
    wsum += weights[i];
    bary += weights[i] * points[i];
  }
  if (!ScalarOps<S>::feasible_residual(wsum - S(1))) {
    throw std::invalid_argument("barycenter_cost: weights must sum to 1");
  }
  S total(0);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const S d = points[i] - bary;
    total += weights[i] * d * d;
  }
  return total;
}

template <class S>
std::optional<S> coulomb_cost(std::span<const S> points) {
  S total(0);
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      const S d = ScalarOps<S>::abs(points[i] - points[j]);
      if (d == S(0)) {
        return std::nullopt;
      }
      total += S(1) / d;
    }
  }
  return total;
}

template <class S>
S frenkel_kontorova_cost(std::span<const S> points) {
  S total(0);
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      const S r = ScalarOps<S>::abs(points[i] - points[j]);
      const S r3 = r * r * r;
      total += r3 * r / S(4) - r3 / S(3);
    }
  }
  return total;
}

template <class S>
S cubic_spline_cost(std::span<const S> points) {
  if (points.size() < 3) {
    return S(0);
  }
  S total(0);
  for (std::size_t i = 1; i + 1 < points.size(); ++i) {
    const S b = points[i - 1] - points[i] - points[i] + points[i + 1];
    total += b * b;
  }
  return total;
}

std::string to_string(CostKind kind) {
  switch (kind) {
    case CostKind::kAction:
      return "action";
    case CostKind::kReducedAction:
      return "reduced-action";
    case CostKind::kModifiedAction:
      return "modified-action";
    case CostKind::kBarycenter:
      return "barycenter";
    case CostKind::kCoulomb:
      return "coulomb";
    case CostKind::kFrenkelKontorova:
      return "frenkel-kontorova";
    case CostKind::kCubicSpline:
      return "cubic-spline";
  }
  throw std::logic_error("to_string: unknown cost kind");
}

CostKind cost_kind_from_string(std::string_view name) {
  if (name == "action") return CostKind::kAction;
  if (name == "reduced-action") return CostKind::kReducedAction;
  if (name == "modified-action") return CostKind::kModifiedAction;
  if (name == "barycenter") return CostKind::kBarycenter;
  if (name == "coulomb") return CostKind::kCoulomb;
  if (name == "frenkel-kontorova") return CostKind::kFrenkelKontorova;
  if (name == "cubic-spline") return CostKind::kCubicSpline;
  throw std::invalid_argument(
      "unknown cost kind '" + std::string(name) +
      "'; expected one of action, reduced-action, modified-action, barycenter, coulomb, "
      "frenkel-kontorova, cubic-spline");
}

template <class S>
GridCost<S>::GridCost(CostSpec spec, SpatialGrid grid, TimeGrid timegrid,
                      std::optional<EndpointMap> endpoint)
    : spec_(std::move(spec)),
      grid_(std::move(grid)),
      timegrid_(std::move(timegrid)),
      endpoint_(std::move(endpoint)) {
  if (spec_.kind == CostKind::kReducedAction && !endpoint_.has_value()) {
    throw std::invalid_argument("GridCost: reduced-action requires an endpoint map");
  }
  if (endpoint_.has_value() && endpoint_->size() != grid_.size()) {
    throw std::invalid_argument("GridCost: endpoint map size does not match grid");
  }
  if (!spec_.barycenter_weights.empty()) {
    if (spec_.kind != CostKind::kBarycenter) {
      throw std::invalid_argument("GridCost: weights are only meaningful for barycenter costs");
    }
    Rat wsum(0);
    for (const Rat& w : spec_.barycenter_weights) {
      if (w < 0) {
        throw std::invalid_argument("GridCost: negative barycenter weight");
      }
      wsum += w;
    }
    if (wsum != 1) {
      throw std::invalid_argument("GridCost: barycenter weights must sum to 1");
    }
    if (spec_.barycenter_weights.size() != timegrid_.point_count()) {
      throw std::invalid_argument("GridCost: barycenter weight count does not match tuple length");
    }
    weights_.reserve(spec_.barycenter_weights.size());
    for (const Rat& w : spec_.barycenter_weights) {
      weights_.push_back(ScalarOps<S>::from_rat(w));
    }
  }
  coords_.reserve(grid_.size());
  for (std::size_t i = 0; i < grid_.size(); ++i) {
    coords_.push_back(ScalarOps<S>::from_rat(grid_.point(i)));
  }
  steps_.reserve(timegrid_.interval_count());
  for (std::size_t i = 1; i <= timegrid_.interval_count(); ++i) {
    steps_.push_back(ScalarOps<S>::from_rat(timegrid_.step(i)));
  }
}

template <class S>
std::size_t GridCost<S>::expected_length() const {
  switch (spec_.kind) {
    case CostKind::kReducedAction:
      return timegrid_.point_count() - 1;
    case CostKind::kModifiedAction:
      return 3;
    default:
      return timegrid_.point_count();
  }
}

template <class S>
std::optional<S> GridCost<S>::operator()(const DiscretePath& path) const {
  if (path.length() != expected_length()) {
    throw std::invalid_argument("GridCost: path length " + std::to_string(path.length()) +
                                " does not match expected length " +
                                std::to_string(expected_length()));
  }
  std::vector<S> coords;
  coords.reserve(path.length() + 1);
  for (std::int32_t idx : path.indices) {
    if (idx < 0 || static_cast<std::size_t>(idx) >= coords_.size()) {
      throw std::out_of_range("GridCost: path index out of grid range");
    }
    coords.push_back(coords_[static_cast<std::size_t>(idx)]);
  }
  switch (spec_.kind) {
    case CostKind::kAction:
      return action_cost<S>(coords, timegrid_);
    case CostKind::kReducedAction: {
      coords.push_back(coords_[static_cast<std::size_t>(endpoint_->apply(path.indices[0]))]);
      return action_cost<S>(coords, timegrid_);
    }
    case CostKind::kModifiedAction:
      return modified_cost<S>(coords[0], coords[1], coords[2]);
    case CostKind::kBarycenter:
      return barycenter_cost<S>(coords, weights_);
    case CostKind::kCoulomb:
      return coulomb_cost<S>(coords);
    case CostKind::kFrenkelKontorova:
      return frenkel_kontorova_cost<S>(coords);
    case CostKind::kCubicSpline:
      return cubic_spline_cost<S>(coords);
  }
  throw std::logic_error("GridCost: unknown cost kind");
}

template class GridCost<Rat>;
template class GridCost<double>;

template Rat action_cost<Rat>(std::span<const Rat>, const TimeGrid&);
template double action_cost<double>(std::span<const double>, const TimeGrid&);
template Rat reduced_cost<Rat>(std::span<const Rat>, const TimeGrid&,
                               const std::function<Rat(const Rat&)>&);
template double reduced_cost<double>(std::span<const double>, const TimeGrid&,
                                     const std::function<double(const double&)>&);
template Rat reduced_cost<Rat>(std::span<const Rat>, const TimeGrid&, const SpatialGrid&,
                               const EndpointMap&);
template double reduced_cost<double>(std::span<const double>, const TimeGrid&, const SpatialGrid&,
                                     const EndpointMap&);
template Rat modified_cost<Rat>(const Rat&, const Rat&, const Rat&);
template double modified_cost<double>(const double&, const double&, const double&);
template Rat barycenter_cost<Rat>(std::span<const Rat>, std::span<const Rat>);
template double barycenter_cost<double>(std::span<const double>, std::span<const double>);
template std::optional<Rat> coulomb_cost<Rat>(std::span<const Rat>);
template std::optional<double> coulomb_cost<double>(std::span<const double>);
template Rat frenkel_kontorova_cost<Rat>(std::span<const Rat>);
template double frenkel_kontorova_cost<double>(std::span<const double>);
template Rat cubic_spline_cost<Rat>(std::span<const Rat>);
template double cubic_spline_cost<double>(std::span<const double>);

}  // namespace geuler
