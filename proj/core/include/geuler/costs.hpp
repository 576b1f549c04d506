#pragma once

#include "geuler/grid.hpp"
#include "geuler/rational.hpp"
#include "geuler/scalar.hpp"

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace geuler {

/// Kinetic action of a spatial path sampled on `timegrid`:
///   sum_i |w_i - w_{i-1}|^2 / (t_i - t_{i-1}).
/// `path` must have one coordinate per time point.
template <class S>
S action_cost(std::span<const S> path, const TimeGrid& timegrid);

/// Reduced cost of a path with the final coordinate eliminated. `path` has
/// one coordinate per time point except the last; `endpoint_image` maps the
/// first coordinate to the eliminated final one. Equal to the action of the
/// path extended by endpoint_image(path[0]).
template <class S>
S reduced_cost(std::span<const S> path, const TimeGrid& timegrid,
               const std::function<S(const S&)>& endpoint_image);

/// Overload resolving the endpoint image through a grid permutation. Every
/// path coordinate must be a grid point (converted to S for float mode).
template <class S>
S reduced_cost(std::span<const S> path, const TimeGrid& timegrid,
               const SpatialGrid& grid, const EndpointMap& endpoint);

/// (w0 - w1 + w2)^2, the rank-one quadratic that measures deviation from the
/// three-time stationarity relation w2 = w1 - w0.
template <class S>
S modified_cost(const S& w0, const S& w1, const S& w2);

/// Weighted barycenter dispersion sum_i lambda_i |x_i - B|^2 with
/// B = sum_i lambda_i x_i. Weights must be nonnegative and sum to 1; pass an
/// empty span for equal weights.
template <class S>
S barycenter_cost(std::span<const S> points, std::span<const S> weights = {});

/// Pairwise Coulomb repulsion sum_{i<j} 1/|x_i - x_j|. Returns nullopt when
/// two coordinates coincide, standing in for an infinite cost.
template <class S>
std::optional<S> coulomb_cost(std::span<const S> points);

/// Pairwise interaction sum_{i<j} v(|x_i - x_j|) with v(r) = r^4/4 - r^3/3,
/// a potential whose minimum sits at unit spacing.
template <class S>
S frenkel_kontorova_cost(std::span<const S> points);

/// Discrete bending energy sum_i |x_{i-1} - 2 x_i + x_{i+1}|^2 over interior
/// indices.
template <class S>
S cubic_spline_cost(std::span<const S> points);

/// Cost families selectable from the command line and the LP assembler.
enum class CostKind {
  kAction,           // kinetic action over the full path
  kReducedAction,    // kinetic action with the last coordinate eliminated
  kModifiedAction,   // (w0 - w1 + w2)^2 on three-coordinate paths
  kBarycenter,
  kCoulomb,
  kFrenkelKontorova,
  kCubicSpline,
};

std::string to_string(CostKind kind);
CostKind cost_kind_from_string(std::string_view name);

/// Serializable description of a cost function. Barycenter weights are the
/// only per-kind parameter; leave empty for equal weights.
struct CostSpec {
  CostKind kind = CostKind::kAction;
  std::vector<Rat> barycenter_weights;

  bool operator==(const CostSpec&) const = default;
};

/// Evaluates a CostSpec on index paths over a fixed grid and time grid.
/// Coordinates are converted to S once at construction. A nullopt result
/// marks an infinite cost; such paths are excluded from transport problems.
template <class S>
class GridCost {
 public:
  GridCost(CostSpec spec, SpatialGrid grid, TimeGrid timegrid,
           std::optional<EndpointMap> endpoint = std::nullopt);

  std::optional<S> operator()(const DiscretePath& path) const;

  /// Path length the cost expects: one per time point, except kReducedAction
  /// (one fewer) and kModifiedAction (exactly three).
  std::size_t expected_length() const;

  const CostSpec& spec() const { return spec_; }
  const SpatialGrid& grid() const { return grid_; }
  const TimeGrid& timegrid() const { return timegrid_; }

 private:
  CostSpec spec_;
  SpatialGrid grid_;
  TimeGrid timegrid_;
  std::optional<EndpointMap> endpoint_;
  std::vector<S> coords_;
  std::vector<S> steps_;
  std::vector<S> weights_;
};

extern template class GridCost<Rat>;
extern template class GridCost<double>;

}  // namespace geuler
