#pragma once

#include "geuler/errors.hpp"
#include "geuler/rational.hpp"

#include <compare>
#include <cstdint>
#include <optional>
#include <vector>

namespace geuler {

/// Ordered one-dimensional set of exact spatial positions.
class SpatialGrid {
 public:
  explicit SpatialGrid(std::vector<Rat> points);

  std::size_t size() const { return points_.size(); }
  const Rat& point(std::size_t i) const { return points_.at(i); }
  const std::vector<Rat>& points() const { return points_; }

  /// Index of an exactly matching point, if present.
  std::optional<std::size_t> index_of(const Rat& x) const;

  /// True iff the point set is closed under x -> -x.
  bool symmetric() const;

  friend bool operator==(const SpatialGrid&, const SpatialGrid&) = default;

 private:
  std::vector<Rat> points_;
};

/// Strictly increasing discrete time points t_0 < ... < t_N.
class TimeGrid {
 public:
  explicit TimeGrid(std::vector<Rat> times);

  /// {0, 1, ..., n} with unit stepsizes.
  static TimeGrid unit_steps(std::size_t n);

  std::size_t point_count() const { return times_.size(); }
  std::size_t interval_count() const { return times_.size() - 1; }
  const Rat& time(std::size_t i) const { return times_.at(i); }
  const std::vector<Rat>& times() const { return times_; }
  /// t_i - t_{i-1} for i in 1..N.
  Rat step(std::size_t i) const;

  friend bool operator==(const TimeGrid&, const TimeGrid&) = default;

 private:
  std::vector<Rat> times_;
};

/// Time-indexed sequence of grid-point indices, one position per time point.
struct DiscretePath {
  std::vector<std::int32_t> indices;

  std::size_t length() const { return indices.size(); }
  auto operator<=>(const DiscretePath&) const = default;
};

/// A bijection on grid indices; represents a volume-preserving endpoint map
/// acting on the uniform atoms of a grid.
class EndpointMap {
 public:
  explicit EndpointMap(std::vector<std::int32_t> permutation);

  static EndpointMap identity(std::size_t n);

  std::size_t size() const { return permutation_.size(); }
  std::int32_t apply(std::int32_t i) const { return permutation_.at(static_cast<std::size_t>(i)); }
  const std::vector<std::int32_t>& permutation() const { return permutation_; }

  EndpointMap composed_with(const EndpointMap& other) const;

  friend bool operator==(const EndpointMap&, const EndpointMap&) = default;

 private:
  std::vector<std::int32_t> permutation_;
};

/// The n cell midpoints of a uniform partition of [-1, 1]; n must be even so
/// the grid is symmetric and avoids 0.
SpatialGrid uniform_symmetric_grid(std::size_t n);

/// The minimal grid {-1, 0, 1}.
SpatialGrid three_point_grid();

/// Endpoint map x -> -x as an index permutation. Requires a symmetric grid.
EndpointMap flip_map(const SpatialGrid& grid);

inline constexpr std::uint64_t kDefaultPathCap = 10'000'000;

/// All paths over the grid's indices, lexicographically ordered. With an
/// endpoint map only paths with omega_N = g(omega_0) are produced (|grid|^N
/// of them); without, all |grid|^(N+1).
std::vector<DiscretePath> enumerate_paths(const SpatialGrid& grid, const TimeGrid& timegrid,
                                          const EndpointMap* endpoint = nullptr,
                                          std::uint64_t cap = kDefaultPathCap);

/// Number of paths enumerate_paths would produce, without materializing them.
/// Throws ResourceLimitError beyond the cap.
std::uint64_t count_paths(const SpatialGrid& grid, const TimeGrid& timegrid, bool with_endpoint,
                          std::uint64_t cap = kDefaultPathCap);

}  // namespace geuler
