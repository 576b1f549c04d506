#include "geuler/grid.hpp"

#include <algorithm>
#include <numeric>

namespace geuler {

SpatialGrid::SpatialGrid(std::vector<Rat> points) : points_(std::move(points)) {
  if (points_.size() < 2) throw std::invalid_argument("spatial grid needs at least 2 points");
  for (std::size_t i = 1; i < points_.size(); ++i)
    if (!(points_[i - 1] < points_[i]))
      throw std::invalid_argument("spatial grid points must be strictly increasing");
}

std::optional<std::size_t> SpatialGrid::index_of(const Rat& x) const {
  auto it = std::lower_bound(points_.begin(), points_.end(), x);
  if (it == points_.end() || *it != x) return std::nullopt;
  return static_cast<std::size_t>(it - points_.begin());
}

bool SpatialGrid::symmetric() const {
  for (const Rat& p : points_)
    if (!index_of(-p)) return false;
  return true;
}

TimeGrid::TimeGrid(std::vector<Rat> times) : times_(std::move(times)) {
  if (times_.size() < 2) throw std::invalid_argument("time grid needs at least 1 interval");
  for (std::size_t i = 1; i < times_.size(); ++i)
    if (!(times_[i - 1] < times_[i]))
      throw std::invalid_argument("time grid points must be strictly increasing");
}

TimeGrid TimeGrid::unit_steps(std::size_t n) {
  if (n < 1) throw std::invalid_argument("time grid needs at least 1 interval");
  std::vector<Rat> times(n + 1);
  for (std::size_t i = 0; i <= n; ++i) times[i] = Rat(static_cast<long>(i));
  return TimeGrid(std::move(times));
}

Rat TimeGrid::step(std::size_t i) const {
  if (i == 0 || i >= times_.size()) throw std::invalid_argument("step index out of range");
  return times_[i] - times_[i - 1];
}

EndpointMap::EndpointMap(std::vector<std::int32_t> permutation)
    : permutation_(std::move(permutation)) {
  std::vector<bool> seen(permutation_.size(), false);
  for (std::int32_t image : permutation_) {
    if (image < 0 || static_cast<std::size_t>(image) >= permutation_.size() || seen[image])
      throw std::invalid_argument("endpoint map must be a bijection on grid indices");
    seen[image] = true;
  }
}

EndpointMap EndpointMap::identity(std::size_t n) {
  std::vector<std::int32_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  return EndpointMap(std::move(perm));
}

EndpointMap EndpointMap::composed_with(const EndpointMap& other) const {
  if (size() != other.size()) throw std::invalid_argument("endpoint map size mismatch");
  std::vector<std::int32_t> perm(size());
  for (std::size_t i = 0; i < size(); ++i)
    perm[i] = apply(other.apply(static_cast<std::int32_t>(i)));
  return EndpointMap(std::move(perm));
}

SpatialGrid uniform_symmetric_grid(std::size_t n) {
  if (n < 2 || n % 2 != 0)
    throw std::invalid_argument("uniform symmetric grid needs an even cell count n >= 2");
  std::vector<Rat> points(n);
  for (std::size_t k = 0; k < n; ++k)
    points[k] = Rat(-1) + Rat(2 * static_cast<long>(k) + 1, static_cast<long>(n));
  return SpatialGrid(std::move(points));
}

SpatialGrid three_point_grid() { return SpatialGrid({Rat(-1), Rat(0), Rat(1)}); }

EndpointMap flip_map(const SpatialGrid& grid) {
  std::vector<std::int32_t> perm(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    auto j = grid.index_of(-grid.point(i));
    if (!j)
      throw EndpointMapUndefined("flip map undefined: grid is not closed under negation at " +
                                 format_rational(grid.point(i)));
    perm[i] = static_cast<std::int32_t>(*j);
  }
  return EndpointMap(std::move(perm));
}

std::uint64_t count_paths(const SpatialGrid& grid, const TimeGrid& timegrid, bool with_endpoint,
                          std::uint64_t cap) {
  const std::uint64_t base = grid.size();
  std::size_t free_coords = timegrid.point_count() - (with_endpoint ? 1 : 0);
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < free_coords; ++i) {
    if (count > cap / base)
      throw ResourceLimitError("path enumeration needs " + std::to_string(grid.size()) + "^" +
                               std::to_string(free_coords) + " paths, above the cap of " +
                               std::to_string(cap));
    count *= base;
  }
  if (count > cap)
    throw ResourceLimitError("path enumeration needs " + std::to_string(count) +
                             " paths, above the cap of " + std::to_string(cap));
  return count;
}

std::vector<DiscretePath> enumerate_paths(const SpatialGrid& grid, const TimeGrid& timegrid,
                                          const EndpointMap* endpoint, std::uint64_t cap) {
  if (endpoint && endpoint->size() != grid.size())
    throw std::invalid_argument("endpoint map size does not match grid");
  const std::uint64_t total = count_paths(grid, timegrid, endpoint != nullptr, cap);
  const std::size_t n_points = timegrid.point_count();
  const std::size_t free_coords = n_points - (endpoint ? 1 : 0);
  const auto base = static_cast<std::int32_t>(grid.size());

  std::vector<DiscretePath> paths;
  paths.reserve(total);
  std::vector<std::int32_t> current(n_points, 0);
  // Odometer over the free coordinates; the forced last coordinate never
  // affects lexicographic order because it is a function of the first.
  for (std::uint64_t it = 0; it < total; ++it) {
    std::uint64_t rem = it;
    for (std::size_t pos = free_coords; pos-- > 0;) {
      current[pos] = static_cast<std::int32_t>(rem % base);
      rem /= base;
    }
    if (endpoint) current[n_points - 1] = endpoint->apply(current[0]);
    paths.push_back(DiscretePath{current});
  }
  return paths;
}

}  // namespace geuler
