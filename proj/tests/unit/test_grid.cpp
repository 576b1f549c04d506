#include "geuler/grid.hpp"

#include <doctest.h>

#include "geuler/errors.hpp"

using geuler::DiscretePath;
using geuler::EndpointMap;
using geuler::Rat;
using geuler::SpatialGrid;
using geuler::TimeGrid;

TEST_CASE("grid: uniform symmetric midpoint construction") {
  const SpatialGrid grid = geuler::uniform_symmetric_grid(4);
  REQUIRE(grid.size() == 4);
  CHECK(grid.point(0) == Rat(-3, 4));
  CHECK(grid.point(1) == Rat(-1, 4));
  CHECK(grid.point(2) == Rat(1, 4));
  CHECK(grid.point(3) == Rat(3, 4));
  CHECK(grid.symmetric());
  CHECK(grid.index_of(Rat(1, 4)) == 2);
  CHECK_FALSE(grid.index_of(Rat(0)).has_value());
  CHECK_THROWS_AS(geuler::uniform_symmetric_grid(3), std::invalid_argument);
  CHECK_THROWS_AS(geuler::uniform_symmetric_grid(0), std::invalid_argument);
}

TEST_CASE("grid: three point grid and validation") {
  const SpatialGrid grid = geuler::three_point_grid();
  REQUIRE(grid.size() == 3);
  CHECK(grid.point(0) == Rat(-1));
  CHECK(grid.point(1) == Rat(0));
  CHECK(grid.point(2) == Rat(1));
  CHECK(grid.symmetric());
  CHECK_THROWS_AS(SpatialGrid({Rat(1), Rat(0)}), std::invalid_argument);
  CHECK_THROWS_AS(SpatialGrid({Rat(0), Rat(0)}), std::invalid_argument);
  CHECK_THROWS_AS(SpatialGrid({Rat(0)}), std::invalid_argument);
}

TEST_CASE("grid: time grids and step sizes") {
  const TimeGrid tg = TimeGrid::unit_steps(3);
  CHECK(tg.point_count() == 4);
  CHECK(tg.interval_count() == 3);
  CHECK(tg.time(0) == Rat(0));
  CHECK(tg.time(3) == Rat(3));
  CHECK(tg.step(1) == Rat(1));
  CHECK(tg.step(3) == Rat(1));
  CHECK_THROWS_AS(tg.step(0), std::invalid_argument);
  CHECK_THROWS_AS(tg.step(4), std::invalid_argument);

  const TimeGrid uneven({Rat(0), Rat(1, 2), Rat(2)});
  CHECK(uneven.step(1) == Rat(1, 2));
  CHECK(uneven.step(2) == Rat(3, 2));
  CHECK_THROWS_AS(TimeGrid({Rat(0)}), std::invalid_argument);
  CHECK_THROWS_AS(TimeGrid({Rat(0), Rat(0)}), std::invalid_argument);
}

TEST_CASE("grid: flip map on symmetric grids") {
  const SpatialGrid grid = geuler::three_point_grid();
  const EndpointMap flip = geuler::flip_map(grid);
  CHECK(flip.apply(0) == 2);
  CHECK(flip.apply(1) == 1);
  CHECK(flip.apply(2) == 0);
  CHECK(flip.composed_with(flip) == EndpointMap::identity(3));

  const SpatialGrid lopsided({Rat(-1), Rat(0), Rat(1, 2)});
  CHECK_THROWS_AS(geuler::flip_map(lopsided), geuler::EndpointMapUndefined);
  CHECK_THROWS_AS(EndpointMap({0, 0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(EndpointMap({0, 3, 1}), std::invalid_argument);
}

TEST_CASE("grid: path enumeration order and endpoint filter") {
  const SpatialGrid grid = geuler::three_point_grid();
  const TimeGrid tg = TimeGrid::unit_steps(2);

  const auto all = geuler::enumerate_paths(grid, tg);
  REQUIRE(all.size() == 27);
  CHECK(all.front().indices == std::vector<std::int32_t>{0, 0, 0});
  CHECK(all.back().indices == std::vector<std::int32_t>{2, 2, 2});
  CHECK(all[1].indices == std::vector<std::int32_t>{0, 0, 1});

  const EndpointMap flip = geuler::flip_map(grid);
  const auto constrained = geuler::enumerate_paths(grid, tg, &flip);
  REQUIRE(constrained.size() == 9);
  for (const DiscretePath& path : constrained) {
    CHECK(path.indices.back() == flip.apply(path.indices.front()));
  }
  CHECK(constrained.front().indices == std::vector<std::int32_t>{0, 0, 2});
}

TEST_CASE("grid: enumeration respects the path cap") {
  const SpatialGrid grid = geuler::three_point_grid();
  const TimeGrid tg = TimeGrid::unit_steps(10);
  CHECK(geuler::count_paths(grid, tg, false) == 177147);
  CHECK_THROWS_AS(geuler::enumerate_paths(grid, tg, nullptr, 1000), geuler::ResourceLimitError);
  CHECK_THROWS_AS(geuler::count_paths(grid, tg, false, 1000), geuler::ResourceLimitError);
}

TEST_CASE("grid: discrete path ordering") {
  const DiscretePath a{{0, 1, 2}};
  const DiscretePath b{{0, 2, 0}};
  CHECK(a < b);
  CHECK(a == DiscretePath{{0, 1, 2}});
  CHECK(a.length() == 3);
}
