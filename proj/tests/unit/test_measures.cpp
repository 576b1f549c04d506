#include "geuler/measures.hpp"

#include <doctest.h>

#include "geuler/costs.hpp"
#include "geuler/errors.hpp"

using geuler::DiscretePath;
using geuler::PlanForm;
using geuler::Rat;
using geuler::SpatialGrid;
using geuler::TimeGrid;
using geuler::TransportPlan;

namespace {

/// Two crossing atoms that meet at the middle point at time 1.
TransportPlan<Rat> crossing_plan() {
  const SpatialGrid grid = geuler::three_point_grid();
  const TimeGrid tg = TimeGrid::unit_steps(2);
  TransportPlan<Rat>::Builder builder(grid, tg, PlanForm::kFull);
  builder.add(DiscretePath{{0, 1, 2}}, Rat(1, 2));
  builder.add(DiscretePath{{2, 1, 0}}, Rat(1, 2));
  return std::move(builder).build();
}

}  // namespace

TEST_CASE("measures: builder sorts, merges, and validates") {
  const SpatialGrid grid = geuler::three_point_grid();
  const TimeGrid tg = TimeGrid::unit_steps(2);

  TransportPlan<Rat>::Builder builder(grid, tg, PlanForm::kFull);
  builder.add(DiscretePath{{2, 1, 0}}, Rat(1, 4));
  builder.add(DiscretePath{{0, 1, 2}}, Rat(1, 2));
  builder.add(DiscretePath{{2, 1, 0}}, Rat(1, 4));
  const auto plan = std::move(builder).build();

  REQUIRE(plan.atoms().size() == 2);
  CHECK(plan.atoms()[0].path.indices == std::vector<std::int32_t>{0, 1, 2});
  CHECK(plan.atoms()[0].mass == Rat(1, 2));
  CHECK(plan.atoms()[1].path.indices == std::vector<std::int32_t>{2, 1, 0});
  CHECK(plan.atoms()[1].mass == Rat(1, 2));
  CHECK(plan.total_mass() == Rat(1));
  CHECK(plan.path_length() == 3);

  SUBCASE("mass must total one") {
    TransportPlan<Rat>::Builder partial(grid, tg, PlanForm::kFull);
    partial.add(DiscretePath{{0, 0, 0}}, Rat(1, 2));
    CHECK_THROWS_AS(std::move(partial).build(), geuler::InconsistentPlanError);
  }
  SUBCASE("negative masses are rejected") {
    TransportPlan<Rat>::Builder negative(grid, tg, PlanForm::kFull);
    CHECK_THROWS_AS(negative.add(DiscretePath{{0, 0, 0}}, Rat(-1, 2)),
                    geuler::InconsistentPlanError);
  }
  SUBCASE("path length must match the form") {
    TransportPlan<Rat>::Builder wrong(grid, tg, PlanForm::kFull);
    CHECK_THROWS_AS(wrong.add(DiscretePath{{0, 0}}, Rat(1)), geuler::InconsistentPlanError);
    TransportPlan<Rat>::Builder reduced(grid, tg, PlanForm::kReduced);
    reduced.add(DiscretePath{{0, 0}}, Rat(1));
    CHECK(std::move(reduced).build().path_length() == 2);
  }
  SUBCASE("indices must lie on the grid") {
    TransportPlan<Rat>::Builder stray(grid, tg, PlanForm::kFull);
    CHECK_THROWS_AS(stray.add(DiscretePath{{0, 3, 0}}, Rat(1)),
                    geuler::InconsistentPlanError);
  }
  SUBCASE("zero-mass atoms are pruned") {
    TransportPlan<Rat>::Builder pruned(grid, tg, PlanForm::kFull);
    pruned.add(DiscretePath{{0, 1, 2}}, Rat(1));
    pruned.add(DiscretePath{{1, 1, 1}}, Rat(0));
    CHECK(std::move(pruned).build().atoms().size() == 1);
  }
}

TEST_CASE("measures: marginals sum the mass per grid point") {
  const auto plan = crossing_plan();
  const auto at0 = geuler::marginal(plan, 0);
  CHECK(at0 == std::vector<Rat>{Rat(1, 2), Rat(0), Rat(1, 2)});
  const auto at1 = geuler::marginal(plan, 1);
  CHECK(at1 == std::vector<Rat>{Rat(0), Rat(1), Rat(0)});
  CHECK_THROWS_AS(geuler::marginal(plan, 3), std::out_of_range);
}

TEST_CASE("measures: splitting detection and Monge maps") {
  const auto plan = crossing_plan();
  CHECK_FALSE(geuler::is_mass_splitting(plan, 0));
  CHECK(geuler::is_mass_splitting(plan, 1));

  const auto monge0 = geuler::is_monge(plan, 0);
  CHECK(monge0.monge);
  REQUIRE(monge0.maps.size() == plan.path_length());
  CHECK(monge0.maps[2] == std::vector<std::int32_t>{2, -1, 0});

  const auto monge1 = geuler::is_monge(plan, 1);
  CHECK_FALSE(monge1.monge);
}

TEST_CASE("measures: reduce and extend are inverse") {
  const SpatialGrid grid = geuler::three_point_grid();
  const auto flip = geuler::flip_map(grid);
  const auto plan = crossing_plan();

  const auto reduced = geuler::reduce_plan(plan, flip);
  CHECK(reduced.form() == PlanForm::kReduced);
  CHECK(reduced.path_length() == 2);
  const auto roundtrip = geuler::extend_plan(reduced, flip);
  CHECK(roundtrip == plan);

  SUBCASE("reduce refuses plans that violate the endpoint condition") {
    const TimeGrid tg = TimeGrid::unit_steps(2);
    TransportPlan<Rat>::Builder bad(grid, tg, PlanForm::kFull);
    bad.add(DiscretePath{{0, 1, 0}}, Rat(1));
    const auto built = std::move(bad).build();
    CHECK_THROWS_AS(geuler::reduce_plan(built, flip), geuler::InconsistentPlanError);
  }
}

TEST_CASE("measures: plan cost accumulates mass-weighted path costs") {
  const auto plan = crossing_plan();
  const geuler::GridCost<Rat> action(geuler::CostSpec{geuler::CostKind::kAction, {}},
                                     plan.grid(), plan.timegrid());
  CHECK(geuler::plan_cost(plan, action) == Rat(2));

  const auto coulomb = geuler::GridCost<Rat>(
      geuler::CostSpec{geuler::CostKind::kCoulomb, {}}, plan.grid(), plan.timegrid());
  CHECK(geuler::plan_cost(plan, coulomb) == Rat(5, 2));

  TransportPlan<Rat>::Builder stuck(plan.grid(), plan.timegrid(), PlanForm::kFull);
  stuck.add(DiscretePath{{1, 1, 1}}, Rat(1));
  const auto stuck_plan = std::move(stuck).build();
  CHECK_THROWS_AS(geuler::plan_cost(stuck_plan, coulomb), std::domain_error);

  CHECK(geuler::plan_cost(plan, [](const DiscretePath&) { return Rat(3); }) == Rat(3));
}
