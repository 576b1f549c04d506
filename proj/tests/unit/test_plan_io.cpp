#include "geuler/plan_io.hpp"

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <string>

#include "geuler/euler.hpp"
#include "geuler/measures.hpp"

using geuler::DiscretePath;
using geuler::PlanForm;
using geuler::Rat;
using geuler::Sqrt3Rat;
using geuler::TransportPlan;

namespace {

std::filesystem::path scratch_file(const char* name) {
  return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("plan_io: rational plans round trip through JSON") {
  const auto plan = geuler::split_optimizer_plan(4);
  const std::string text = geuler::plan_to_json_string(plan);
  CHECK(text.rfind("{", 0) == 0);
  CHECK(text.find("\"grid\"") != std::string::npos);
  CHECK(text.find("\"arith\": \"rational\"") != std::string::npos);

  const auto loaded = geuler::plan_from_json_string<Rat>(text);
  CHECK(loaded == plan);

  const auto path = scratch_file("geuler_plan_roundtrip.json");
  geuler::save_plan(plan, path);
  CHECK(geuler::load_plan<Rat>(path) == plan);
  std::filesystem::remove(path);
}

TEST_CASE("plan_io: float plans round trip through JSON") {
  const auto grid = geuler::three_point_grid();
  const auto tg = geuler::TimeGrid::unit_steps(2);
  TransportPlan<double>::Builder builder(grid, tg, PlanForm::kFull);
  builder.add(DiscretePath{{0, 1, 2}}, 0.25);
  builder.add(DiscretePath{{2, 1, 0}}, 0.75);
  const auto plan = std::move(builder).build();

  const auto loaded = geuler::plan_from_json_string<double>(geuler::plan_to_json_string(plan));
  CHECK(loaded == plan);
}

TEST_CASE("plan_io: arithmetic modes do not mix silently") {
  const auto plan = geuler::split_optimizer_plan(3);
  const std::string text = geuler::plan_to_json_string(plan);
  CHECK_THROWS_AS(geuler::plan_from_json_string<double>(text), std::runtime_error);
}

TEST_CASE("plan_io: malformed documents are rejected") {
  CHECK_THROWS(geuler::plan_from_json_string<Rat>("not json"));
  CHECK_THROWS(geuler::plan_from_json_string<Rat>("{}"));
  CHECK_THROWS(geuler::plan_from_json_string<Rat>(
      R"({"grid":["-1","0","1"],"times":["0","1"],"arith":"rational","atoms":[]})"));
  CHECK_THROWS_AS(geuler::load_plan<Rat>(scratch_file("geuler_missing_plan.json")),
                  std::runtime_error);
}

TEST_CASE("plan_io: quadratic field scalars round trip") {
  const Sqrt3Rat value(Rat(1, 2), Rat(-2, 3));
  const std::string text = geuler::sqrt3_to_json_string(value);
  CHECK(geuler::sqrt3_from_json_string(text) == value);
  CHECK(geuler::sqrt3_from_json_string(geuler::sqrt3_to_json_string(Sqrt3Rat(0))) ==
        Sqrt3Rat(0));
}

TEST_CASE("plan_io: LP export carries the full system") {
  const auto grid = geuler::three_point_grid();
  const auto mmot = geuler::assemble_mmot_lp<Rat>(
      grid, geuler::TimeGrid::unit_steps(3), geuler::flip_map(grid),
      geuler::CostSpec{geuler::CostKind::kReducedAction, {}}, PlanForm::kReduced);
  const std::string text = geuler::lp_to_json_string(mmot);
  CHECK(text.find("\"rows\": 9") != std::string::npos);
  CHECK(text.find("\"cols\": 27") != std::string::npos);
  CHECK(text.find("\"reduced-action\"") != std::string::npos);
}
