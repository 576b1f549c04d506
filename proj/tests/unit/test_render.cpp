#include "geuler/render.hpp"

#include <doctest.h>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "geuler/euler.hpp"
#include "geuler/measures.hpp"

using geuler::DiscretePath;
using geuler::PlanForm;
using geuler::Rat;
using geuler::TransportPlan;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE_MESSAGE(bool(in), "missing file: " << path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::size_t count_occurrences(const std::string& text, const std::string& needle) {
  std::size_t count = 0;
  for (std::size_t pos = text.find(needle); pos != std::string::npos;
       pos = text.find(needle, pos + needle.size())) {
    ++count;
  }
  return count;
}

std::vector<double> stroke_widths(const std::string& svg) {
  std::vector<double> widths;
  const std::string key = "stroke-width=\"";
  for (std::size_t pos = svg.find(key); pos != std::string::npos;
       pos = svg.find(key, pos + key.size())) {
    const std::size_t start = pos + key.size();
    const std::size_t end = svg.find('"', start);
    widths.push_back(std::stod(svg.substr(start, end - start)));
  }
  return widths;
}

TransportPlan<Rat> single_atom_plan() {
  const auto grid = geuler::three_point_grid();
  const auto tg = geuler::TimeGrid::unit_steps(2);
  TransportPlan<Rat>::Builder builder(grid, tg, PlanForm::kFull);
  builder.add(DiscretePath{{1, 1, 1}}, Rat(1));
  return std::move(builder).build();
}

}  // namespace

TEST_CASE("render: golden SVG for the split-optimizer plan") {
  const auto plan = geuler::split_optimizer_plan(4);
  const std::string once = geuler::render_svg(plan);
  const std::string twice = geuler::render_svg(plan);
  CHECK(once == twice);

  const std::string golden = read_file(std::string(GEULER_GOLDEN_DIR) + "/split_plan_n4.svg");
  CHECK(once == golden);

  CHECK(count_occurrences(once, "<polyline") == plan.atoms().size());
  CHECK(count_occurrences(once, "<polyline") == 9);
  CHECK(once.rfind("<?xml", 0) == 0);
}

TEST_CASE("render: stroke widths encode masses") {
  const auto n4 = geuler::split_optimizer_plan(4);
  const auto widths4 = stroke_widths(geuler::render_svg(n4));
  REQUIRE(widths4.size() == 9);
  for (double w : widths4) {
    CHECK(w == doctest::Approx(4.0).epsilon(1e-6));
  }

  // At five steps the stay path carries twice the mass of every mover.
  const auto n5 = geuler::split_optimizer_plan(5);
  const auto widths5 = stroke_widths(geuler::render_svg(n5));
  REQUIRE(widths5.size() == 11);
  double heavy = 0.0;
  double light = widths5.front();
  for (double w : widths5) {
    heavy = std::max(heavy, w);
    light = std::min(light, w);
  }
  CHECK(heavy / light == doctest::Approx(2.0).epsilon(1e-6));

  const auto solo = stroke_widths(geuler::render_svg(single_atom_plan()));
  REQUIRE(solo.size() == 1);
  CHECK(solo.front() == doctest::Approx(36.0).epsilon(1e-6));
}

TEST_CASE("render: options validation") {
  geuler::RenderOptions options;
  options.palette.clear();
  CHECK_THROWS_AS(geuler::render_svg(single_atom_plan(), options), std::invalid_argument);
}

TEST_CASE("render: ascii canvas") {
  const auto plan = geuler::split_optimizer_plan(4);
  const std::string art = geuler::render_ascii(plan, 41, 9);
  CHECK(art == geuler::render_ascii(plan, 41, 9));
  CHECK(art.find('#') != std::string::npos);

  std::istringstream lines(art);
  std::string line;
  std::size_t line_count = 0;
  while (std::getline(lines, line)) {
    ++line_count;
    CHECK(line.size() <= 41 * 4);
  }
  CHECK(line_count == 9);

  CHECK_THROWS_AS(geuler::render_ascii(plan, 1, 9), std::invalid_argument);
  CHECK_THROWS_AS(geuler::render_ascii(plan, 41, 2), std::invalid_argument);
}
