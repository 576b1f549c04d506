#pragma once

#include "geuler/measures.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace geuler {

/// Visual parameters for the space-time diagrams. Colors are keyed by the
/// starting grid index of each path, cycling through the palette.
struct RenderOptions {
  double width = 640.0;
  double height = 400.0;
  double margin = 40.0;
  /// Stroke pixels per unit of mass.
  double stroke_scale = 36.0;
  double node_radius = 3.0;
  std::vector<std::string> palette = {"#3a6ea5", "#5a9e6f", "#e0a500"};
};

/// Plan as an SVG space-time diagram: one polyline per atom in stored
/// (lexicographic) order, stroke width proportional to mass, grid nodes as
/// circles, time labels as text. Output is byte-stable for identical input;
/// coordinates use fixed 4-decimal formatting and stroke widths 6-decimal.
template <class S>
std::string render_svg(const TransportPlan<S>& plan, const RenderOptions& options = {});

/// Plan as a character grid. Atom traces are drawn in order of increasing
/// mass with the mark chosen by mass relative to the heaviest atom:
/// under a quarter a faint dot, under a half '-', under three quarters '=',
/// else '#'.
template <class S>
std::string render_ascii(const TransportPlan<S>& plan, std::size_t columns, std::size_t rows);

extern template std::string render_svg<Rat>(const TransportPlan<Rat>&, const RenderOptions&);
extern template std::string render_svg<double>(const TransportPlan<double>&,
                                               const RenderOptions&);
extern template std::string render_ascii<Rat>(const TransportPlan<Rat>&, std::size_t,
                                              std::size_t);
extern template std::string render_ascii<double>(const TransportPlan<double>&, std::size_t,
                                                 std::size_t);

}  // namespace geuler
