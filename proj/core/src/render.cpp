#include "geuler/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace geuler {

namespace {

std::string fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
  // Avoid the distinct bit pattern of negative zero leaking into output.
  std::string s(buf);
  if (s == "-0." + std::string(static_cast<std::size_t>(decimals), '0')) {
    s.erase(s.begin());
  }
  return s;
}

double mass_value(const Rat& m) { return to_double(m); }
double mass_value(double m) { return m; }

struct Layout {
  double x0, xs;  // x = x0 + xs * (t - t_first)
  double y0, ys;  // y = y0 - ys * (p - p_min)
};

template <class S>
Layout make_layout(const TransportPlan<S>& plan, double width, double height, double margin) {
  const auto& tg = plan.timegrid();
  const double t_first = to_double(tg.time(0));
  const double t_last = to_double(tg.time(plan.path_length() - 1));
  const double p_min = to_double(plan.grid().point(0));
  const double p_max = to_double(plan.grid().point(plan.grid().size() - 1));
  const double t_span = t_last > t_first ? t_last - t_first : 1.0;
  const double p_span = p_max > p_min ? p_max - p_min : 1.0;
  Layout l;
  l.x0 = margin;
  l.xs = (width - 2 * margin) / t_span;
  l.y0 = height - margin;
  l.ys = (height - 2 * margin) / p_span;
  return l;
}

}  // namespace

template <class S>
std::string render_svg(const TransportPlan<S>& plan, const RenderOptions& options) {
  if (plan.atoms().empty()) {
    throw std::invalid_argument("render_svg: empty plan");
  }
  if (options.palette.empty()) {
    throw std::invalid_argument("render_svg: empty palette");
  }
  const Layout l = make_layout(plan, options.width, options.height, options.margin);
  const auto& tg = plan.timegrid();
  const auto& grid = plan.grid();
  const std::size_t nt = plan.path_length();
  const double t_first = to_double(tg.time(0));
  const double p_min = to_double(grid.point(0));

  auto px = [&](std::size_t i) { return l.x0 + l.xs * (to_double(tg.time(i)) - t_first); };
  auto py = [&](const Rat& p) { return l.y0 - l.ys * (to_double(p) - p_min); };

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fixed(options.width, 0) +
         "\" height=\"" + fixed(options.height, 0) + "\" viewBox=\"0 0 " +
         fixed(options.width, 0) + " " + fixed(options.height, 0) + "\">\n";

  for (std::size_t i = 0; i < nt; ++i) {
    for (std::size_t k = 0; k < grid.size(); ++k) {
      out += "  <circle cx=\"" + fixed(px(i), 4) + "\" cy=\"" + fixed(py(grid.point(k)), 4) +
             "\" r=\"" + fixed(options.node_radius, 4) + "\" fill=\"#d8d8d8\"/>\n";
    }
  }

  for (const auto& atom : plan.atoms()) {
    const auto start = static_cast<std::size_t>(atom.path.indices[0]);
    const std::string& color = options.palette[start % options.palette.size()];
    const double w = mass_value(atom.mass) * options.stroke_scale;
    out += "  <polyline points=\"";
    for (std::size_t i = 0; i < nt; ++i) {
      if (i > 0) {
        out += " ";
      }
      const auto k = static_cast<std::size_t>(atom.path.indices[i]);
      out += fixed(px(i), 4) + "," + fixed(py(grid.point(k)), 4);
    }
    out += "\" fill=\"none\" stroke=\"" + color + "\" stroke-width=\"" + fixed(w, 6) +
           "\" stroke-linecap=\"round\" stroke-linejoin=\"round\" stroke-opacity=\"0.85\"/>\n";
  }

  for (std::size_t i = 0; i < nt; ++i) {
    out += "  <text x=\"" + fixed(px(i), 4) + "\" y=\"" +
           fixed(options.height - options.margin / 2, 4) +
           "\" font-family=\"monospace\" font-size=\"12\" text-anchor=\"middle\">t=" +
           format_rational(tg.time(i)) + "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

template <class S>
std::string render_ascii(const TransportPlan<S>& plan, std::size_t columns, std::size_t rows) {
  if (plan.atoms().empty()) {
    throw std::invalid_argument("render_ascii: empty plan");
  }
  if (columns < 2 || rows < 2) {
    throw std::invalid_argument("render_ascii: canvas must be at least 2x2");
  }
  if (rows < plan.grid().size()) {
    throw std::invalid_argument("render_ascii: row count below grid size");
  }
  const auto& tg = plan.timegrid();
  const auto& grid = plan.grid();
  const std::size_t nt = plan.path_length();
  const double t_first = to_double(tg.time(0));
  const double t_last = to_double(tg.time(nt - 1));
  const double p_min = to_double(grid.point(0));
  const double p_max = to_double(grid.point(grid.size() - 1));
  const double t_span = t_last > t_first ? t_last - t_first : 1.0;
  const double p_span = p_max > p_min ? p_max - p_min : 1.0;

  auto col = [&](std::size_t i) {
    return static_cast<long>(std::lround((to_double(tg.time(i)) - t_first) / t_span *
                                         static_cast<double>(columns - 1)));
  };
  auto row = [&](double p) {
    return static_cast<long>(
        std::lround((p_max - p) / p_span * static_cast<double>(rows - 1)));
  };

  std::vector<std::vector<std::string>> canvas(rows,
                                               std::vector<std::string>(columns, " "));
  double max_mass = 0.0;
  for (const auto& atom : plan.atoms()) {
    max_mass = std::max(max_mass, mass_value(atom.mass));
  }

  // Draw light to heavy so the heaviest trace wins contested cells.
  std::vector<std::size_t> order(plan.atoms().size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    order[i] = i;
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return mass_value(plan.atoms()[a].mass) < mass_value(plan.atoms()[b].mass);
  });

  for (std::size_t idx : order) {
    const auto& atom = plan.atoms()[idx];
    const double ratio = mass_value(atom.mass) / max_mass;
    const char* mark = ratio < 0.25 ? "·" : (ratio < 0.5 ? "-" : (ratio < 0.75 ? "=" : "#"));
    for (std::size_t i = 0; i + 1 < nt; ++i) {
      const long c0 = col(i);
      const long c1 = col(i + 1);
      const double y0 = to_double(grid.point(static_cast<std::size_t>(atom.path.indices[i])));
      const double y1 =
          to_double(grid.point(static_cast<std::size_t>(atom.path.indices[i + 1])));
      for (long c = c0; c <= c1; ++c) {
        const double f = c1 > c0 ? static_cast<double>(c - c0) / static_cast<double>(c1 - c0)
                                 : 0.0;
        const long r = row(y0 + f * (y1 - y0));
        canvas[static_cast<std::size_t>(std::clamp(r, 0L, static_cast<long>(rows - 1)))]
              [static_cast<std::size_t>(std::clamp(c, 0L, static_cast<long>(columns - 1)))] =
                  mark;
      }
    }
  }

  std::string out;
  for (const auto& line : canvas) {
    std::string text;
    for (const auto& cell : line) {
      text += cell;
    }
    // Trailing blanks carry no information and complicate diffing.
    while (!text.empty() && text.back() == ' ') {
      text.pop_back();
    }
    out += text;
    out += '\n';
  }
  return out;
}

template std::string render_svg<Rat>(const TransportPlan<Rat>&, const RenderOptions&);
template std::string render_svg<double>(const TransportPlan<double>&, const RenderOptions&);
template std::string render_ascii<Rat>(const TransportPlan<Rat>&, std::size_t, std::size_t);
template std::string render_ascii<double>(const TransportPlan<double>&, std::size_t,
                                          std::size_t);

}  // namespace geuler
