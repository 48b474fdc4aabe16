#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include "xsep/slice.hpp"

namespace xsep {

// CSV: header "s,t,<classifier...>", one row per grid point, verdicts as
// IN/OUT/BOUNDARY, LF line endings.  Exact mode prints rationals as "p/q".
template <class S>
std::string emit_csv(const SliceTable<S>& tbl) {
  std::string out = "s,t";
  for (const Classifier& c : tbl.classifiers) {
    out += ',';
    out += c.name;
  }
  out += '\n';
  for (std::size_t ti = 0; ti < tbl.tvals.size(); ++ti) {
    for (std::size_t si = 0; si < tbl.svals.size(); ++si) {
      out += num::str_of(tbl.svals[si]);
      out += ',';
      out += num::str_of(tbl.tvals[ti]);
      for (std::size_t ci = 0; ci < tbl.classifiers.size(); ++ci) {
        out += ',';
        out += to_string(tbl.at(static_cast<int>(ti), static_cast<int>(si), ci));
      }
      out += '\n';
    }
  }
  return out;
}

// Fill layers (painted in order, later on top) plus polygon outlines.
struct Palette {
  struct Layer {
    std::string column;  // classifier name; cell painted when not OUT
    std::string color;
  };
  struct Outline {
    RegionTag region;
    std::string color;
    bool dashed = false;
  };
  std::string background = "#ffffff";
  std::vector<Layer> layers;
  std::vector<Outline> outlines;

  static Palette figure1() {
    Palette p;
    p.layers = {{"A", "#f6d9a0"}, {"B|(C&A)", "#a8c8f0"}, {"A&B&C", "#9fd6a4"}};
    p.outlines = {{RegionTag::R, "#8a5a00", false},
                  {RegionTag::H1, "#174a8c", false},
                  {RegionTag::H2, "#176b1e", false},
                  {RegionTag::BetaPentagon, "#aa3377", true},
                  {RegionTag::GammaPentagon, "#55aa33", true}};
    return p;
  }

  static Palette figure2() {
    Palette p;
    p.layers = {{"A&B&C", "#d9e8d9"}, {"fullsep-ghz", "#4f9e57"}};
    p.outlines = {{RegionTag::R, "#8a5a00", true},
                  {RegionTag::H2, "#176b1e", true}};
    return p;
  }
};

namespace detail {

inline std::string fmt2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace detail

// Deterministic SVG: fixed 800x800 viewport, no timestamps, cells merged
// along horizontal runs of equal fill.
template <class S>
std::string emit_svg(const SliceTable<S>& tbl, const Palette& palette) {
  const double W = 800.0, H = 800.0;
  double slo = num::to_double(tbl.grid.s_lo), shi = num::to_double(tbl.grid.s_hi);
  double tlo = num::to_double(tbl.grid.t_lo), thi = num::to_double(tbl.grid.t_hi);
  auto px = [&](double s) { return (s - slo) / (shi - slo) * W; };
  auto py = [&](double t) { return H - (t - tlo) / (thi - tlo) * H; };

  std::vector<std::ptrdiff_t> layer_cols;
  for (const auto& layer : palette.layers) {
    std::ptrdiff_t idx = -1;
    for (std::size_t ci = 0; ci < tbl.classifiers.size(); ++ci)
      if (tbl.classifiers[ci].name == layer.column) idx = static_cast<std::ptrdiff_t>(ci);
    layer_cols.push_back(idx);
  }

  auto cell_color = [&](int ti, int si) -> const std::string* {
    const std::string* color = nullptr;
    for (std::size_t li = 0; li < palette.layers.size(); ++li) {
      if (layer_cols[li] < 0) continue;
      if (tbl.at(ti, si, static_cast<std::size_t>(layer_cols[li])) != Membership::Out)
        color = &palette.layers[li].color;
    }
    return color;
  };

  const int n = static_cast<int>(tbl.svals.size());
  const double cw = W / (n - 1), ch = H / (static_cast<int>(tbl.tvals.size()) - 1);

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" "
         "viewBox=\"0 0 800 800\">\n";
  out += "<rect x=\"0\" y=\"0\" width=\"800\" height=\"800\" fill=\"" + palette.background + "\"/>\n";
  for (int ti = 0; ti < static_cast<int>(tbl.tvals.size()); ++ti) {
    double y = py(num::to_double(tbl.tvals[ti])) - ch / 2;
    int si = 0;
    while (si < n) {
      const std::string* color = cell_color(ti, si);
      int run = si + 1;
      while (run < n && cell_color(ti, run) == color) ++run;
      if (color) {
        double x0 = px(num::to_double(tbl.svals[si])) - cw / 2;
        double x1 = px(num::to_double(tbl.svals[run - 1])) + cw / 2;
        out += "<rect x=\"" + detail::fmt2(x0) + "\" y=\"" + detail::fmt2(y) + "\" width=\"" +
               detail::fmt2(x1 - x0) + "\" height=\"" + detail::fmt2(ch) + "\" fill=\"" + *color +
               "\"/>\n";
      }
      si = run;
    }
  }
  for (const auto& outline : palette.outlines) {
    const auto& vs = region_vertices(outline.region);
    if (vs.empty()) continue;
    std::string points;
    for (const auto& [s, t] : vs) {
      if (!points.empty()) points += ' ';
      points += detail::fmt2(px(num::to_double(s))) + "," + detail::fmt2(py(num::to_double(t)));
    }
    out += "<polygon points=\"" + points + "\" fill=\"none\" stroke=\"" + outline.color +
           "\" stroke-width=\"1.5\"" + (outline.dashed ? " stroke-dasharray=\"6,4\"" : "") + "/>\n";
  }
  // Axes through the origin.
  out += "<line x1=\"" + detail::fmt2(px(0)) + "\" y1=\"0\" x2=\"" + detail::fmt2(px(0)) +
         "\" y2=\"800\" stroke=\"#999999\" stroke-width=\"0.5\"/>\n";
  out += "<line x1=\"0\" y1=\"" + detail::fmt2(py(0)) + "\" x2=\"800\" y2=\"" + detail::fmt2(py(0)) +
         "\" stroke=\"#999999\" stroke-width=\"0.5\"/>\n";
  out += "</svg>\n";
  return out;
}

}  // namespace xsep
