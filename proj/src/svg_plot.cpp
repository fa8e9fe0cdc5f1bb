// Copyright 2026 The omitsim Authors
// SPDX-License-Identifier: Apache-2.0

#include "omitsim/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "omitsim/errors.hpp"

namespace omitsim {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                          "#9467bd", "#ff7f0e", "#8c564b"};
constexpr int kPaletteSize = 6;

std::string num(double v) {
  if (v == 0.0) v = 0.0;  // normalize -0
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void pad() {
    if (!(lo < hi)) {
      const double eps = (lo == 0.0) ? 1.0 : std::abs(lo) * 0.1;
      lo -= eps;
      hi += eps;
    } else {
      const double margin = 0.05 * (hi - lo);
      lo -= margin;
      hi += margin;
    }
  }
};

double nice_step(double span, int target_ticks) {
  const double raw = span / target_ticks;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double norm = raw / mag;
  double step = 10.0;
  if (norm <= 1.0) step = 1.0;
  else if (norm <= 2.0) step = 2.0;
  else if (norm <= 5.0) step = 5.0;
  return step * mag;
}

std::vector<double> ticks(const Range& r, int target) {
  const double step = nice_step(r.hi - r.lo, target);
  std::vector<double> out;
  double t = std::ceil(r.lo / step) * step;
  for (; t <= r.hi + 0.5 * step; t += step) {
    out.push_back(std::abs(t) < 1e-12 * step ? 0.0 : t);
  }
  return out;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string render_svg(const std::vector<SvgSeries>& series,
                       const SvgStyle& style) {
  if (series.empty()) throw EmptyData("no series to plot");
  for (const auto& s : series) {
    if (s.x.empty() || s.x.size() != s.y.size()) {
      throw EmptyData("series '" + s.label + "' is empty or ragged");
    }
  }

  Range rx, ry;
  for (const auto& s : series) {
    for (double v : s.x) rx.add(v);
    for (double v : s.y) ry.add(v);
  }
  if (!std::isfinite(rx.lo) || !std::isfinite(ry.lo)) {
    throw EmptyData("series contain no finite samples");
  }
  rx.pad();
  ry.pad();

  const double ml = 70, mr = 16, mt = style.title.empty() ? 16 : 36, mb = 48;
  const double w = style.width, h = style.height;
  const double pw = w - ml - mr, ph = h - mt - mb;
  auto px = [&](double x) { return ml + (x - rx.lo) / (rx.hi - rx.lo) * pw; };
  auto py = [&](double y) { return mt + (ry.hi - y) / (ry.hi - ry.lo) * ph; };

  std::ostringstream os;
  os << "<svg xmlns='http://www.w3.org/2000/svg' width='" << style.width
     << "' height='" << style.height << "' viewBox='0 0 " << style.width << ' '
     << style.height << "'>\n";
  os << "<rect x='0' y='0' width='" << w << "' height='" << h
     << "' fill='white'/>\n";

  // frame
  os << "<rect x='" << num(ml) << "' y='" << num(mt) << "' width='" << num(pw)
     << "' height='" << num(ph) << "' fill='none' stroke='black' "
     << "stroke-width='1'/>\n";

  os << "<g font-family='sans-serif' font-size='12' fill='black'>\n";
  for (double t : ticks(rx, 8)) {
    const double x = px(t);
    os << "<line x1='" << num(x) << "' y1='" << num(mt + ph) << "' x2='"
       << num(x) << "' y2='" << num(mt + ph + 5)
       << "' stroke='black' stroke-width='1'/>\n";
    os << "<text x='" << num(x) << "' y='" << num(mt + ph + 18)
       << "' text-anchor='middle'>" << num(t) << "</text>\n";
  }
  for (double t : ticks(ry, 6)) {
    const double y = py(t);
    os << "<line x1='" << num(ml - 5) << "' y1='" << num(y) << "' x2='"
       << num(ml) << "' y2='" << num(y)
       << "' stroke='black' stroke-width='1'/>\n";
    os << "<text x='" << num(ml - 8) << "' y='" << num(y + 4)
       << "' text-anchor='end'>" << num(t) << "</text>\n";
  }
  if (!style.x_label.empty()) {
    os << "<text x='" << num(ml + pw / 2) << "' y='" << num(h - 10)
       << "' text-anchor='middle'>" << escape(style.x_label) << "</text>\n";
  }
  if (!style.y_label.empty()) {
    os << "<text x='14' y='" << num(mt + ph / 2)
       << "' text-anchor='middle' transform='rotate(-90 14 "
       << num(mt + ph / 2) << ")'>" << escape(style.y_label) << "</text>\n";
  }
  if (!style.title.empty()) {
    os << "<text x='" << num(ml + pw / 2)
       << "' y='22' text-anchor='middle' font-size='15'>"
       << escape(style.title) << "</text>\n";
  }
  os << "</g>\n";

  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* color = kPalette[k % kPaletteSize];
    os << "<polyline fill='none' stroke='" << color
       << "' stroke-width='1.5' points='";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.y[i])) continue;
      if (i != 0) os << ' ';
      os << num(px(s.x[i])) << ',' << num(py(s.y[i]));
    }
    os << "'/>\n";
  }

  // legend, input order
  const double lx = ml + pw - 160, ly0 = mt + 10;
  os << "<g font-family='sans-serif' font-size='12' fill='black'>\n";
  for (std::size_t k = 0; k < series.size(); ++k) {
    const double y = ly0 + 18.0 * double(k);
    os << "<line x1='" << num(lx) << "' y1='" << num(y) << "' x2='"
       << num(lx + 24) << "' y2='" << num(y) << "' stroke='"
       << kPalette[k % kPaletteSize] << "' stroke-width='2'/>\n";
    os << "<text x='" << num(lx + 30) << "' y='" << num(y + 4) << "'>"
       << escape(series[k].label) << "</text>\n";
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

void write_svg(const std::vector<SvgSeries>& series, const SvgStyle& style,
               const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << render_svg(series, style);
  if (!out) throw IoError("write failed for '" + path + "'");
}

SvgSeries spectrum_series(const Spectrum& s, Quantity q,
                          const std::string& label) {
  SvgSeries out;
  out.label = label;
  out.x.reserve(s.delta_grid.size());
  for (double d : s.delta_grid) {
    out.x.push_back(s.reference_omega > 0.0
                        ? (d - s.reference_omega) / s.reference_omega
                        : d);
  }
  out.y = quantity_series(s, q);
  return out;
}

}  // namespace omitsim
