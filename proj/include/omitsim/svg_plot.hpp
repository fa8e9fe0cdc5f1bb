// Copyright 2026 The omitsim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "omitsim/analysis.hpp"

namespace omitsim {

struct SvgSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct SvgStyle {
  int width = 900;
  int height = 540;
  std::string title;
  std::string x_label;
  std::string y_label;
};

/// Standalone SVG line plot: axes, tick labels, legend in input order.
/// Deterministic output for identical input. Throws EmptyData.
std::string render_svg(const std::vector<SvgSeries>& series,
                       const SvgStyle& style);

void write_svg(const std::vector<SvgSeries>& series, const SvgStyle& style,
               const std::string& path);

/// Convenience: one quantity of several spectra against x = delta/ref - 1.
SvgSeries spectrum_series(const Spectrum& s, Quantity q,
                          const std::string& label);

}  // namespace omitsim
