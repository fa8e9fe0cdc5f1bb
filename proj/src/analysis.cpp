// Copyright 2026 The omitsim Authors
// SPDX-License-Identifier: Apache-2.0

#include "omitsim/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "omitsim/errors.hpp"

namespace omitsim {

namespace {

// Vertex of the parabola through three samples; clamped to the bracket.
void refine_parabolic(std::span<const double> xs, std::span<const double> ys,
                      std::size_t i, double* pos, double* val) {
  const double x0 = xs[i - 1], x1 = xs[i], x2 = xs[i + 1];
  const double y0 = ys[i - 1], y1 = ys[i], y2 = ys[i + 1];
  const double d01 = (y1 - y0) / (x1 - x0);
  const double d12 = (y2 - y1) / (x2 - x1);
  const double curv = (d12 - d01) / (x2 - x0);
  if (curv == 0.0) {
    *pos = x1;
    *val = y1;
    return;
  }
  double xv = 0.5 * (x0 + x1 - d01 / curv);
  xv = std::clamp(xv, x0, x2);
  const double dx = xv - x1;
  *pos = xv;
  *val = y1 + (d01 + curv * (x1 - x0)) * dx + curv * dx * dx;
}

struct WindowRegion {
  std::size_t lo = 0;  // inclusive
  std::size_t hi = 0;  // inclusive
};

// Search region around the operating point; the |Omega_2 - Omega_1| term
// keeps the split-window structure inside the region when the
// cooperativity-based width estimate is small.
WindowRegion window_region(const Spectrum& s) {
  const auto coop = cooperativity_report(s.params, s.steady);
  const double halfwidth =
      10.0 * coop.gamma_eff +
      std::abs(s.params.mirror2.omega_m - s.params.mirror1.omega_m);
  const double lo = s.steady.delta0 - halfwidth;
  const double hi = s.steady.delta0 + halfwidth;
  const auto& grid = s.delta_grid;
  WindowRegion r;
  r.lo = std::lower_bound(grid.begin(), grid.end(), lo) - grid.begin();
  auto it_hi = std::upper_bound(grid.begin(), grid.end(), hi);
  r.hi = (it_hi == grid.begin()) ? 0 : (it_hi - grid.begin() - 1);
  if (r.lo >= grid.size() || r.hi < r.lo) {
    throw NoWindow("operating point lies outside the sampled grid");
  }
  return r;
}

double interp_crossing(double x0, double y0, double x1, double y1,
                       double level) {
  if (y1 == y0) return x1;
  return x0 + (level - y0) * (x1 - x0) / (y1 - y0);
}

}  // namespace

double quantity_value(const ProbeResponse& r, Quantity q) {
  switch (q) {
    case Quantity::ReEpsT:
      return r.eps_t.real();
    case Quantity::ImEpsT:
      return r.eps_t.imag();
    case Quantity::SidebandMag:
      return r.sideband_mag;
    case Quantity::ReQNorm:
      return r.q_norm.real();
    case Quantity::ReQcmNorm:
      return r.q_cm_norm.real();
  }
  return 0.0;
}

std::string quantity_name(Quantity q) {
  switch (q) {
    case Quantity::ReEpsT:
      return "re_eps_t";
    case Quantity::ImEpsT:
      return "im_eps_t";
    case Quantity::SidebandMag:
      return "sideband_mag";
    case Quantity::ReQNorm:
      return "re_q_norm";
    case Quantity::ReQcmNorm:
      return "re_qcm_norm";
  }
  return "";
}

std::vector<double> quantity_series(const Spectrum& s, Quantity q) {
  std::vector<double> out;
  out.reserve(s.responses.size());
  for (const auto& r : s.responses) out.push_back(quantity_value(r, q));
  return out;
}

std::vector<Extremum> find_extrema(std::span<const double> xs,
                                   std::span<const double> ys) {
  if (xs.size() != ys.size()) {
    throw Error("find_extrema: mismatched series lengths");
  }
  if (xs.size() < 5) {
    throw GridTooCoarse("find_extrema needs at least 5 grid points");
  }

  std::vector<Extremum> out;
  for (std::size_t i = 1; i + 1 < ys.size(); ++i) {
    const bool is_max = ys[i] > ys[i - 1] && ys[i] > ys[i + 1];
    const bool is_min = ys[i] < ys[i - 1] && ys[i] < ys[i + 1];
    if (!is_max && !is_min) continue;
    Extremum e;
    e.kind = is_max ? ExtremumKind::Maximum : ExtremumKind::Minimum;
    e.index = i;
    refine_parabolic(xs, ys, i, &e.position, &e.value);
    if (!out.empty() && i - out.back().index < 4) {
      std::ostringstream os;
      os << "fewer than 3 grid points between extrema at indices "
         << out.back().index << " and " << i;
      throw GridTooCoarse(os.str());
    }
    out.push_back(e);
  }
  return out;
}

std::vector<Extremum> find_extrema(const Spectrum& s, Quantity q) {
  const auto ys = quantity_series(s, q);
  return find_extrema(s.delta_grid, ys);
}

CooperativityReport cooperativity_report(const SystemParams& params,
                                         const SteadyState& state) {
  const auto coll = collective_coords(params);
  const double g_rate = params.g_m * state.amplitude;
  CooperativityReport rep;
  // Effective mass 2 mu of the relative mode the field couples to.
  rep.cooperativity = 2.0 * constants::hbar * g_rate * g_rate /
                      (2.0 * coll.reduced_mass * coll.omega_r *
                       params.cavity.kappa * coll.gamma_r);
  rep.gamma_eff = coll.gamma_r * (1.0 + rep.cooperativity);
  return rep;
}

WindowFeatures transparency_window(const Spectrum& s) {
  const auto region = window_region(s);
  const auto ys_full = quantity_series(s, Quantity::ReEpsT);
  const std::span<const double> xs(s.delta_grid.data() + region.lo,
                                   region.hi - region.lo + 1);
  const std::span<const double> ys(ys_full.data() + region.lo,
                                   region.hi - region.lo + 1);

  const auto extrema = find_extrema(xs, ys);

  std::vector<Extremum> minima, maxima;
  for (const auto& e : extrema) {
    (e.kind == ExtremumKind::Minimum ? minima : maxima).push_back(e);
  }
  if (minima.empty() || maxima.size() < 2) {
    throw NoWindow("no dip bracketed by absorption maxima in the window region");
  }

  const auto dip = *std::min_element(
      minima.begin(), minima.end(),
      [](const Extremum& a, const Extremum& b) { return a.value < b.value; });

  const Extremum* left = nullptr;
  const Extremum* right = nullptr;
  for (const auto& e : maxima) {
    if (e.position < dip.position && left == nullptr) left = &e;
    if (e.position > dip.position) right = &e;  // keeps the last one
  }
  if (left == nullptr || right == nullptr) {
    throw NoWindow("dip is not bracketed by maxima on both sides");
  }

  WindowFeatures w;
  w.dip_position = dip.position;
  w.dip_depth = dip.value;
  w.outer_peak_positions = {left->position, right->position};
  w.splitting = right->position - left->position;

  // Half depth against the lower shoulder; crossings by linear
  // interpolation scanning outward from the dip.
  const double base = std::min(left->value, right->value);
  const double level = 0.5 * (dip.value + base);
  std::size_t i = dip.index;
  while (i > 0 && ys[i] < level) --i;
  const double x_left = (ys[dip.index] >= level)
                            ? xs[dip.index]
                            : interp_crossing(xs[i], ys[i], xs[i + 1],
                                              ys[i + 1], level);
  std::size_t j = dip.index;
  while (j + 1 < ys.size() && ys[j] < level) ++j;
  const double x_right = (ys[dip.index] >= level)
                             ? xs[dip.index]
                             : interp_crossing(xs[j - 1], ys[j - 1], xs[j],
                                               ys[j], level);
  w.fwhm = x_right - x_left;
  if (!(w.fwhm > 0.0)) {
    throw NoWindow("degenerate transparency window (zero width)");
  }

  // Central absorption maximum between the outermost two dips, when the
  // window is split.
  if (minima.size() >= 2) {
    const double lo_min = minima.front().position;
    const double hi_min = minima.back().position;
    double best = -std::numeric_limits<double>::infinity();
    bool found = false;
    for (const auto& e : maxima) {
      if (e.position > lo_min && e.position < hi_min && e.value > best) {
        best = e.value;
        found = true;
      }
    }
    if (found) w.central_peak_height = best;
  }
  return w;
}

SplittingTable splitting_vs_coupling(const SystemParams& base, double delta0,
                                     const std::vector<double>& g_m_values,
                                     const std::vector<double>& delta_grid) {
  SplittingTable table;
  for (double g_m : g_m_values) {
    SplittingRow row;
    row.g_m = g_m;
    row.splitting = std::numeric_limits<double>::quiet_NaN();
    try {
      SystemParams params = base;
      params.g_m = g_m;
      params.validate();
      const auto states = solve_steady_state(params, delta0);
      Spectrum s;
      s.params = params;
      s.steady = select_operating_state(states);
      s.delta_grid = delta_grid;
      s.reference_omega =
          0.5 * (params.mirror1.omega_m + params.mirror2.omega_m);
      s.responses.reserve(delta_grid.size());
      for (double delta : delta_grid) {
        s.responses.push_back(solve_probe_response(params, s.steady, delta));
      }
      row.splitting = transparency_window(s).splitting;
    } catch (const Error& err) {
      row.error = err.what();
    }
    table.rows.push_back(row);
  }

  std::vector<double> gs, sp;
  for (const auto& row : table.rows) {
    if (row.error.empty() && std::isfinite(row.splitting)) {
      gs.push_back(row.g_m);
      sp.push_back(row.splitting);
    }
  }
  if (gs.size() < 2) return table;

  // Fit on a centered, scaled abscissa; raw g_m values are ~1e17 and
  // would wreck the normal equations.
  const double g_mean = std::accumulate(gs.begin(), gs.end(), 0.0) / gs.size();
  const double s_mean = std::accumulate(sp.begin(), sp.end(), 0.0) / sp.size();
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < gs.size(); ++i) {
    const double dx = gs[i] - g_mean;
    const double dy = sp[i] - s_mean;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) return table;
  const double slope = sxy / sxx;
  table.slope = slope;
  table.intercept = s_mean - slope * g_mean;
  if (syy == 0.0) {
    table.r_squared = 1.0;
  } else {
    double ss_res = 0.0;
    for (std::size_t i = 0; i < gs.size(); ++i) {
      const double r = sp[i] - (s_mean + slope * (gs[i] - g_mean));
      ss_res += r * r;
    }
    table.r_squared = 1.0 - ss_res / syy;
  }
  return table;
}

std::pair<double, double> central_peak_metrics(const Spectrum& s) {
  const auto region = window_region(s);
  const auto ys_full = quantity_series(s, Quantity::ReEpsT);
  const std::span<const double> xs(s.delta_grid.data() + region.lo,
                                   region.hi - region.lo + 1);
  const std::span<const double> ys(ys_full.data() + region.lo,
                                   region.hi - region.lo + 1);
  const auto extrema = find_extrema(xs, ys);

  std::vector<Extremum> minima, maxima;
  for (const auto& e : extrema) {
    (e.kind == ExtremumKind::Minimum ? minima : maxima).push_back(e);
  }
  if (minima.size() < 2) {
    throw NoCentralPeak("spectrum has fewer than two transparency dips");
  }
  const double lo_min = minima.front().position;
  const double hi_min = minima.back().position;
  const Extremum* best = nullptr;
  for (const auto& e : maxima) {
    if (e.position > lo_min && e.position < hi_min &&
        (best == nullptr || e.value > best->value)) {
      best = &e;
    }
  }
  if (best == nullptr) {
    throw NoCentralPeak("no absorption maximum between the two dips");
  }
  return {best->position, best->value};
}

}  // namespace omitsim
