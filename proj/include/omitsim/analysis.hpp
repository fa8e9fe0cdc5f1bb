// Copyright 2026 The omitsim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "omitsim/response.hpp"

namespace omitsim {

/// Ordered probe-response samples over a delta grid.
struct Spectrum {
  std::vector<double> delta_grid;  // rad/s, strictly increasing
  std::vector<ProbeResponse> responses;
  SteadyState steady;
  SystemParams params;
  double reference_omega = 0.0;  // normalizes the x axis: x = (delta - ref)/ref
};

/// Scalar series that can be extracted from a spectrum.
enum class Quantity { ReEpsT, ImEpsT, SidebandMag, ReQNorm, ReQcmNorm };

double quantity_value(const ProbeResponse& r, Quantity q);
std::string quantity_name(Quantity q);
std::vector<double> quantity_series(const Spectrum& s, Quantity q);

enum class ExtremumKind { Minimum, Maximum };

struct Extremum {
  double position = 0.0;  // refined abscissa (rad/s for spectra)
  double value = 0.0;     // refined ordinate
  ExtremumKind kind = ExtremumKind::Minimum;
  std::size_t index = 0;  // grid index of the discrete extremum
};

/// Interior extrema by a three-point discrete test with parabolic
/// refinement, ordered by position. Throws GridTooCoarse when fewer than
/// 3 points separate consecutive extrema, or the grid has < 5 points.
std::vector<Extremum> find_extrema(std::span<const double> xs,
                                   std::span<const double> ys);
std::vector<Extremum> find_extrema(const Spectrum& s, Quantity q);

/// Quantitative features of a transparency window in Re eps_t.
struct WindowFeatures {
  double dip_position = 0.0;  // rad/s
  double dip_depth = 0.0;     // Re eps_t at the dip
  double fwhm = 0.0;          // rad/s, at half depth to the lower shoulder
  std::pair<double, double> outer_peak_positions{0.0, 0.0};
  double splitting = 0.0;     // distance between the outer maxima, rad/s
  /// Present only when a central absorption maximum sits between two dips.
  std::optional<double> central_peak_height;
};

/// Locates the transparency dip, its FWHM, and the outer shoulder
/// splitting. The search is restricted to
/// [Delta_0 - W, Delta_0 + W], W = 10 gamma_eff + |Omega_2 - Omega_1|;
/// the frequency-gap term keeps the split-window structure inside the
/// region when the cooperativity estimate is small. Throws NoWindow.
WindowFeatures transparency_window(const Spectrum& s);

struct CooperativityReport {
  double cooperativity = 0.0;  // C, dimensionless
  double gamma_eff = 0.0;      // gamma_m (1 + C), rad/s
};

/// C = 2 hbar (g_m a_s)^2 / (m omega kappa gamma) with the effective
/// mass m = 2 mu, omega = Omega_r and gamma = gamma_r of the
/// relative mode that the field actually couples to.
CooperativityReport cooperativity_report(const SystemParams& params,
                                         const SteadyState& state);

struct SplittingRow {
  double g_m = 0.0;
  double splitting = 0.0;  // NaN when the point failed
  std::string error;       // empty on success
};

struct SplittingTable {
  std::vector<SplittingRow> rows;
  /// Least-squares line through the successful (g_m, splitting) points;
  /// absent when fewer than two points succeeded.
  std::optional<double> slope;      // rad/s per rad/(s m)
  std::optional<double> intercept;  // rad/s
  std::optional<double> r_squared;
};

/// Splitting of the outer absorption maxima versus coupling strength.
SplittingTable splitting_vs_coupling(const SystemParams& base, double delta0,
                                     const std::vector<double>& g_m_values,
                                     const std::vector<double>& delta_grid);

/// Position and Re eps_t of the central absorption maximum between the
/// two transparency dips. Throws NoCentralPeak for single-dip spectra.
std::pair<double, double> central_peak_metrics(const Spectrum& s);

}  // namespace omitsim
