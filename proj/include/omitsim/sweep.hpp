// Copyright 2026 The omitsim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "omitsim/analysis.hpp"

namespace omitsim {

/// Which mechanical frequency normalizes the x axis.
enum class Reference { Mean, Mirror1, Mirror2 };

double reference_omega(const SystemParams& params, Reference ref);
Reference parse_reference(const std::string& name);
std::string reference_name(Reference ref);

/// Probe-offset grid in normalized units x = (delta - omega_ref)/omega_ref.
struct GridSpec {
  double start = -0.1;
  double stop = 0.1;
  std::size_t count = 4001;
};

std::vector<double> make_delta_grid(const SystemParams& params,
                                    const GridSpec& grid, Reference ref);

enum class AxisScale { Linear, Log };

/// One-dimensional parameter sweep: axis path, values, and the delta
/// grid used for each spectrum.
struct SweepSpec {
  std::string axis;            // e.g. "nonlinear.gain_opa", "g_m"
  std::vector<double> values;  // explicit values, already resolved
  GridSpec delta_grid;
  Reference reference = Reference::Mean;
};

std::vector<double> make_axis_values(double start, double stop,
                                     std::size_t count, AxisScale scale);

/// Resolves a dotted parameter path to a mutable field; UnknownAxis when
/// the path does not name a numeric parameter.
double* resolve_axis(SystemParams& params, const std::string& path);

/// Per-point wall-clock timing of a frequency sweep.
struct SweepTiming {
  std::vector<double> seconds_per_point;
  double total_seconds = 0.0;
};

/// One probe-response solve per grid point, grid order preserved
/// regardless of worker count. delta_grid must be strictly increasing.
Spectrum frequency_sweep(const SystemParams& params, double delta0,
                         const std::vector<double>& delta_grid,
                         Reference ref = Reference::Mean, int workers = 1,
                         SweepTiming* timing = nullptr);

struct SweepPoint {
  double value = 0.0;
  std::optional<Spectrum> spectrum;  // absent when the point failed
  std::string error;                 // failure message, empty on success
};

/// Independent evaluation per axis value; per-point failures are
/// recorded without aborting the sweep.
std::vector<SweepPoint> parameter_sweep(const SystemParams& base,
                                        double delta0, const SweepSpec& spec,
                                        int workers = 1);

}  // namespace omitsim
