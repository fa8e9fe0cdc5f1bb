// Copyright 2026 The omitsim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "omitsim/sweep.hpp"

namespace omitsim {

/// One spectrum run inside a reproduction preset.
struct PresetRun {
  std::string label;
  SystemParams params;
  double delta0 = 0.0;
};

/// A built-in reproduction: named runs sharing one grid, plus the
/// quantities to plot.
struct Preset {
  std::string name;
  std::vector<PresetRun> runs;
  GridSpec grid;
  Reference reference = Reference::Mean;
  std::vector<Quantity> plot_quantities;
  /// Set for the coupling-sweep preset (fig4); empty otherwise.
  std::vector<double> g_m_values;
};

/// Base parameter set A: 6 mW drive at 1064 nm, 12 ng mirrors,
/// kappa = 0.02 Omega_1, L = 6 mm.
SystemParams params_set_a(double omega2_ratio);

/// Base parameter set B: 8 mW drive at 512 nm, 15 ng mirrors,
/// kappa = 0.01 Omega_1, L = 2 mm.
SystemParams params_set_b(double omega2_ratio);

/// Built-in presets: fig2, fig4, fig5, fig6, fig7.
Preset preset(const std::string& name);

std::vector<std::string> preset_names();

}  // namespace omitsim
