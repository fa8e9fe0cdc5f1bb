// Copyright 2026 The omitsim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "omitsim/sweep.hpp"

namespace omitsim {

/// Fully resolved run configuration loaded from an INI-style file.
/// Sections: [cavity], [mirror1], [mirror2], [drive], [nonlinear],
/// [sweep]. Every numeric value carries a unit tag; frequencies accept
/// `hz` or `rad_per_s`, converted once at load.
struct RunConfig {
  SystemParams params;
  double delta0 = 0.0;
  GridSpec grid;
  Reference reference = Reference::Mean;
  std::optional<SweepSpec> sweep;  // present when [sweep] defines an axis
  std::vector<std::string> warnings;
};

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// Canonical config text for a parameter set (used by presets and the
/// `steady` command's echo).
std::string config_to_text(const RunConfig& config);

}  // namespace omitsim
