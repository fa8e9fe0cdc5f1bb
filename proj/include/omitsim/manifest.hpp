// Copyright 2026 The omitsim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "omitsim/analysis.hpp"

namespace omitsim {

inline constexpr const char* kVersion = "omitsim 0.1.0";

/// Provenance record attached to every exported data product.
/// The id is a hash of the resolved configuration and code version, so
/// repeated runs of the same configuration share a manifest identity.
/// The timestamp honors SOURCE_DATE_EPOCH for reproducible output.
struct RunManifest {
  std::string id;
  std::string version;
  std::string timestamp;
  std::string config;  // resolved configuration, canonical JSON
  std::vector<std::string> warnings;
  int n_real_roots = 0;
  bool stability_checked = false;
  bool stable = true;
};

nlohmann::json params_to_json(const SystemParams& params, double delta0);
SystemParams params_from_json(const nlohmann::json& j, double* delta0);

RunManifest make_manifest(const SystemParams& params, double delta0,
                          const SteadyState& steady,
                          const std::vector<std::string>& warnings);

nlohmann::json manifest_to_json(const RunManifest& m);
RunManifest manifest_from_json(const nlohmann::json& j);

/// ISO-8601 UTC timestamp; SOURCE_DATE_EPOCH overrides the clock.
std::string current_timestamp();

/// FNV-1a hash of a string, rendered as 16 hex digits.
std::string stable_hash(const std::string& text);

}  // namespace omitsim
