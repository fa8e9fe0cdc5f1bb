// Copyright 2026 The omitsim Authors
// SPDX-License-Identifier: Apache-2.0

#include "omitsim/manifest.hpp"

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <ctime>

#include <nlohmann/json.hpp>

#include "omitsim/errors.hpp"

namespace omitsim {

using nlohmann::json;

json params_to_json(const SystemParams& p, double delta0) {
  json j;
  j["cavity"] = {{"omega0", p.cavity.omega0},
                 {"kappa", p.cavity.kappa},
                 {"length", p.cavity.length}};
  j["mirror1"] = {{"mass", p.mirror1.mass},
                  {"omega_m", p.mirror1.omega_m},
                  {"gamma", p.mirror1.gamma}};
  j["mirror2"] = {{"mass", p.mirror2.mass},
                  {"omega_m", p.mirror2.omega_m},
                  {"gamma", p.mirror2.gamma}};
  j["drive"] = {{"power_coupling", p.drive.power_coupling},
                {"power_probe", p.drive.power_probe},
                {"omega_c", p.drive.omega_c}};
  j["nonlinear"] = {{"gain_opa", p.nonlinear.gain_opa},
                    {"theta", p.nonlinear.theta},
                    {"eta", p.nonlinear.eta}};
  j["g_m"] = p.g_m;
  j["delta0"] = delta0;
  j["sideband_resolution"] = p.sideband_resolution();
  return j;
}

SystemParams params_from_json(const json& j, double* delta0) {
  SystemParams p;
  p.cavity.omega0 = j.at("cavity").at("omega0").get<double>();
  p.cavity.kappa = j.at("cavity").at("kappa").get<double>();
  p.cavity.length = j.at("cavity").at("length").get<double>();
  for (const auto& [key, mirror] :
       {std::pair{"mirror1", &p.mirror1}, std::pair{"mirror2", &p.mirror2}}) {
    mirror->mass = j.at(key).at("mass").get<double>();
    mirror->omega_m = j.at(key).at("omega_m").get<double>();
    mirror->gamma = j.at(key).at("gamma").get<double>();
  }
  p.drive.power_coupling = j.at("drive").at("power_coupling").get<double>();
  p.drive.power_probe = j.at("drive").at("power_probe").get<double>();
  p.drive.omega_c = j.at("drive").at("omega_c").get<double>();
  p.nonlinear.gain_opa = j.at("nonlinear").at("gain_opa").get<double>();
  p.nonlinear.theta = j.at("nonlinear").at("theta").get<double>();
  p.nonlinear.eta = j.at("nonlinear").at("eta").get<double>();
  p.g_m = j.at("g_m").get<double>();
  const double d0 = j.at("delta0").get<double>();
  p.drive.delta0_target = d0;
  if (delta0 != nullptr) *delta0 = d0;
  return p;
}

std::string stable_hash(const std::string& text) {
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a 64-bit
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

std::string current_timestamp() {
  std::time_t t = 0;
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) {
    t = static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10));
  } else {
    t = std::time(nullptr);
  }
  std::tm tm_utc{};
  gmtime_r(&t, &tm_utc);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

RunManifest make_manifest(const SystemParams& params, double delta0,
                          const SteadyState& steady,
                          const std::vector<std::string>& warnings) {
  RunManifest m;
  m.version = kVersion;
  m.config = params_to_json(params, delta0).dump();
  m.id = stable_hash(std::string(kVersion) + "\n" + m.config);
  m.timestamp = current_timestamp();
  m.warnings = warnings;
  m.n_real_roots = steady.n_real_roots;
  m.stability_checked = steady.stable.has_value();
  m.stable = steady.stable.value_or(true);
  return m;
}

json manifest_to_json(const RunManifest& m) {
  json j;
  j["id"] = m.id;
  j["version"] = m.version;
  j["timestamp"] = m.timestamp;
  j["config"] = json::parse(m.config);
  j["warnings"] = m.warnings;
  j["steady_state_meta"] = {{"n_real_roots", m.n_real_roots},
                            {"stability_checked", m.stability_checked},
                            {"stable", m.stable}};
  return j;
}

RunManifest manifest_from_json(const json& j) {
  RunManifest m;
  m.id = j.at("id").get<std::string>();
  m.version = j.at("version").get<std::string>();
  m.timestamp = j.at("timestamp").get<std::string>();
  m.config = j.at("config").dump();
  m.warnings = j.at("warnings").get<std::vector<std::string>>();
  const auto& meta = j.at("steady_state_meta");
  m.n_real_roots = meta.at("n_real_roots").get<int>();
  m.stability_checked = meta.at("stability_checked").get<bool>();
  m.stable = meta.at("stable").get<bool>();
  return m;
}

}  // namespace omitsim
