// Copyright 2026 The omitsim Authors
// SPDX-License-Identifier: Apache-2.0

#include "omitsim/presets.hpp"

#include <cmath>

#include "omitsim/errors.hpp"

namespace omitsim {

namespace {

constexpr double kTwoPi = 2.0 * constants::pi;

SystemParams base_params(double power_w, double wavelength_m, double mass_kg,
                         double kappa_ratio, double length_m,
                         double omega2_ratio) {
  SystemParams p;
  const double omega1 = kTwoPi * 1e7;
  p.mirror1 = {mass_kg, omega1, kTwoPi * 200.0};
  p.mirror2 = {mass_kg, omega2_ratio * omega1, kTwoPi * 200.0};
  p.cavity.kappa = kappa_ratio * omega1;
  p.cavity.length = length_m;
  p.drive.power_coupling = power_w;
  p.drive.power_probe = 1e-4 * power_w;
  finalize_derived(p, wavelength_m);
  return p;
}

double mean_omega(const SystemParams& p) {
  return 0.5 * (p.mirror1.omega_m + p.mirror2.omega_m);
}

}  // namespace

SystemParams params_set_a(double omega2_ratio) {
  return base_params(6e-3, 1064e-9, 12e-12, 0.02, 6e-3, omega2_ratio);
}

SystemParams params_set_b(double omega2_ratio) {
  return base_params(8e-3, 512e-9, 15e-12, 0.01, 2e-3, omega2_ratio);
}

std::vector<std::string> preset_names() {
  return {"fig2", "fig4", "fig5", "fig6", "fig7"};
}

Preset preset(const std::string& name) {
  Preset out;
  out.name = name;

  auto add_run = [&out](const std::string& label, SystemParams p) {
    const double d0 = mean_omega(p);
    p.drive.delta0_target = d0;
    p.cavity.omega0 = p.drive.omega_c + d0;
    out.runs.push_back({label, std::move(p), d0});
  };

  if (name == "fig2") {
    // Equal vs slightly offset mechanical frequencies: single window vs
    // split window with a central absorption peak.
    add_run("equal_freq", params_set_a(1.0));
    add_run("offset_freq", params_set_a(1.03));
    out.plot_quantities = {Quantity::ReEpsT};
    return out;
  }
  if (name == "fig4") {
    // Outer-peak splitting against the coupling strength.
    SystemParams p = params_set_a(1.05);
    const double g1 = p.drive.omega_c / p.cavity.length;
    add_run("coupling_sweep", std::move(p));
    for (int i = 0; i <= 10; ++i) {
      out.g_m_values.push_back((0.5 + 0.1 * i) * g1);
    }
    out.plot_quantities = {Quantity::ReEpsT};
    return out;
  }
  if (name == "fig5") {
    // Window width control by the intracavity nonlinearity. The pump
    // phase enters through Gamma = 2 G e^{i theta}: theta = pi/2 lowers
    // the effective drive detuning (larger a_s, wider window) and
    // theta = 3 pi/2 raises it (smaller a_s, narrower window).
    add_run("bare", params_set_b(1.0));
    SystemParams wide = params_set_b(1.0);
    wide.nonlinear = {4e6, 0.5 * constants::pi, 0.03};
    add_run("opa_widened", std::move(wide));
    SystemParams narrow = params_set_b(1.0);
    narrow.nonlinear = {4e6, 1.5 * constants::pi, 0.04};
    add_run("opa_narrowed", std::move(narrow));
    out.plot_quantities = {Quantity::ReEpsT};
    return out;
  }
  if (name == "fig6") {
    // Lower-sideband magnitude inside the transparency window.
    add_run("bare", params_set_a(1.0));
    SystemParams nl = params_set_a(1.0);
    nl.nonlinear = {1.5 * nl.cavity.kappa, 1.5 * constants::pi, 0.03};
    add_run("kerr_opa", std::move(nl));
    out.plot_quantities = {Quantity::SidebandMag};
    return out;
  }
  if (name == "fig7") {
    // Central-peak enhancement and the coherent mechanical amplitudes.
    add_run("bare", params_set_b(1.06));
    SystemParams nl = params_set_b(1.06);
    nl.nonlinear = {1e7, 1.5 * constants::pi, 0.09};
    add_run("kerr_opa", std::move(nl));
    out.plot_quantities = {Quantity::ReQNorm, Quantity::ReQcmNorm,
                           Quantity::ReEpsT};
    return out;
  }
  throw ConfigError("unknown preset '" + name +
                    "' (expected fig2|fig4|fig5|fig6|fig7)");
}

}  // namespace omitsim
