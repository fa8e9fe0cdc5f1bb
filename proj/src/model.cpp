// Copyright 2026 The omitsim Authors
// SPDX-License-Identifier: Apache-2.0

#include "omitsim/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "omitsim/errors.hpp"

namespace omitsim {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidParams(what);
}

}  // namespace

double SystemParams::sideband_resolution() const {
  const double omega_min = std::min(mirror1.omega_m, mirror2.omega_m);
  return cavity.kappa / omega_min;
}

std::vector<std::string> SystemParams::validate() const {
  require(cavity.kappa > 0.0, "cavity.kappa must be positive");
  require(cavity.length > 0.0, "cavity.length must be positive");
  if (cavity.omega0 > 0.0) {
    require(cavity.kappa < cavity.omega0, "cavity.kappa must be below omega0");
  }
  for (const auto* m : {&mirror1, &mirror2}) {
    require(m->mass > 0.0, "mirror mass must be positive");
    require(m->omega_m > 0.0, "mirror frequency must be positive");
    require(m->gamma > 0.0, "mirror damping must be positive");
    require(m->gamma < m->omega_m, "mirror must be underdamped (gamma < omega)");
  }
  require(drive.power_coupling >= 0.0, "coupling power must be non-negative");
  require(drive.power_probe >= 0.0, "probe power must be non-negative");
  require(drive.omega_c > 0.0, "coupling frequency must be positive");
  require(nonlinear.gain_opa >= 0.0, "OPA gain must be non-negative");
  require(nonlinear.eta >= 0.0, "Kerr anharmonicity must be non-negative");
  require(nonlinear.theta >= 0.0 && nonlinear.theta < 2.0 * constants::pi,
          "OPA phase must lie in [0, 2 pi)");
  require(g_m > 0.0, "optomechanical coupling g_m must be positive");

  std::vector<std::string> warnings;
  if (drive.power_coupling > 0.0 &&
      drive.power_probe > 0.1 * drive.power_coupling) {
    std::ostringstream os;
    os << "probe power is not weak against the coupling power (ratio "
       << drive.power_probe / drive.power_coupling
       << "); the linearized response assumes power_probe << power_coupling";
    warnings.push_back(os.str());
  }
  return warnings;
}

CollectiveParams collective_coords(const SystemParams& params) {
  const double m1 = params.mirror1.mass;
  const double m2 = params.mirror2.mass;
  const double o1 = params.mirror1.omega_m;
  const double o2 = params.mirror2.omega_m;
  const double g1 = params.mirror1.gamma;
  const double g2 = params.mirror2.gamma;

  CollectiveParams c;
  c.total_mass = m1 + m2;
  c.reduced_mass = m1 * m2 / c.total_mass;
  c.omega_r = std::sqrt((m2 * o1 * o1 + m1 * o2 * o2) / c.total_mass);
  c.omega_cm = std::sqrt((m1 * o1 * o1 + m2 * o2 * o2) / c.total_mass);
  c.gamma_r = (m2 * g1 + m1 * g2) / c.total_mass;
  c.gamma_cm = (m1 * g1 + m2 * g2) / c.total_mass;
  return c;
}

DriveAmplitudes drive_amplitudes(const SystemParams& params, double delta) {
  const double kappa = params.cavity.kappa;
  const double omega_c = params.drive.omega_c;
  const double omega_p = omega_c + delta;

  DriveAmplitudes a;
  a.eps_c = std::sqrt(2.0 * kappa * params.drive.power_coupling /
                      (constants::hbar * omega_c));
  a.eps_p = omega_p > 0.0
                ? std::sqrt(2.0 * kappa * params.drive.power_probe /
                            (constants::hbar * omega_p))
                : 0.0;
  return a;
}

void finalize_derived(SystemParams& params, std::optional<double> wavelength) {
  if (wavelength) {
    if (*wavelength <= 0.0) throw InvalidParams("wavelength must be positive");
    params.drive.omega_c =
        2.0 * constants::pi * constants::c_light / *wavelength;
  }
  if (params.g_m <= 0.0) {
    if (params.drive.omega_c <= 0.0 || params.cavity.length <= 0.0) {
      throw InvalidParams("cannot derive g_m: omega_c and length required");
    }
    params.g_m = params.drive.omega_c / params.cavity.length;
  }
  if (params.cavity.omega0 <= 0.0) {
    // Nominal rest resonance for reporting; the operating point is set
    // by delta0, which already folds in the static radiation-pressure
    // shift.
    params.cavity.omega0 =
        params.drive.omega_c + params.drive.delta0_target.value_or(0.0);
  }
}

}  // namespace omitsim
