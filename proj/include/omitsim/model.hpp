// Copyright 2026 The omitsim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

namespace omitsim {

namespace constants {
/// Reduced Planck constant, J s (CODATA 2018).
inline constexpr double hbar = 1.054571817e-34;
/// Speed of light in vacuum, m/s (exact).
inline constexpr double c_light = 2.99792458e8;
inline constexpr double pi = 3.141592653589793238462643383279502884;
}  // namespace constants

/// Optical cavity: resonance, amplitude decay rate, rest length.
/// All frequencies in this library are angular (rad/s); all other
/// quantities are SI.
struct CavityParams {
  double omega0 = 0.0;  // optical resonance, rad/s
  double kappa = 0.0;   // amplitude decay rate, rad/s
  double length = 0.0;  // m
};

/// One movable end mirror, modeled as a damped harmonic oscillator.
struct MirrorParams {
  double mass = 0.0;     // kg
  double omega_m = 0.0;  // mechanical frequency, rad/s
  double gamma = 0.0;    // energy decay rate, rad/s
};

/// Coupling (control) and probe drive fields.
struct DriveParams {
  double power_coupling = 0.0;  // W
  double power_probe = 0.0;     // W
  double omega_c = 0.0;         // coupling laser frequency, rad/s
  /// Operating-point detuning Delta_0 (rad/s). The cavity rest
  /// frequency is never reconstructed from it; Delta_0 is the knob.
  std::optional<double> delta0_target;
};

/// Intracavity crystal: parametric gain and Kerr anharmonicity.
struct NonlinearParams {
  double gain_opa = 0.0;  // G, rad/s
  double theta = 0.0;     // pump phase, rad, in [0, 2 pi)
  double eta = 0.0;       // Kerr anharmonicity, rad/s
};

/// Full physical parameterization of the two-mirror Kerr/OPA cavity.
struct SystemParams {
  CavityParams cavity;
  MirrorParams mirror1;
  MirrorParams mirror2;
  DriveParams drive;
  NonlinearParams nonlinear;
  /// Optomechanical coupling, rad/(s m). Defaults to omega_c / length.
  double g_m = 0.0;

  /// kappa / min(Omega_1, Omega_2); << 1 in the resolved-sideband regime.
  double sideband_resolution() const;

  /// Throws InvalidParams on hard violations; returns soft warnings
  /// (e.g. probe power not small against the coupling power).
  std::vector<std::string> validate() const;
};

/// Collective mechanical coordinates of the two mirrors.
struct CollectiveParams {
  double total_mass = 0.0;    // M = m1 + m2
  double reduced_mass = 0.0;  // mu = m1 m2 / M
  double omega_r = 0.0;       // relative-motion frequency, rad/s
  double omega_cm = 0.0;      // center-of-mass frequency, rad/s
  double gamma_r = 0.0;       // relative-motion damping, rad/s
  double gamma_cm = 0.0;      // center-of-mass damping, rad/s
};

/// Relative / center-of-mass transformation:
///   Omega_r^2  = (m2 Omega_1^2 + m1 Omega_2^2) / M
///   Omega_cm^2 = (m1 Omega_1^2 + m2 Omega_2^2) / M
///   gamma_r    = (m2 gamma_1 + m1 gamma_2) / M
///   gamma_cm   = (m1 gamma_1 + m2 gamma_2) / M
CollectiveParams collective_coords(const SystemParams& params);

struct DriveAmplitudes {
  double eps_c = 0.0;  // coupling field amplitude, s^-1/2 photon units
  double eps_p = 0.0;  // probe field amplitude at omega_p = omega_c + delta
};

/// eps = sqrt(2 kappa P / (hbar omega)); the probe is evaluated at
/// omega_p = omega_c + delta.
DriveAmplitudes drive_amplitudes(const SystemParams& params, double delta = 0.0);

/// Fills omega_c from a vacuum wavelength and defaults g_m to
/// omega_c / length when unset (g_m <= 0).
void finalize_derived(SystemParams& params,
                      std::optional<double> wavelength = std::nullopt);

}  // namespace omitsim
