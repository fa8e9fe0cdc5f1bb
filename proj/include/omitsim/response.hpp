// Copyright 2026 The omitsim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>

#include "omitsim/model.hpp"
#include "omitsim/steady_state.hpp"

namespace omitsim {

using Complex = std::complex<double>;

/// Coefficients of the linearized probe-response system at one probe
/// offset delta = omega_p - omega_c.
struct ResponseCoefficients {
  Complex theta_coef;   // -(kappa + i Delta_1)
  Complex gamma_coef;   // 2 G e^{i theta} - 2 i eta a_s^2
  Complex lambda_coef;  // mu (Omega_1^2 - Omega_2^2 + i delta (gamma_2 - gamma_1))
  Complex chi_r;        // delta^2 - Omega_r^2 + i delta gamma_r
  Complex chi_cm;       // delta^2 - Omega_cm^2 + i delta gamma_cm
  double delta = 0.0;
};

ResponseCoefficients response_coefficients(const SystemParams& params,
                                           const SteadyState& state,
                                           double delta);

/// First-order sideband amplitudes and derived outputs at one offset.
/// The output-field normalization is eps_t = 2 kappa A_- / eps_p, so an
/// empty cavity probed on resonance gives eps_t = 2 (not 1).
struct ProbeResponse {
  Complex a_minus;      // upper sideband, oscillates at omega_p
  Complex a_plus;       // lower sideband, oscillates at 2 omega_c - omega_p
  Complex q_amp;        // relative-motion amplitude, m
  Complex q_cm_amp;     // center-of-mass amplitude, m
  Complex eps_t;        // 2 kappa A_- / eps_p
  double sideband_mag;  // 2 kappa |A_+| / eps_p
  Complex q_norm;       // g_m a_s q / eps_p
  Complex q_cm_norm;    // g_m a_s Q / eps_p
};

/// Direct solve of the 4x4 linear system in (A_-, A_+^*, q, Q).
/// The system is equilibrated before factorization; SingularSystem is
/// raised when the equilibrated condition number exceeds 1e12.
ProbeResponse solve_probe_response(const SystemParams& params,
                                   const SteadyState& state, double delta);

/// Closed-form output field
///   eps_t = (2 kappa / d) {kappa - i (Delta_1 + delta) - i f},
///   f = hbar g_m^2 a_s^2 / chi,  chi = mu chi_r - Lambda^2 / (M chi_cm),
///   d = (kappa - i delta)^2 + Delta_1^2 - |Gamma|^2 + 2 (Delta_1 + Im Gamma) f.
/// Algebraically identical to the direct solve; PoleEncountered when chi
/// or d vanishes within tolerance.
Complex output_field_closed_form(const SystemParams& params,
                                 const SteadyState& state, double delta);

/// Rotating-wave form 2 kappa / (kappa + i (Delta_0 - delta)
/// + i hbar g_m^2 a_s^2 / chi). Valid for the bare resolved-sideband
/// cavity; the caller decides applicability.
Complex output_field_rwa(const SystemParams& params, const SteadyState& state,
                         double delta);

/// Equal-frequency reduction around line center, x = delta - omega_m:
///   eps_t ~ 2 kappa / (kappa - i x + beta / (gamma_m/2 - i x)),
///   beta = hbar g_m^2 a_s^2 / (2 mu omega_m).
Complex response_equal_freq_approx(const SystemParams& params,
                                   const SteadyState& state, double x);

/// Cubic-denominator reduction for unequal mechanical frequencies
/// (equal dampings), x = delta - omega_m, omega_m = (Omega_1+Omega_2)/2:
///   eps_t ~ 2 kappa / (kappa - i x
///           + 2 i beta / (d1 x + b1 - (Lambda^2/(mu M)) / (d2 x + b2))),
///   beta = hbar g_m^2 a_s^2 / (2 mu).
Complex response_omia_approx(const SystemParams& params,
                             const SteadyState& state, double x);

}  // namespace omitsim
