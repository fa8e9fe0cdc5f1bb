// Copyright 2026 The omitsim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "omitsim/model.hpp"

namespace omitsim {

/// Classical operating point of the cavity at a fixed Delta_0.
struct SteadyState {
  double amplitude = 0.0;  // a_s >= 0, real-positive convention
  double intensity = 0.0;  // I = a_s^2 (photon number)
  double q1_eq = 0.0;      // mirror-1 equilibrium displacement, m (<= 0)
  double q2_eq = 0.0;      // mirror-2 equilibrium displacement, m (>= 0)
  double delta0 = 0.0;     // operating-point detuning, rad/s
  double delta_eff = 0.0;  // delta0 + 2 eta I
  double delta1 = 0.0;     // delta0 + 4 eta I
  int n_real_roots = 0;    // admissible roots of the intensity polynomial
  std::optional<bool> stable;
};

/// Coefficients (ascending powers of I) of the steady-state intensity
/// equation I [(Delta_0 + 2 eta I - 2 G sin th)^2 + (kappa - 2 G cos th)^2]
/// = eps_c^2, written as a polynomial with zero on the right-hand side.
/// Cubic for eta > 0, linear for eta = 0.
std::vector<double> intensity_polynomial(const SystemParams& params,
                                         double delta0);

/// All roots of a real-coefficient polynomial (ascending coefficients),
/// via companion-matrix eigenvalues plus one Newton polish step.
std::vector<std::complex<double>> poly_roots(
    const std::vector<double>& coeffs);

/// All admissible (real, I >= 0) steady states, sorted by intensity.
/// Throws NoPhysicalRoot if none exists, ToleranceNotMet if polishing
/// cannot push the fixed-point residual below tolerance.
std::vector<SteadyState> solve_steady_state(const SystemParams& params,
                                            double delta0);

/// Picks the branch continuously connected to low power (smallest I).
/// Appends a note to `warnings` when several branches coexist.
SteadyState select_operating_state(const std::vector<SteadyState>& states,
                                   std::vector<std::string>* warnings = nullptr);

/// True iff all eigenvalues of the 6x6 drift matrix of the linearized
/// fluctuation dynamics (field quadratures + both mirrors) have negative
/// real parts.
bool linear_stability(const SystemParams& params, const SteadyState& state);

/// The drift matrix itself, ordered (x, y, q1, p1, q2, p2) with
/// x = (da + da*)/sqrt(2), y = (da - da*)/(i sqrt(2)).
/// Exposed so independent stability oracles can consume it.
std::vector<double> drift_matrix(const SystemParams& params,
                                 const SteadyState& state);  // row-major 6x6

/// Fixed-point residual |I ((Delta0+2 eta I-2G sin th)^2+(kappa-2G cos th)^2)
/// - eps_c^2| of a candidate intensity, in absolute units.
double steady_state_residual(const SystemParams& params, double delta0,
                             double intensity);

}  // namespace omitsim
