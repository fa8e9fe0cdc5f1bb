// Copyright 2026 The omitsim Authors
// SPDX-License-Identifier: Apache-2.0

#include "omitsim/response.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "omitsim/errors.hpp"

namespace omitsim {

namespace {

constexpr double kConditionLimit = 1e12;
constexpr double kPoleRelTol = 1e-13;

using Matrix4c = Eigen::Matrix<Complex, 4, 4>;
using Vector4c = Eigen::Matrix<Complex, 4, 1>;

// The raw system mixes photon-amplitude rows (~kappa, omega scales) with
// mechanical rows (~hbar g a_s, mu chi scales) and is formally ill
// conditioned by unit choice alone. One row-max / column-max
// equilibration pass brings the condition number down to O(1) away from
// genuine parameter coincidences; the singularity test runs on the
// equilibrated matrix.
struct EquilibratedSystem {
  Matrix4c m;
  std::array<double, 4> row_scale;
  std::array<double, 4> col_scale;
};

EquilibratedSystem equilibrate(Matrix4c m) {
  EquilibratedSystem eq;
  for (int r = 0; r < 4; ++r) {
    double mx = 0.0;
    for (int c = 0; c < 4; ++c) mx = std::max(mx, std::abs(m(r, c)));
    eq.row_scale[r] = mx > 0.0 ? 1.0 / mx : 1.0;
    for (int c = 0; c < 4; ++c) m(r, c) *= eq.row_scale[r];
  }
  for (int c = 0; c < 4; ++c) {
    double mx = 0.0;
    for (int r = 0; r < 4; ++r) mx = std::max(mx, std::abs(m(r, c)));
    eq.col_scale[c] = mx > 0.0 ? 1.0 / mx : 1.0;
    for (int r = 0; r < 4; ++r) m(r, c) *= eq.col_scale[c];
  }
  eq.m = m;
  return eq;
}

}  // namespace

ResponseCoefficients response_coefficients(const SystemParams& params,
                                           const SteadyState& state,
                                           double delta) {
  const auto coll = collective_coords(params);
  const double g = params.nonlinear.gain_opa;
  const double o1 = params.mirror1.omega_m;
  const double o2 = params.mirror2.omega_m;

  ResponseCoefficients c;
  c.delta = delta;
  c.theta_coef = Complex(-params.cavity.kappa, -state.delta1);
  c.gamma_coef =
      2.0 * g * std::exp(Complex(0.0, params.nonlinear.theta)) -
      Complex(0.0, 2.0 * params.nonlinear.eta * state.intensity);
  c.lambda_coef =
      coll.reduced_mass *
      Complex(o1 * o1 - o2 * o2,
              delta * (params.mirror2.gamma - params.mirror1.gamma));
  c.chi_r = Complex(delta * delta - coll.omega_r * coll.omega_r,
                    delta * coll.gamma_r);
  c.chi_cm = Complex(delta * delta - coll.omega_cm * coll.omega_cm,
                     delta * coll.gamma_cm);
  return c;
}

ProbeResponse solve_probe_response(const SystemParams& params,
                                   const SteadyState& state, double delta) {
  const auto c = response_coefficients(params, state, delta);
  const auto coll = collective_coords(params);
  const double gm_as = params.g_m * state.amplitude;
  const Complex i_unit(0.0, 1.0);
  const Complex i_delta(0.0, delta);

  // Unknowns v = (A_-, A_+^*, q, Q):
  //   (Theta + i d) A_-  + Gamma A_+^*     + i g a_s q            = -eps_p
  //   Gamma^* A_-        + (Theta^* + i d) A_+^* - i g a_s q      = 0
  //   hbar g a_s (A_- + A_+^*) + mu chi_r q + Lambda Q            = 0
  //   Lambda q + M chi_cm Q                                       = 0
  Matrix4c m;
  m << c.theta_coef + i_delta, c.gamma_coef, i_unit * gm_as, Complex(0.0),
      std::conj(c.gamma_coef), std::conj(c.theta_coef) + i_delta,
      -i_unit * gm_as, Complex(0.0),
      Complex(constants::hbar * gm_as), Complex(constants::hbar * gm_as),
      coll.reduced_mass * c.chi_r, c.lambda_coef,
      Complex(0.0), Complex(0.0), c.lambda_coef,
      coll.total_mass * c.chi_cm;

  const auto eq = equilibrate(m);

  Eigen::JacobiSVD<Matrix4c> svd(eq.m);
  const double smax = svd.singularValues()(0);
  const double smin = svd.singularValues()(3);
  if (!(smin > 0.0) || smax / smin > kConditionLimit) {
    std::ostringstream os;
    os << "probe-response system singular at delta = " << delta
       << " (equilibrated condition number "
       << (smin > 0.0 ? smax / smin : std::numeric_limits<double>::infinity())
       << ")";
    throw SingularSystem(os.str());
  }

  const double eps_p = drive_amplitudes(params, delta).eps_p;
  // The normalized outputs are independent of eps_p; solve with a unit
  // probe and scale the raw amplitudes afterwards so that
  // power_probe = 0 still yields the normalized response.
  Vector4c rhs;
  rhs << Complex(-1.0), Complex(0.0), Complex(0.0), Complex(0.0);
  for (int r = 0; r < 4; ++r) rhs(r) *= eq.row_scale[r];

  Vector4c v = eq.m.partialPivLu().solve(rhs);
  for (int r = 0; r < 4; ++r) v(r) *= eq.col_scale[r];

  const double kappa = params.cavity.kappa;
  ProbeResponse out;
  out.eps_t = 2.0 * kappa * v(0);
  out.sideband_mag = 2.0 * kappa * std::abs(v(1));
  out.q_norm = gm_as * v(2);
  out.q_cm_norm = gm_as * v(3);
  out.a_minus = v(0) * eps_p;
  out.a_plus = std::conj(v(1)) * eps_p;
  out.q_amp = v(2) * eps_p;
  out.q_cm_amp = v(3) * eps_p;
  return out;
}

Complex output_field_closed_form(const SystemParams& params,
                                 const SteadyState& state, double delta) {
  const auto c = response_coefficients(params, state, delta);
  const auto coll = collective_coords(params);
  const double kappa = params.cavity.kappa;

  const Complex mu_chi_r = coll.reduced_mass * c.chi_r;
  const Complex cm_term =
      c.lambda_coef * c.lambda_coef / (coll.total_mass * c.chi_cm);
  const Complex chi = mu_chi_r - cm_term;
  const double chi_scale =
      std::max(std::abs(mu_chi_r), std::abs(cm_term));
  if (std::abs(c.chi_cm) == 0.0 ||
      (chi_scale > 0.0 && std::abs(chi) < kPoleRelTol * chi_scale)) {
    std::ostringstream os;
    os << "effective mechanical susceptibility pole at delta = " << delta;
    throw PoleEncountered(os.str());
  }

  const Complex f = constants::hbar * params.g_m * params.g_m *
                    state.intensity / chi;
  const Complex km_id(kappa, -delta);
  const Complex d = km_id * km_id + state.delta1 * state.delta1 -
                    std::norm(c.gamma_coef) +
                    2.0 * (state.delta1 + c.gamma_coef.imag()) * f;
  const double d_scale = std::abs(km_id * km_id) +
                         state.delta1 * state.delta1 +
                         std::norm(c.gamma_coef) +
                         std::abs(2.0 * (state.delta1 + c.gamma_coef.imag()) * f);
  if (std::abs(d) < kPoleRelTol * d_scale) {
    std::ostringstream os;
    os << "output-field denominator pole at delta = " << delta;
    throw PoleEncountered(os.str());
  }

  const Complex numer =
      kappa - Complex(0.0, 1.0) * (state.delta1 + delta) -
      Complex(0.0, 1.0) * f;
  return 2.0 * kappa * numer / d;
}

Complex output_field_rwa(const SystemParams& params, const SteadyState& state,
                         double delta) {
  const auto c = response_coefficients(params, state, delta);
  const auto coll = collective_coords(params);
  const double kappa = params.cavity.kappa;
  const Complex chi = coll.reduced_mass * c.chi_r -
                      c.lambda_coef * c.lambda_coef /
                          (coll.total_mass * c.chi_cm);
  const Complex f =
      constants::hbar * params.g_m * params.g_m * state.intensity / chi;
  return 2.0 * kappa /
         (kappa + Complex(0.0, state.delta0 - delta) + Complex(0.0, 1.0) * f);
}

Complex response_equal_freq_approx(const SystemParams& params,
                                   const SteadyState& state, double x) {
  const auto coll = collective_coords(params);
  const double kappa = params.cavity.kappa;
  const double omega_m =
      0.5 * (params.mirror1.omega_m + params.mirror2.omega_m);
  const double gamma_m = coll.gamma_r;
  const double beta = constants::hbar * params.g_m * params.g_m *
                      state.intensity /
                      (2.0 * coll.reduced_mass * omega_m);
  return 2.0 * kappa /
         (Complex(kappa, -x) + beta / Complex(0.5 * gamma_m, -x));
}

Complex response_omia_approx(const SystemParams& params,
                             const SteadyState& state, double x) {
  const auto coll = collective_coords(params);
  const double kappa = params.cavity.kappa;
  const double omega_m =
      0.5 * (params.mirror1.omega_m + params.mirror2.omega_m);
  const double gamma_m = coll.gamma_r;
  const double o1 = params.mirror1.omega_m;
  const double o2 = params.mirror2.omega_m;

  const double beta = constants::hbar * params.g_m * params.g_m *
                      state.intensity / (2.0 * coll.reduced_mass);
  const double lambda = coll.reduced_mass * (o1 * o1 - o2 * o2);

  const double d1 = omega_m + coll.omega_r;
  const Complex b1(omega_m * omega_m - coll.omega_r * coll.omega_r,
                   omega_m * gamma_m);
  const double d2 = omega_m + coll.omega_cm;
  const Complex b2(omega_m * omega_m - coll.omega_cm * coll.omega_cm,
                   omega_m * gamma_m);

  const Complex inner = d1 * x + b1 -
                        (lambda * lambda /
                         (coll.reduced_mass * coll.total_mass)) /
                            (d2 * x + b2);
  return 2.0 * kappa /
         (Complex(kappa, -x) + Complex(0.0, 2.0 * beta) / inner);
}

}  // namespace omitsim
