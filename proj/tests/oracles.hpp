// Copyright 2026 The omitsim Authors
// SPDX-License-Identifier: Apache-2.0
//
// Test-only oracles, independent of the library's solver paths:
//  - dense-scan + bisection root finder for the steady-state intensity
//  - Routh-Hurwitz stability test on the characteristic polynomial
//  - deterministic random parameter draws in the physically valid region

#pragma once

#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "omitsim/model.hpp"

namespace omitsim::test {

// Residual of the steady-state fixed point as a plain function of I.
inline double fixed_point_residual(const SystemParams& p, double delta0,
                                   double intensity) {
  const double g = p.nonlinear.gain_opa;
  const double s = delta0 + 2.0 * p.nonlinear.eta * intensity -
                   2.0 * g * std::sin(p.nonlinear.theta);
  const double k = p.cavity.kappa - 2.0 * g * std::cos(p.nonlinear.theta);
  const double eps_c = drive_amplitudes(p).eps_c;
  return intensity * (s * s + k * k) - eps_c * eps_c;
}

// All roots of the fixed-point residual on [0, i_max], located by a
// dense sign-change scan followed by bisection.
inline std::vector<double> scan_roots(const SystemParams& p, double delta0,
                                      double i_max, int n_grid = 100000) {
  std::vector<double> roots;
  double prev_i = 0.0;
  double prev_r = fixed_point_residual(p, delta0, 0.0);
  if (prev_r == 0.0) roots.push_back(0.0);
  for (int k = 1; k <= n_grid; ++k) {
    const double i = i_max * double(k) / double(n_grid);
    const double r = fixed_point_residual(p, delta0, i);
    if (r == 0.0) {
      roots.push_back(i);
    } else if ((prev_r < 0.0) != (r < 0.0)) {
      double lo = prev_i, hi = i, rlo = prev_r;
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double rm = fixed_point_residual(p, delta0, mid);
        if (rm == 0.0) {
          lo = hi = mid;
          break;
        }
        if ((rlo < 0.0) != (rm < 0.0)) {
          hi = mid;
        } else {
          lo = mid;
          rlo = rm;
        }
      }
      roots.push_back(0.5 * (lo + hi));
    }
    prev_i = i;
    prev_r = r;
  }
  return roots;
}

// Upper bound for the scan: the bracket in the fixed point is at least
// K^2, so all roots lie below eps_c^2 / K^2 (valid-region draws keep K
// bounded away from zero).
inline double scan_upper_bound(const SystemParams& p) {
  const double g = p.nonlinear.gain_opa;
  const double k = p.cavity.kappa - 2.0 * g * std::cos(p.nonlinear.theta);
  const double eps_c = drive_amplitudes(p).eps_c;
  return 10.0 * eps_c * eps_c / (k * k);
}

// Characteristic polynomial of a real matrix by the Faddeev-LeVerrier
// recurrence; coefficients descending (monic leading 1).
inline std::vector<double> characteristic_polynomial(
    const Eigen::MatrixXd& a) {
  const int n = int(a.rows());
  std::vector<double> c(n + 1, 0.0);
  c[0] = 1.0;
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k <= n; ++k) {
    m = a * m + c[k - 1] * Eigen::MatrixXd::Identity(n, n);
    c[k] = -(a * m).trace() / double(k);
  }
  return c;
}

// Routh-Hurwitz: true iff every root of the (descending, monic)
// polynomial has negative real part. Assumes the generic case with
// nonvanishing pivot rows, which holds for the damped systems tested.
inline bool routh_hurwitz_stable(std::vector<double> c) {
  const std::size_t n = c.size() - 1;
  if (n == 0) return true;
  // Normalize sign so the leading coefficient is positive.
  if (c[0] < 0.0)
    for (double& v : c) v = -v;
  // Necessary condition: all coefficients positive.
  for (double v : c) {
    if (!(v > 0.0)) return false;
  }
  // Routh array.
  const std::size_t cols = (n + 2) / 2;
  std::vector<std::vector<double>> rows(n + 1,
                                        std::vector<double>(cols + 1, 0.0));
  for (std::size_t j = 0; j < cols; ++j) {
    if (2 * j < c.size()) rows[0][j] = c[2 * j];
    if (2 * j + 1 < c.size()) rows[1][j] = c[2 * j + 1];
  }
  for (std::size_t i = 2; i <= n; ++i) {
    const double pivot = rows[i - 1][0];
    if (pivot == 0.0) return false;  // marginal / needs epsilon method
    for (std::size_t j = 0; j + 1 <= cols; ++j) {
      rows[i][j] = (pivot * rows[i - 2][j + 1] -
                    rows[i - 2][0] * rows[i - 1][j + 1]) /
                   pivot;
    }
  }
  for (std::size_t i = 0; i <= n; ++i) {
    if (!(rows[i][0] > 0.0)) return false;
  }
  return true;
}

// Deterministic draw of a physically valid parameter set. K is kept
// away from zero (G <= 0.4 kappa) so the scan upper bound holds, and
// mirror frequencies stay distinct enough to avoid near-degenerate
// susceptibilities.
inline SystemParams random_params(std::mt19937_64& rng) {
  auto uniform = [&rng](double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  };
  const double two_pi = 2.0 * constants::pi;
  SystemParams p;
  const double omega1 = two_pi * 1e7;
  p.mirror1.omega_m = omega1;
  p.mirror2.omega_m = omega1 * uniform(0.95, 1.08);
  p.mirror1.mass = uniform(5e-12, 30e-12);
  p.mirror2.mass = uniform(5e-12, 30e-12);
  p.mirror1.gamma = two_pi * uniform(50.0, 500.0);
  p.mirror2.gamma = two_pi * uniform(50.0, 500.0);
  p.cavity.kappa = omega1 * uniform(0.005, 0.04);
  p.cavity.length = uniform(1e-3, 10e-3);
  p.drive.power_coupling = uniform(1e-3, 15e-3);
  p.drive.power_probe = 1e-4 * p.drive.power_coupling;
  p.nonlinear.gain_opa = uniform(0.0, 0.4) * p.cavity.kappa;
  p.nonlinear.theta = uniform(0.0, two_pi);
  p.nonlinear.eta = uniform(0.0, 0.06);
  finalize_derived(p, uniform(500e-9, 1600e-9));
  p.g_m *= uniform(0.3, 1.5);
  return p;
}

inline double random_delta0(std::mt19937_64& rng, const SystemParams& p) {
  const double mean = 0.5 * (p.mirror1.omega_m + p.mirror2.omega_m);
  return mean * std::uniform_real_distribution<double>(0.7, 1.3)(rng);
}

}  // namespace omitsim::test
