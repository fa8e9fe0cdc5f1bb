// Copyright 2026 The omitsim Authors
// SPDX-License-Identifier: Apache-2.0

#include "omitsim/steady_state.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "omitsim/errors.hpp"

namespace omitsim {

namespace {

constexpr double kResidualRelTol = 1e-10;

struct FixedPointTerms {
  double s;      // Delta_0 - 2 G sin(theta)
  double k;      // kappa - 2 G cos(theta)
  double eps_c;  // coupling amplitude
};

FixedPointTerms fixed_point_terms(const SystemParams& params, double delta0) {
  const double g = params.nonlinear.gain_opa;
  const double th = params.nonlinear.theta;
  FixedPointTerms t;
  t.s = delta0 - 2.0 * g * std::sin(th);
  t.k = params.cavity.kappa - 2.0 * g * std::cos(th);
  t.eps_c = drive_amplitudes(params).eps_c;
  return t;
}

// One Newton step on p(x) evaluated by Horner; no-op when p'(x) ~ 0.
std::complex<double> polish_root(const std::vector<double>& coeffs,
                                 std::complex<double> x) {
  std::complex<double> p = 0.0, dp = 0.0;
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    dp = dp * x + p;
    p = p * x + coeffs[i];
  }
  if (std::abs(dp) == 0.0) return x;
  return x - p / dp;
}

}  // namespace

std::vector<double> intensity_polynomial(const SystemParams& params,
                                         double delta0) {
  const auto t = fixed_point_terms(params, delta0);
  const double eta = params.nonlinear.eta;
  // I [(S + 2 eta I)^2 + K^2] - eps_c^2 = 0, ascending powers of I.
  if (eta == 0.0) {
    return {-t.eps_c * t.eps_c, t.s * t.s + t.k * t.k};
  }
  return {-t.eps_c * t.eps_c, t.s * t.s + t.k * t.k, 4.0 * eta * t.s,
          4.0 * eta * eta};
}

std::vector<std::complex<double>> poly_roots(const std::vector<double>& coeffs) {
  // Strip trailing (highest-order) coefficients that are negligible
  // against the largest one, so near-degenerate leading terms do not
  // poison the companion matrix.
  double scale = 0.0;
  for (double c : coeffs) scale = std::max(scale, std::abs(c));
  if (scale == 0.0) return {};
  std::size_t degree = coeffs.size();
  while (degree > 1 && std::abs(coeffs[degree - 1]) < 1e-14 * scale) --degree;
  --degree;  // now the polynomial degree

  if (degree == 0) return {};
  if (degree == 1) {
    return {std::complex<double>(-coeffs[0] / coeffs[1], 0.0)};
  }

  const double lead = coeffs[degree];
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(degree, degree);
  for (std::size_t i = 0; i < degree; ++i) {
    companion(i, degree - 1) = -coeffs[i] / lead;
    if (i + 1 < degree) companion(i + 1, i) = 1.0;
  }

  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  if (solver.info() != Eigen::Success) {
    throw EigenSolverFailure("companion-matrix eigenvalue solve failed");
  }

  std::vector<std::complex<double>> roots;
  roots.reserve(degree);
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    roots.push_back(polish_root(coeffs, solver.eigenvalues()[i]));
  }
  std::sort(roots.begin(), roots.end(), [](const auto& a, const auto& b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return roots;
}

double steady_state_residual(const SystemParams& params, double delta0,
                             double intensity) {
  const auto t = fixed_point_terms(params, delta0);
  const double eta = params.nonlinear.eta;
  const double s_eff = t.s + 2.0 * eta * intensity;
  return std::abs(intensity * (s_eff * s_eff + t.k * t.k) -
                  t.eps_c * t.eps_c);
}

std::vector<SteadyState> solve_steady_state(const SystemParams& params,
                                            double delta0) {
  const auto t = fixed_point_terms(params, delta0);
  const double eta = params.nonlinear.eta;

  std::vector<double> intensities;
  if (t.eps_c == 0.0) {
    intensities.push_back(0.0);
  } else {
    // Nondimensionalize to u = I / s0 with s0 the linear-response scale;
    // keeps the companion matrix well conditioned across the 20+ orders
    // of magnitude the raw coefficients span.
    const double s0 = t.eps_c * t.eps_c / (t.s * t.s + t.k * t.k);
    std::vector<double> scaled;
    if (eta == 0.0) {
      scaled = {-1.0, 1.0};
    } else {
      const double a = 2.0 * eta * s0;  // Kerr shift at the linear scale
      const double d2 = t.s * t.s + t.k * t.k;
      scaled = {-1.0, 1.0, 2.0 * a * t.s / d2, a * a / d2};
    }
    for (const auto& root : poly_roots(scaled)) {
      if (std::abs(root.imag()) >= 1e-8 * std::abs(root.real()) + 1e-20)
        continue;
      const double intensity = root.real() * s0;
      if (intensity < 0.0) continue;
      intensities.push_back(intensity);
    }
    std::sort(intensities.begin(), intensities.end());
  }

  if (intensities.empty()) {
    std::ostringstream os;
    os << "no admissible steady-state intensity at delta0 = " << delta0;
    throw NoPhysicalRoot(os.str());
  }

  const double eps2 = t.eps_c * t.eps_c;
  std::vector<SteadyState> states;
  states.reserve(intensities.size());
  for (double intensity : intensities) {
    if (eps2 > 0.0 && steady_state_residual(params, delta0, intensity) >
                          kResidualRelTol * eps2) {
      std::ostringstream os;
      os << "steady-state residual above tolerance at I = " << intensity;
      throw ToleranceNotMet(os.str());
    }
    SteadyState st;
    st.intensity = intensity;
    st.amplitude = std::sqrt(intensity);
    st.delta0 = delta0;
    st.delta_eff = delta0 + 2.0 * params.nonlinear.eta * intensity;
    st.delta1 = delta0 + 4.0 * params.nonlinear.eta * intensity;
    const double hbar_gm = constants::hbar * params.g_m;
    st.q1_eq = -hbar_gm * intensity /
               (params.mirror1.mass * params.mirror1.omega_m *
                params.mirror1.omega_m);
    st.q2_eq = hbar_gm * intensity /
               (params.mirror2.mass * params.mirror2.omega_m *
                params.mirror2.omega_m);
    st.n_real_roots = static_cast<int>(intensities.size());
    states.push_back(st);
  }
  return states;
}

SteadyState select_operating_state(const std::vector<SteadyState>& states,
                                   std::vector<std::string>* warnings) {
  if (states.empty()) throw NoPhysicalRoot("empty steady-state list");
  // solve_steady_state sorts by intensity; the smallest-I state is the
  // branch continuously connected to low drive power.
  const SteadyState& chosen = states.front();
  if (states.size() > 1 && warnings != nullptr) {
    std::ostringstream os;
    os << "multistable operating point (" << states.size()
       << " branches); selected the low-power branch with I = "
       << chosen.intensity;
    warnings->push_back(os.str());
  }
  return chosen;
}

std::vector<double> drift_matrix(const SystemParams& params,
                                 const SteadyState& state) {
  const double kappa = params.cavity.kappa;
  const double g = params.nonlinear.gain_opa;
  const double th = params.nonlinear.theta;
  const std::complex<double> gamma_coef =
      2.0 * g * std::exp(std::complex<double>(0.0, th)) -
      std::complex<double>(0.0, 2.0 * params.nonlinear.eta * state.intensity);
  const double gr = gamma_coef.real();
  const double gi = gamma_coef.imag();
  const double d1 = state.delta1;
  const double gm_as = params.g_m * state.amplitude;
  const double sq2 = std::sqrt(2.0);

  // State order (x, y, q1, p1, q2, p2); x, y are field quadratures.
  std::vector<double> a(36, 0.0);
  auto at = [&a](int r, int c) -> double& { return a[6 * r + c]; };
  at(0, 0) = gr - kappa;
  at(0, 1) = d1 + gi;
  at(1, 0) = gi - d1;
  at(1, 1) = -(kappa + gr);
  at(1, 2) = -sq2 * gm_as;
  at(1, 4) = sq2 * gm_as;
  at(2, 3) = 1.0 / params.mirror1.mass;
  at(3, 0) = -sq2 * constants::hbar * gm_as;
  at(3, 2) = -params.mirror1.mass * params.mirror1.omega_m *
             params.mirror1.omega_m;
  at(3, 3) = -params.mirror1.gamma;
  at(4, 5) = 1.0 / params.mirror2.mass;
  at(5, 0) = sq2 * constants::hbar * gm_as;
  at(5, 4) = -params.mirror2.mass * params.mirror2.omega_m *
             params.mirror2.omega_m;
  at(5, 5) = -params.mirror2.gamma;
  return a;
}

bool linear_stability(const SystemParams& params, const SteadyState& state) {
  const auto a = drift_matrix(params, state);
  Eigen::Matrix<double, 6, 6> m;
  for (int r = 0; r < 6; ++r)
    for (int c = 0; c < 6; ++c) m(r, c) = a[6 * r + c];

  Eigen::EigenSolver<Eigen::Matrix<double, 6, 6>> solver(m, false);
  if (solver.info() != Eigen::Success) {
    throw EigenSolverFailure("drift-matrix eigenvalue solve failed");
  }
  double max_real = -std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    max_real = std::max(max_real, solver.eigenvalues()[i].real());
  }
  return max_real < 0.0;
}

}  // namespace omitsim
