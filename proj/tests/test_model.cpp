// Copyright 2026 The omitsim Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <random>

#include <doctest.h>

#include "omitsim/errors.hpp"
#include "omitsim/model.hpp"
#include "omitsim/presets.hpp"
#include "oracles.hpp"

using namespace omitsim;

namespace {
constexpr double kTwoPi = 2.0 * constants::pi;
}

TEST_CASE("collective coordinates, symmetric mirrors") {
  SystemParams p = params_set_a(1.0);
  const auto c = collective_coords(p);
  CHECK(c.total_mass == 2.0 * p.mirror1.mass);
  CHECK(c.reduced_mass == 0.5 * p.mirror1.mass);
  CHECK(c.omega_r == doctest::Approx(p.mirror1.omega_m).epsilon(1e-15));
  CHECK(c.omega_cm == doctest::Approx(p.mirror1.omega_m).epsilon(1e-15));
  CHECK(c.gamma_r == doctest::Approx(p.mirror1.gamma).epsilon(1e-15));
  CHECK(c.gamma_cm == doctest::Approx(p.mirror1.gamma).epsilon(1e-15));
}

TEST_CASE("collective coordinates, equal masses and unequal frequencies") {
  SystemParams p = params_set_a(1.3);
  const auto c = collective_coords(p);
  const double o1 = p.mirror1.omega_m;
  const double o2 = p.mirror2.omega_m;
  const double expected = std::sqrt(0.5 * (o1 * o1 + o2 * o2));
  CHECK(c.omega_r == doctest::Approx(expected).epsilon(1e-15));
  CHECK(c.omega_cm == doctest::Approx(expected).epsilon(1e-15));
}

TEST_CASE("collective coordinates, 12 ng mirrors with a 3% frequency offset") {
  SystemParams p = params_set_a(1.03);
  const auto c = collective_coords(p);
  const double omega1 = kTwoPi * 1e7;
  CHECK(c.reduced_mass == doctest::Approx(6e-12).epsilon(1e-15));
  const double expected = omega1 * std::sqrt((1.0 + 1.03 * 1.03) / 2.0);
  CHECK(c.omega_r == doctest::Approx(expected).epsilon(1e-14));
  CHECK(c.omega_cm == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("collective coordinates swap under one-sided mirror exchange") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    SystemParams p = test::random_params(rng);
    const auto c = collective_coords(p);

    SystemParams mass_swapped = p;
    std::swap(mass_swapped.mirror1.mass, mass_swapped.mirror2.mass);
    const auto cm = collective_coords(mass_swapped);
    CHECK(cm.omega_r == c.omega_cm);
    CHECK(cm.omega_cm == c.omega_r);
    CHECK(cm.gamma_r == c.gamma_cm);
    CHECK(cm.gamma_cm == c.gamma_r);

    SystemParams mode_swapped = p;
    std::swap(mode_swapped.mirror1.omega_m, mode_swapped.mirror2.omega_m);
    std::swap(mode_swapped.mirror1.gamma, mode_swapped.mirror2.gamma);
    const auto co = collective_coords(mode_swapped);
    CHECK(co.omega_r == c.omega_cm);
    CHECK(co.gamma_r == c.gamma_cm);

    // Full relabeling of the mirrors changes nothing.
    SystemParams relabeled = p;
    std::swap(relabeled.mirror1, relabeled.mirror2);
    const auto cr = collective_coords(relabeled);
    CHECK(cr.omega_r == c.omega_r);
    CHECK(cr.omega_cm == c.omega_cm);
    CHECK(cr.gamma_r == c.gamma_r);
    CHECK(cr.gamma_cm == c.gamma_cm);

    // mu <= min(m1, m2), with mu = M/4 exactly at equal masses.
    CHECK(c.reduced_mass <= std::min(p.mirror1.mass, p.mirror2.mass));
    SystemParams equal = p;
    equal.mirror2.mass = equal.mirror1.mass;
    const auto ce = collective_coords(equal);
    CHECK(ce.reduced_mass ==
          doctest::Approx(ce.total_mass / 4.0).epsilon(1e-15));
  }
}

TEST_CASE("collective coordinates are deterministic") {
  SystemParams p = params_set_a(1.042);
  const auto a = collective_coords(p);
  const auto b = collective_coords(p);
  CHECK(a.omega_r == b.omega_r);
  CHECK(a.omega_cm == b.omega_cm);
  CHECK(a.gamma_r == b.gamma_r);
  CHECK(a.gamma_cm == b.gamma_cm);
  CHECK(a.reduced_mass == b.reduced_mass);
}

TEST_CASE("drive amplitude vanishes without coupling power") {
  SystemParams p = params_set_a(1.0);
  p.drive.power_coupling = 0.0;
  CHECK(drive_amplitudes(p).eps_c == 0.0);
}

TEST_CASE("drive amplitude for 6 mW at 1064 nm") {
  // Frozen against an independent arbitrary-precision evaluation of
  // sqrt(2 kappa P_c / (hbar omega_c)).
  SystemParams p = params_set_a(1.0);
  const auto a = drive_amplitudes(p);
  CHECK(a.eps_c == doctest::Approx(2.8420257137422495e11).epsilon(1e-13));
}

TEST_CASE("drive amplitude follows the square-root power law") {
  SystemParams p = params_set_a(1.0);
  const double base = drive_amplitudes(p).eps_c;
  p.drive.power_coupling *= 2.0;
  CHECK(drive_amplitudes(p).eps_c ==
        doctest::Approx(std::sqrt(2.0) * base).epsilon(1e-15));
}

TEST_CASE("probe amplitude is evaluated at the shifted frequency") {
  SystemParams p = params_set_a(1.0);
  const double delta = 0.3 * p.mirror1.omega_m;
  const auto a = drive_amplitudes(p, delta);
  const double expected =
      std::sqrt(2.0 * p.cavity.kappa * p.drive.power_probe /
                (constants::hbar * (p.drive.omega_c + delta)));
  CHECK(a.eps_p == doctest::Approx(expected).epsilon(1e-15));
}

TEST_CASE("validation rejects unphysical parameters") {
  CHECK_THROWS_AS(
      [] {
        SystemParams p = params_set_a(1.0);
        p.mirror1.mass = -1.0;
        p.validate();
      }(),
      InvalidParams);
  CHECK_THROWS_AS(
      [] {
        SystemParams p = params_set_a(1.0);
        p.mirror2.gamma = 2.0 * p.mirror2.omega_m;  // overdamped
        p.validate();
      }(),
      InvalidParams);
  CHECK_THROWS_AS(
      [] {
        SystemParams p = params_set_a(1.0);
        p.g_m = 0.0;
        p.validate();
      }(),
      InvalidParams);
  CHECK_THROWS_AS(
      [] {
        SystemParams p = params_set_a(1.0);
        p.nonlinear.theta = 7.0;  // outside [0, 2 pi)
        p.validate();
      }(),
      InvalidParams);
}

TEST_CASE("validation warns when the probe is not weak") {
  SystemParams p = params_set_a(1.0);
  p.drive.power_probe = 0.5 * p.drive.power_coupling;
  const auto warnings = p.validate();
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].find("probe power") != std::string::npos);
}

TEST_CASE("derived quantities: omega_c from wavelength, default g_m") {
  SystemParams p = params_set_a(1.0);
  CHECK(p.drive.omega_c ==
        doctest::Approx(kTwoPi * constants::c_light / 1064e-9)
            .epsilon(1e-15));
  CHECK(p.g_m ==
        doctest::Approx(p.drive.omega_c / p.cavity.length).epsilon(1e-15));
  CHECK(p.sideband_resolution() == doctest::Approx(0.02).epsilon(1e-12));
}
