// Copyright 2026 The omitsim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace omitsim {

/// Base class for all omitsim errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Parameter set violates a physical invariant (non-positive mass, ...).
struct InvalidParams : Error {
  using Error::Error;
};

/// The steady-state intensity polynomial has no admissible real root.
struct NoPhysicalRoot : Error {
  using Error::Error;
};

/// Root polishing failed to reach the residual tolerance.
struct ToleranceNotMet : Error {
  using Error::Error;
};

/// The probe-response system is numerically singular at this offset.
struct SingularSystem : Error {
  using Error::Error;
};

/// A closed-form denominator vanished within tolerance.
struct PoleEncountered : Error {
  using Error::Error;
};

/// The eigenvalue solver did not converge.
struct EigenSolverFailure : Error {
  using Error::Error;
};

/// Too few grid points to classify extrema reliably.
struct GridTooCoarse : Error {
  using Error::Error;
};

/// Spectrum has no transparency window (monotone or single peak).
struct NoWindow : Error {
  using Error::Error;
};

/// Spectrum has no central absorption peak between its two dips.
struct NoCentralPeak : Error {
  using Error::Error;
};

/// Plot or export was asked to render an empty data set.
struct EmptyData : Error {
  using Error::Error;
};

/// Sweep axis path does not name a numeric parameter.
struct UnknownAxis : Error {
  using Error::Error;
};

/// Malformed or inconsistent configuration file.
struct ConfigError : Error {
  using Error::Error;
};

/// Filesystem failure while reading or writing data products.
struct IoError : Error {
  using Error::Error;
};

}  // namespace omitsim
