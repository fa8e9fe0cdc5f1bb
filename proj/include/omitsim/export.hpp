// Copyright 2026 The omitsim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "omitsim/manifest.hpp"

namespace omitsim {

enum class ExportFormat { Csv, Json };

ExportFormat parse_format(const std::string& name);

/// Writes a spectrum to disk. CSV columns, in order:
///   delta_rad_s, x_over_ref, re_eps_t, im_eps_t, sideband_mag,
///   re_q_norm, im_q_norm, re_qcm_norm, im_qcm_norm
/// Floating point uses 17 significant digits (round-trip exact).
/// JSON embeds the full manifest, steady state, and raw sideband
/// amplitudes; CSV carries the manifest id and a one-line metadata
/// header as comments.
void export_spectrum(const Spectrum& s, const RunManifest& manifest,
                     ExportFormat format, const std::string& path);

/// Reads a spectrum back. CSV restores the normalized response columns
/// and the metadata header; JSON restores everything bit-exactly.
Spectrum load_spectrum(const std::string& path, RunManifest* manifest = nullptr);

std::string spectrum_to_csv(const Spectrum& s, const RunManifest& manifest);
std::string spectrum_to_json_text(const Spectrum& s, const RunManifest& manifest);

/// Serializes a double with full round-trip precision (%.17g).
std::string format_double(double v);

}  // namespace omitsim
