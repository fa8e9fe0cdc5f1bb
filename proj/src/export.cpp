// Copyright 2026 The omitsim Authors
// SPDX-License-Identifier: Apache-2.0

#include "omitsim/export.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "omitsim/errors.hpp"

namespace omitsim {

using nlohmann::json;

namespace {

constexpr const char* kCsvHeader =
    "delta_rad_s,x_over_ref,re_eps_t,im_eps_t,sideband_mag,"
    "re_q_norm,im_q_norm,re_qcm_norm,im_qcm_norm";

json steady_to_json(const SteadyState& st) {
  json j;
  j["amplitude"] = st.amplitude;
  j["intensity"] = st.intensity;
  j["q1_eq"] = st.q1_eq;
  j["q2_eq"] = st.q2_eq;
  j["delta0"] = st.delta0;
  j["delta_eff"] = st.delta_eff;
  j["delta1"] = st.delta1;
  j["n_real_roots"] = st.n_real_roots;
  if (st.stable) j["stable"] = *st.stable;
  return j;
}

SteadyState steady_from_json(const json& j) {
  SteadyState st;
  st.amplitude = j.at("amplitude").get<double>();
  st.intensity = j.at("intensity").get<double>();
  st.q1_eq = j.at("q1_eq").get<double>();
  st.q2_eq = j.at("q2_eq").get<double>();
  st.delta0 = j.at("delta0").get<double>();
  st.delta_eff = j.at("delta_eff").get<double>();
  st.delta1 = j.at("delta1").get<double>();
  st.n_real_roots = j.at("n_real_roots").get<int>();
  if (j.contains("stable")) st.stable = j.at("stable").get<bool>();
  return st;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw IoError("write failed for '" + path + "'");
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

ExportFormat parse_format(const std::string& name) {
  if (name == "csv") return ExportFormat::Csv;
  if (name == "json") return ExportFormat::Json;
  throw ConfigError("unknown export format '" + name +
                    "' (expected csv|json)");
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string spectrum_to_csv(const Spectrum& s, const RunManifest& manifest) {
  json meta;
  meta["manifest"] = manifest_to_json(manifest);
  meta["steady_state"] = steady_to_json(s.steady);
  meta["params"] = params_to_json(s.params, s.steady.delta0);
  meta["reference_omega"] = s.reference_omega;

  std::ostringstream os;
  os << "# omitsim spectrum\n";
  os << "# manifest: " << manifest.id << "\n";
  os << "# meta: " << meta.dump() << "\n";
  os << kCsvHeader << "\n";
  for (std::size_t i = 0; i < s.delta_grid.size(); ++i) {
    const auto& r = s.responses[i];
    const double delta = s.delta_grid[i];
    const double x = s.reference_omega > 0.0
                         ? (delta - s.reference_omega) / s.reference_omega
                         : delta;
    os << format_double(delta) << ',' << format_double(x) << ','
       << format_double(r.eps_t.real()) << ',' << format_double(r.eps_t.imag())
       << ',' << format_double(r.sideband_mag) << ','
       << format_double(r.q_norm.real()) << ','
       << format_double(r.q_norm.imag()) << ','
       << format_double(r.q_cm_norm.real()) << ','
       << format_double(r.q_cm_norm.imag()) << "\n";
  }
  return os.str();
}

std::string spectrum_to_json_text(const Spectrum& s,
                                  const RunManifest& manifest) {
  json j;
  j["format"] = "omitsim-spectrum";
  j["manifest"] = manifest_to_json(manifest);
  j["steady_state"] = steady_to_json(s.steady);
  j["params"] = params_to_json(s.params, s.steady.delta0);
  j["reference_omega"] = s.reference_omega;
  j["delta_grid"] = s.delta_grid;

  auto column = [&s](auto&& get) {
    std::vector<double> v;
    v.reserve(s.responses.size());
    for (const auto& r : s.responses) v.push_back(get(r));
    return v;
  };
  json cols;
  cols["re_a_minus"] = column([](const auto& r) { return r.a_minus.real(); });
  cols["im_a_minus"] = column([](const auto& r) { return r.a_minus.imag(); });
  cols["re_a_plus"] = column([](const auto& r) { return r.a_plus.real(); });
  cols["im_a_plus"] = column([](const auto& r) { return r.a_plus.imag(); });
  cols["re_q_amp"] = column([](const auto& r) { return r.q_amp.real(); });
  cols["im_q_amp"] = column([](const auto& r) { return r.q_amp.imag(); });
  cols["re_qcm_amp"] = column([](const auto& r) { return r.q_cm_amp.real(); });
  cols["im_qcm_amp"] = column([](const auto& r) { return r.q_cm_amp.imag(); });
  cols["re_eps_t"] = column([](const auto& r) { return r.eps_t.real(); });
  cols["im_eps_t"] = column([](const auto& r) { return r.eps_t.imag(); });
  cols["sideband_mag"] = column([](const auto& r) { return r.sideband_mag; });
  cols["re_q_norm"] = column([](const auto& r) { return r.q_norm.real(); });
  cols["im_q_norm"] = column([](const auto& r) { return r.q_norm.imag(); });
  cols["re_qcm_norm"] =
      column([](const auto& r) { return r.q_cm_norm.real(); });
  cols["im_qcm_norm"] =
      column([](const auto& r) { return r.q_cm_norm.imag(); });
  j["responses"] = cols;
  return j.dump(2) + "\n";
}

void export_spectrum(const Spectrum& s, const RunManifest& manifest,
                     ExportFormat format, const std::string& path) {
  if (s.delta_grid.empty()) throw EmptyData("spectrum has no grid points");
  if (s.delta_grid.size() != s.responses.size()) {
    throw Error("spectrum grid/response size mismatch");
  }
  write_text(path, format == ExportFormat::Csv
                       ? spectrum_to_csv(s, manifest)
                       : spectrum_to_json_text(s, manifest));
}

namespace {

Spectrum spectrum_from_json_text(const std::string& text,
                                 RunManifest* manifest) {
  const json j = json::parse(text);
  if (j.value("format", "") != "omitsim-spectrum") {
    throw IoError("not an omitsim spectrum JSON file");
  }
  if (manifest != nullptr) *manifest = manifest_from_json(j.at("manifest"));

  Spectrum s;
  double delta0 = 0.0;
  s.params = params_from_json(j.at("params"), &delta0);
  s.steady = steady_from_json(j.at("steady_state"));
  s.reference_omega = j.at("reference_omega").get<double>();
  s.delta_grid = j.at("delta_grid").get<std::vector<double>>();

  const auto& cols = j.at("responses");
  auto col = [&cols](const char* name) {
    return cols.at(name).get<std::vector<double>>();
  };
  const auto re_am = col("re_a_minus"), im_am = col("im_a_minus");
  const auto re_ap = col("re_a_plus"), im_ap = col("im_a_plus");
  const auto re_q = col("re_q_amp"), im_q = col("im_q_amp");
  const auto re_qc = col("re_qcm_amp"), im_qc = col("im_qcm_amp");
  const auto re_et = col("re_eps_t"), im_et = col("im_eps_t");
  const auto sb = col("sideband_mag");
  const auto re_qn = col("re_q_norm"), im_qn = col("im_q_norm");
  const auto re_qcn = col("re_qcm_norm"), im_qcn = col("im_qcm_norm");

  s.responses.resize(s.delta_grid.size());
  for (std::size_t i = 0; i < s.responses.size(); ++i) {
    auto& r = s.responses[i];
    r.a_minus = {re_am[i], im_am[i]};
    r.a_plus = {re_ap[i], im_ap[i]};
    r.q_amp = {re_q[i], im_q[i]};
    r.q_cm_amp = {re_qc[i], im_qc[i]};
    r.eps_t = {re_et[i], im_et[i]};
    r.sideband_mag = sb[i];
    r.q_norm = {re_qn[i], im_qn[i]};
    r.q_cm_norm = {re_qcn[i], im_qcn[i]};
  }
  return s;
}

Spectrum spectrum_from_csv_text(const std::string& text,
                                RunManifest* manifest) {
  std::istringstream in(text);
  std::string line;
  Spectrum s;
  bool have_meta = false;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const std::string meta_tag = "# meta: ";
      if (line.rfind(meta_tag, 0) == 0) {
        const json meta = json::parse(line.substr(meta_tag.size()));
        double delta0 = 0.0;
        s.params = params_from_json(meta.at("params"), &delta0);
        s.steady = steady_from_json(meta.at("steady_state"));
        s.reference_omega = meta.at("reference_omega").get<double>();
        if (manifest != nullptr) {
          *manifest = manifest_from_json(meta.at("manifest"));
        }
        have_meta = true;
      }
      continue;
    }
    if (!have_header) {
      if (line != kCsvHeader) {
        throw IoError("unexpected CSV header: " + line);
      }
      have_header = true;
      continue;
    }
    double v[9];
    std::size_t pos = 0;
    for (int k = 0; k < 9; ++k) {
      const std::size_t next = line.find(',', pos);
      const std::string tok = line.substr(
          pos, next == std::string::npos ? std::string::npos : next - pos);
      try {
        v[k] = std::stod(tok);
      } catch (const std::exception&) {
        throw IoError("bad CSV number '" + tok + "'");
      }
      if (next == std::string::npos && k < 8) {
        throw IoError("short CSV row: " + line);
      }
      pos = next + 1;
    }
    ProbeResponse r;
    r.eps_t = {v[2], v[3]};
    r.sideband_mag = v[4];
    r.q_norm = {v[5], v[6]};
    r.q_cm_norm = {v[7], v[8]};
    // Raw amplitudes are reconstructed up to the information the CSV
    // carries; the lower-sideband phase is not stored.
    const double eps_p = drive_amplitudes(s.params, v[0]).eps_p;
    const double kappa = s.params.cavity.kappa;
    if (kappa > 0.0) {
      r.a_minus = r.eps_t * eps_p / (2.0 * kappa);
      r.a_plus = Complex(r.sideband_mag * eps_p / (2.0 * kappa), 0.0);
    }
    const double gm_as = s.params.g_m * s.steady.amplitude;
    if (gm_as > 0.0) {
      r.q_amp = r.q_norm * eps_p / gm_as;
      r.q_cm_amp = r.q_cm_norm * eps_p / gm_as;
    }
    s.delta_grid.push_back(v[0]);
    s.responses.push_back(r);
  }
  if (!have_meta) throw IoError("CSV is missing its '# meta:' header line");
  if (s.delta_grid.empty()) throw EmptyData("CSV contains no data rows");
  return s;
}

}  // namespace

Spectrum load_spectrum(const std::string& path, RunManifest* manifest) {
  const std::string text = read_text(path);
  const std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    return spectrum_from_json_text(text, manifest);
  }
  return spectrum_from_csv_text(text, manifest);
}

}  // namespace omitsim
