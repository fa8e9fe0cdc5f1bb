// Copyright 2026 The omitsim Authors
// SPDX-License-Identifier: Apache-2.0

#include "omitsim/config.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "omitsim/errors.hpp"
#include "omitsim/export.hpp"

namespace omitsim {

namespace {

constexpr double kTwoPi = 2.0 * constants::pi;

struct RawValue {
  std::string text;
  int line = 0;
};

using Section = std::map<std::string, RawValue>;
using Sections = std::map<std::string, Section>;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string lower(std::string s) {
  for (char& c : s) c = char(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

[[noreturn]] void fail(int line, const std::string& what) {
  std::ostringstream os;
  os << "config line " << line << ": " << what;
  throw ConfigError(os.str());
}

Sections tokenize(const std::string& text) {
  Sections sections;
  std::istringstream in(text);
  std::string line;
  std::string current;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail(lineno, "unterminated section header");
      current = lower(trim(line.substr(1, line.size() - 2)));
      if (current.empty()) fail(lineno, "empty section name");
      sections[current];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail(lineno, "expected 'key = value'");
    if (current.empty()) fail(lineno, "key outside any [section]");
    const std::string key = lower(trim(line.substr(0, eq)));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) fail(lineno, "empty key or value");
    if (sections[current].count(key)) fail(lineno, "duplicate key '" + key + "'");
    sections[current][key] = {value, lineno};
  }
  return sections;
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

double parse_number(const std::string& tok, int line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(tok, &used);
    if (used != tok.size()) fail(line, "trailing junk in number '" + tok + "'");
    return v;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception&) {
    fail(line, "not a number: '" + tok + "'");
  }
}

enum class Dim { Frequency, Mass, Length, Power, Angle, Coupling, Detuning };

// Returns the SI value; `omega_m` tags (detunings only) are returned in
// units of the mean mechanical frequency with *relative set.
double parse_quantity(const RawValue& raw, Dim dim, bool* relative = nullptr) {
  const auto toks = split_ws(raw.text);
  if (toks.size() != 2) {
    fail(raw.line, "expected '<number> <unit>', got '" + raw.text + "'");
  }
  const double v = parse_number(toks[0], raw.line);
  const std::string unit = lower(toks[1]);
  if (relative != nullptr) *relative = false;

  switch (dim) {
    case Dim::Frequency:
      if (unit == "hz") return v * kTwoPi;
      if (unit == "rad_per_s") return v;
      fail(raw.line, "frequency unit must be hz|rad_per_s, got '" + unit + "'");
    case Dim::Detuning:
      if (unit == "hz") return v * kTwoPi;
      if (unit == "rad_per_s") return v;
      if (unit == "omega_m") {
        if (relative == nullptr) fail(raw.line, "omega_m tag not allowed here");
        *relative = true;
        return v;
      }
      fail(raw.line, "detuning unit must be hz|rad_per_s|omega_m");
    case Dim::Mass:
      if (unit == "kg") return v;
      if (unit == "g") return v * 1e-3;
      if (unit == "mg") return v * 1e-6;
      if (unit == "ug") return v * 1e-9;
      if (unit == "ng") return v * 1e-12;
      if (unit == "pg") return v * 1e-15;
      fail(raw.line, "mass unit must be kg|g|mg|ug|ng|pg");
    case Dim::Length:
      if (unit == "m") return v;
      if (unit == "mm") return v * 1e-3;
      if (unit == "um") return v * 1e-6;
      if (unit == "nm") return v * 1e-9;
      fail(raw.line, "length unit must be m|mm|um|nm");
    case Dim::Power:
      if (unit == "w") return v;
      if (unit == "mw") return v * 1e-3;
      if (unit == "uw") return v * 1e-6;
      if (unit == "nw") return v * 1e-9;
      fail(raw.line, "power unit must be w|mw|uw|nw");
    case Dim::Angle:
      if (unit == "rad") return v;
      if (unit == "deg") return v * constants::pi / 180.0;
      fail(raw.line, "angle unit must be rad|deg");
    case Dim::Coupling:
      if (unit == "rad_per_s_per_m") return v;
      fail(raw.line, "coupling unit must be rad_per_s_per_m");
  }
  fail(raw.line, "unhandled unit dimension");
}

const RawValue* find(const Sections& sections, const std::string& section,
                     const std::string& key) {
  const auto sit = sections.find(section);
  if (sit == sections.end()) return nullptr;
  const auto kit = sit->second.find(key);
  if (kit == sit->second.end()) return nullptr;
  return &kit->second;
}

const RawValue& require(const Sections& sections, const std::string& section,
                        const std::string& key) {
  const RawValue* v = find(sections, section, key);
  if (v == nullptr) {
    throw ConfigError("missing required key [" + section + "] " + key);
  }
  return *v;
}

MirrorParams parse_mirror(const Sections& sections,
                          const std::string& section) {
  MirrorParams m;
  m.mass = parse_quantity(require(sections, section, "mass"), Dim::Mass);
  m.omega_m =
      parse_quantity(require(sections, section, "omega"), Dim::Frequency);
  m.gamma =
      parse_quantity(require(sections, section, "gamma"), Dim::Frequency);
  return m;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  const Sections sections = tokenize(text);
  for (const auto& [name, _] : sections) {
    if (name != "cavity" && name != "mirror1" && name != "mirror2" &&
        name != "drive" && name != "nonlinear" && name != "sweep") {
      throw ConfigError("unknown section [" + name + "]");
    }
  }

  RunConfig cfg;
  SystemParams& p = cfg.params;

  p.cavity.kappa =
      parse_quantity(require(sections, "cavity", "kappa"), Dim::Frequency);
  p.cavity.length =
      parse_quantity(require(sections, "cavity", "length"), Dim::Length);
  if (const auto* v = find(sections, "cavity", "omega0")) {
    p.cavity.omega0 = parse_quantity(*v, Dim::Frequency);
  }
  if (const auto* v = find(sections, "cavity", "g_m")) {
    p.g_m = parse_quantity(*v, Dim::Coupling);
  }

  p.mirror1 = parse_mirror(sections, "mirror1");
  p.mirror2 = parse_mirror(sections, "mirror2");

  p.drive.power_coupling =
      parse_quantity(require(sections, "drive", "power_coupling"), Dim::Power);
  if (const auto* v = find(sections, "drive", "power_probe")) {
    p.drive.power_probe = parse_quantity(*v, Dim::Power);
  } else {
    p.drive.power_probe = 1e-4 * p.drive.power_coupling;
  }

  bool delta0_relative = false;
  const double delta0_raw = parse_quantity(
      require(sections, "drive", "delta0"), Dim::Detuning, &delta0_relative);
  const double omega_mean =
      0.5 * (p.mirror1.omega_m + p.mirror2.omega_m);
  cfg.delta0 = delta0_relative ? delta0_raw * omega_mean : delta0_raw;
  p.drive.delta0_target = cfg.delta0;

  const auto* wavelength = find(sections, "drive", "wavelength");
  const auto* omega_c = find(sections, "drive", "omega_c");
  if ((wavelength != nullptr) == (omega_c != nullptr)) {
    throw ConfigError(
        "[drive] needs exactly one of 'wavelength' or 'omega_c'");
  }
  if (omega_c != nullptr) {
    p.drive.omega_c = parse_quantity(*omega_c, Dim::Frequency);
    finalize_derived(p);
  } else {
    finalize_derived(p, parse_quantity(*wavelength, Dim::Length));
  }

  if (const auto* v = find(sections, "nonlinear", "gain")) {
    p.nonlinear.gain_opa = parse_quantity(*v, Dim::Frequency);
  }
  if (const auto* v = find(sections, "nonlinear", "theta")) {
    p.nonlinear.theta = parse_quantity(*v, Dim::Angle);
    p.nonlinear.theta = std::fmod(p.nonlinear.theta, kTwoPi);
    if (p.nonlinear.theta < 0.0) p.nonlinear.theta += kTwoPi;
  }
  if (const auto* v = find(sections, "nonlinear", "eta")) {
    p.nonlinear.eta = parse_quantity(*v, Dim::Frequency);
  }

  if (const auto* v = find(sections, "sweep", "grid")) {
    const auto toks = split_ws(v->text);
    if (toks.size() != 3) fail(v->line, "grid needs 'start stop count'");
    cfg.grid.start = parse_number(toks[0], v->line);
    cfg.grid.stop = parse_number(toks[1], v->line);
    const double count = parse_number(toks[2], v->line);
    if (count < 2 || count != std::floor(count)) {
      fail(v->line, "grid count must be an integer >= 2");
    }
    cfg.grid.count = std::size_t(count);
  }
  if (const auto* v = find(sections, "sweep", "reference")) {
    cfg.reference = parse_reference(lower(v->text));
  }

  const auto* axis = find(sections, "sweep", "axis");
  const auto* values = find(sections, "sweep", "values");
  const auto* range = find(sections, "sweep", "range");
  if (axis != nullptr) {
    SweepSpec spec;
    spec.axis = axis->text;
    spec.delta_grid = cfg.grid;
    spec.reference = cfg.reference;
    if ((values != nullptr) == (range != nullptr)) {
      fail(axis->line, "[sweep] with an axis needs 'values' or 'range'");
    }
    if (values != nullptr) {
      for (const auto& tok : split_ws(values->text)) {
        spec.values.push_back(parse_number(tok, values->line));
      }
      if (spec.values.empty()) fail(values->line, "empty 'values' list");
    } else {
      const auto toks = split_ws(range->text);
      if (toks.size() != 4) {
        fail(range->line, "range needs 'start stop count linear|log'");
      }
      const double count = parse_number(toks[2], range->line);
      if (count < 2 || count != std::floor(count)) {
        fail(range->line, "range count must be an integer >= 2");
      }
      const std::string scale = lower(toks[3]);
      if (scale != "linear" && scale != "log") {
        fail(range->line, "range scale must be linear|log");
      }
      spec.values = make_axis_values(
          parse_number(toks[0], range->line), parse_number(toks[1], range->line),
          std::size_t(count),
          scale == "log" ? AxisScale::Log : AxisScale::Linear);
    }
    cfg.sweep = std::move(spec);
  } else if (values != nullptr || range != nullptr) {
    throw ConfigError("[sweep] 'values'/'range' given without an 'axis'");
  }

  cfg.warnings = p.validate();
  if (cfg.sweep) {
    SystemParams probe = p;
    resolve_axis(probe, cfg.sweep->axis);  // reject bad paths at load time
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return parse_config(os.str());
}

std::string config_to_text(const RunConfig& cfg) {
  const SystemParams& p = cfg.params;
  std::ostringstream os;
  os << "[cavity]\n";
  os << "kappa = " << format_double(p.cavity.kappa) << " rad_per_s\n";
  os << "length = " << format_double(p.cavity.length) << " m\n";
  os << "omega0 = " << format_double(p.cavity.omega0) << " rad_per_s\n";
  os << "g_m = " << format_double(p.g_m) << " rad_per_s_per_m\n";
  for (const auto& [name, m] :
       {std::pair{"mirror1", &p.mirror1}, std::pair{"mirror2", &p.mirror2}}) {
    os << "\n[" << name << "]\n";
    os << "mass = " << format_double(m->mass) << " kg\n";
    os << "omega = " << format_double(m->omega_m) << " rad_per_s\n";
    os << "gamma = " << format_double(m->gamma) << " rad_per_s\n";
  }
  os << "\n[drive]\n";
  os << "power_coupling = " << format_double(p.drive.power_coupling) << " w\n";
  os << "power_probe = " << format_double(p.drive.power_probe) << " w\n";
  os << "omega_c = " << format_double(p.drive.omega_c) << " rad_per_s\n";
  os << "delta0 = " << format_double(cfg.delta0) << " rad_per_s\n";
  os << "\n[nonlinear]\n";
  os << "gain = " << format_double(p.nonlinear.gain_opa) << " rad_per_s\n";
  os << "theta = " << format_double(p.nonlinear.theta) << " rad\n";
  os << "eta = " << format_double(p.nonlinear.eta) << " rad_per_s\n";
  os << "\n[sweep]\n";
  os << "grid = " << format_double(cfg.grid.start) << ' '
     << format_double(cfg.grid.stop) << ' ' << cfg.grid.count << "\n";
  os << "reference = " << reference_name(cfg.reference) << "\n";
  return os.str();
}

}  // namespace omitsim
