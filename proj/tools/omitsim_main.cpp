// Copyright 2026 The omitsim Authors
// SPDX-License-Identifier: Apache-2.0

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "omitsim/config.hpp"
#include "omitsim/errors.hpp"
#include "omitsim/export.hpp"
#include "omitsim/presets.hpp"
#include "omitsim/svg_plot.hpp"

namespace fs = std::filesystem;
using namespace omitsim;

namespace {

struct CommonOpts {
  std::string config_path;
  std::string out_dir = ".";
  std::string format = "csv";
  bool svg = false;
  int workers = 1;
  std::string grid;  // "start:stop:count"
  bool stability_check = false;
};

GridSpec parse_grid_flag(const std::string& text) {
  GridSpec g;
  double start = 0, stop = 0, count = 0;
  if (std::sscanf(text.c_str(), "%lf:%lf:%lf", &start, &stop, &count) != 3 ||
      count < 2 || count != std::floor(count) || !(start < stop)) {
    throw ConfigError("--grid expects start:stop:count with count >= 2");
  }
  g.start = start;
  g.stop = stop;
  g.count = std::size_t(count);
  return g;
}

std::string extension(const std::string& format) {
  return format == "json" ? ".json" : ".csv";
}

fs::path out_file(const CommonOpts& opts, const std::string& stem,
                  const std::string& ext) {
  fs::create_directories(opts.out_dir);
  return fs::path(opts.out_dir) / (stem + ext);
}

void apply_stability(const SystemParams& params, SteadyState& state,
                     bool requested, std::vector<std::string>* warnings) {
  if (!requested) return;
  state.stable = linear_stability(params, state);
  if (!*state.stable) {
    warnings->push_back(
        "operating point is linearly unstable; spectra describe the "
        "unstable fixed point");
  }
}

void print_warnings(const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
}

int cmd_steady(const CommonOpts& opts) {
  RunConfig cfg = load_config(opts.config_path);
  auto warnings = cfg.warnings;
  const auto states = solve_steady_state(cfg.params, cfg.delta0);
  auto selected = select_operating_state(states, &warnings);
  apply_stability(cfg.params, selected, opts.stability_check, &warnings);
  print_warnings(warnings);

  std::printf("# steady states at delta0 = %s rad/s (%zu branch%s)\n",
              format_double(cfg.delta0).c_str(), states.size(),
              states.size() == 1 ? "" : "es");
  std::printf("%-3s %-22s %-22s %-14s %-14s %-22s %-22s\n", "i", "intensity",
              "amplitude", "q1_eq_m", "q2_eq_m", "delta_eff", "delta1");
  for (std::size_t i = 0; i < states.size(); ++i) {
    const auto& st = states[i];
    std::printf("%-3zu %-22.15g %-22.15g %-14.6g %-14.6g %-22.15g %-22.15g%s\n",
                i, st.intensity, st.amplitude, st.q1_eq, st.q2_eq,
                st.delta_eff, st.delta1,
                st.intensity == selected.intensity ? "  <- selected" : "");
  }
  if (opts.stability_check) {
    std::printf("stable: %s\n", *selected.stable ? "yes" : "no");
  }
  std::printf("sideband resolution kappa/min(omega_m): %.6g\n",
              cfg.params.sideband_resolution());
  return 0;
}

int cmd_spectrum(const CommonOpts& opts) {
  RunConfig cfg = load_config(opts.config_path);
  if (!opts.grid.empty()) cfg.grid = parse_grid_flag(opts.grid);
  auto warnings = cfg.warnings;

  const auto grid = make_delta_grid(cfg.params, cfg.grid, cfg.reference);
  Spectrum s = frequency_sweep(cfg.params, cfg.delta0, grid, cfg.reference,
                               opts.workers);
  apply_stability(cfg.params, s.steady, opts.stability_check, &warnings);
  print_warnings(warnings);

  const auto manifest = make_manifest(cfg.params, cfg.delta0, s.steady, warnings);
  const auto path = out_file(opts, "spectrum", extension(opts.format));
  export_spectrum(s, manifest, parse_format(opts.format), path.string());
  std::cout << "wrote " << path.string() << "\n";

  if (opts.svg) {
    const auto svg_path = out_file(opts, "spectrum", ".svg");
    SvgStyle style;
    style.x_label = "x / omega_ref";
    style.y_label = "Re eps_t";
    write_svg({spectrum_series(s, Quantity::ReEpsT, "Re eps_t")}, style,
              svg_path.string());
    std::cout << "wrote " << svg_path.string() << "\n";
  }
  return 0;
}

int cmd_sweep(const CommonOpts& opts) {
  RunConfig cfg = load_config(opts.config_path);
  if (!cfg.sweep) {
    throw ConfigError("config has no [sweep] axis; nothing to sweep");
  }
  if (!opts.grid.empty()) {
    cfg.sweep->delta_grid = parse_grid_flag(opts.grid);
  }
  auto warnings = cfg.warnings;
  print_warnings(warnings);

  const auto points = parameter_sweep(cfg.params, cfg.delta0, *cfg.sweep,
                                      opts.workers);

  fs::create_directories(opts.out_dir);
  const fs::path table_path = fs::path(opts.out_dir) / "sweep_features.csv";
  std::string table = "# omitsim sweep: axis " + cfg.sweep->axis + "\n";
  table += "axis_value,dip_position_rad_s,dip_depth,fwhm_rad_s,"
           "splitting_rad_s,cooperativity,gamma_eff_rad_s,error\n";
  int exported = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& pt = points[i];
    table += format_double(pt.value) + ",";
    if (pt.spectrum) {
      const auto manifest = make_manifest(
          pt.spectrum->params,
          pt.spectrum->params.drive.delta0_target.value_or(cfg.delta0),
          pt.spectrum->steady, warnings);
      const auto path =
          out_file(opts, "sweep_point_" + std::to_string(i),
                   extension(opts.format));
      export_spectrum(*pt.spectrum, manifest, parse_format(opts.format),
                      path.string());
      ++exported;
      const auto coop =
          cooperativity_report(pt.spectrum->params, pt.spectrum->steady);
      try {
        const auto w = transparency_window(*pt.spectrum);
        table += format_double(w.dip_position) + "," +
                 format_double(w.dip_depth) + "," + format_double(w.fwhm) +
                 "," + format_double(w.splitting) + "," +
                 format_double(coop.cooperativity) + "," +
                 format_double(coop.gamma_eff) + ",\n";
      } catch (const Error& err) {
        table += ",,,," + format_double(coop.cooperativity) + "," +
                 format_double(coop.gamma_eff) + "," + err.what() +
                 std::string("\n");
      }
    } else {
      table += ",,,,,," + pt.error + "\n";
    }
  }
  std::ofstream table_out(table_path);
  table_out << table;
  std::cout << "wrote " << table_path.string() << " and " << exported
            << " spectra\n";
  return 0;
}

int cmd_features(const std::string& input) {
  const Spectrum s = load_spectrum(input);
  const auto coop = cooperativity_report(s.params, s.steady);
  std::printf("cooperativity: %.15g\n", coop.cooperativity);
  std::printf("gamma_eff: %.15g rad/s\n", coop.gamma_eff);
  try {
    const auto w = transparency_window(s);
    std::printf("dip_position: %.15g rad/s (x/ref = %.10g)\n", w.dip_position,
                (w.dip_position - s.reference_omega) / s.reference_omega);
    std::printf("dip_depth: %.15g\n", w.dip_depth);
    std::printf("fwhm: %.15g rad/s\n", w.fwhm);
    std::printf("splitting: %.15g rad/s\n", w.splitting);
    if (w.central_peak_height) {
      std::printf("central_peak_height: %.15g\n", *w.central_peak_height);
    }
  } catch (const NoWindow& err) {
    std::printf("transparency_window: none (%s)\n", err.what());
  }
  const auto extrema = find_extrema(s, Quantity::ReEpsT);
  std::printf("re_eps_t extrema (%zu):\n", extrema.size());
  for (const auto& e : extrema) {
    std::printf("  %s at delta = %.15g rad/s, value %.15g\n",
                e.kind == ExtremumKind::Maximum ? "max" : "min", e.position,
                e.value);
  }
  return 0;
}

void render_preset_quantity(const Preset& pre,
                            const std::vector<Spectrum>& spectra,
                            Quantity q, const CommonOpts& opts) {
  std::vector<SvgSeries> series;
  for (std::size_t i = 0; i < spectra.size(); ++i) {
    series.push_back(spectrum_series(spectra[i], q, pre.runs[i].label));
  }
  SvgStyle style;
  style.title = pre.name + ": " + quantity_name(q);
  style.x_label = "x / omega_ref";
  style.y_label = quantity_name(q);
  const auto path = out_file(opts, pre.name + "_" + quantity_name(q), ".svg");
  write_svg(series, style, path.string());
  std::cout << "wrote " << path.string() << "\n";
}

int cmd_reproduce(const std::string& name, const CommonOpts& opts) {
  const Preset pre = preset(name);

  if (name == "fig4") {
    const auto& run = pre.runs.front();
    const auto grid = make_delta_grid(run.params, pre.grid, pre.reference);
    const auto table = splitting_vs_coupling(run.params, run.delta0,
                                             pre.g_m_values, grid);
    const double g1 = run.params.drive.omega_c / run.params.cavity.length;
    std::string csv = "g_m_rad_per_s_per_m,g_m_over_g1,splitting_rad_s,error\n";
    SvgSeries series{"splitting", {}, {}};
    for (const auto& row : table.rows) {
      csv += format_double(row.g_m) + "," + format_double(row.g_m / g1) + "," +
             format_double(row.splitting) + "," + row.error + "\n";
      if (row.error.empty()) {
        series.x.push_back(row.g_m / g1);
        series.y.push_back(row.splitting);
      }
    }
    const auto csv_path = out_file(opts, "fig4_splitting", ".csv");
    std::ofstream(csv_path) << csv;
    std::cout << "wrote " << csv_path.string() << "\n";
    if (table.slope) {
      std::printf("linear fit: d(splitting)/d(g_m) = %.15g m, R^2 %.10g\n",
                  *table.slope, table.r_squared.value_or(0.0));
    }
    if (opts.svg) {
      SvgStyle style;
      style.title = "outer-peak splitting vs coupling";
      style.x_label = "g_m / g_1";
      style.y_label = "splitting (rad/s)";
      const auto path = out_file(opts, "fig4_splitting", ".svg");
      write_svg({series}, style, path.string());
      std::cout << "wrote " << path.string() << "\n";
    }
    return 0;
  }

  std::vector<Spectrum> spectra;
  for (const auto& run : pre.runs) {
    auto warnings = run.params.validate();
    const auto grid = make_delta_grid(run.params, pre.grid, pre.reference);
    Spectrum s = frequency_sweep(run.params, run.delta0, grid, pre.reference,
                                 opts.workers);
    apply_stability(run.params, s.steady, opts.stability_check, &warnings);
    print_warnings(warnings);
    const auto manifest =
        make_manifest(run.params, run.delta0, s.steady, warnings);
    const auto path =
        out_file(opts, pre.name + "_" + run.label, extension(opts.format));
    export_spectrum(s, manifest, parse_format(opts.format), path.string());
    std::cout << "wrote " << path.string() << "\n";
    spectra.push_back(std::move(s));
  }
  for (Quantity q : pre.plot_quantities) {
    render_preset_quantity(pre, spectra, q, opts);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"omitsim: probe response of a two-mirror Kerr/OPA cavity"};
  app.require_subcommand(1);
  // Global options may appear after the subcommand name.
  app.fallthrough();

  CommonOpts opts;
  app.add_option("--out", opts.out_dir, "output directory");
  app.add_option("--format", opts.format, "export format: csv|json")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_flag("--svg", opts.svg, "also render SVG plots");
  app.add_option("--workers", opts.workers, "worker threads for sweeps")
      ->check(CLI::PositiveNumber);
  app.add_option("--grid", opts.grid,
                 "probe grid start:stop:count in x/omega_ref units");
  app.add_flag("--stability-check", opts.stability_check,
               "check linear stability of the operating point");

  auto* steady = app.add_subcommand("steady", "print the steady-state table");
  steady->fallthrough();
  steady->add_option("--config", opts.config_path, "config file")->required();

  auto* spectrum =
      app.add_subcommand("spectrum", "compute and export one probe spectrum");
  spectrum->fallthrough();
  spectrum->add_option("--config", opts.config_path, "config file")->required();

  auto* sweep = app.add_subcommand(
      "sweep", "sweep a parameter axis and export spectra + features");
  sweep->fallthrough();
  sweep->add_option("--config", opts.config_path, "config file")->required();

  std::string features_input;
  auto* features = app.add_subcommand(
      "features", "extract window features from an exported spectrum");
  features->fallthrough();
  features->add_option("input", features_input, "spectrum file (csv or json)")
      ->required();

  std::string preset_name;
  auto* reproduce = app.add_subcommand(
      "reproduce", "run a built-in preset (fig2|fig4|fig5|fig6|fig7)");
  reproduce->fallthrough();
  reproduce->add_option("preset", preset_name, "preset name")->required();

  // SVG output is the point of the reproduction presets.
  reproduce->parse_complete_callback([&opts] { opts.svg = true; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (steady->parsed()) return cmd_steady(opts);
    if (spectrum->parsed()) return cmd_spectrum(opts);
    if (sweep->parsed()) return cmd_sweep(opts);
    if (features->parsed()) return cmd_features(features_input);
    if (reproduce->parsed()) return cmd_reproduce(preset_name, opts);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const UnknownAxis& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const InvalidParams& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const EmptyData& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
