// Copyright 2026 The omitsim Authors
// SPDX-License-Identifier: Apache-2.0

#include "omitsim/sweep.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <sstream>
#include <thread>

#include "omitsim/errors.hpp"

namespace omitsim {

double reference_omega(const SystemParams& params, Reference ref) {
  switch (ref) {
    case Reference::Mean:
      return 0.5 * (params.mirror1.omega_m + params.mirror2.omega_m);
    case Reference::Mirror1:
      return params.mirror1.omega_m;
    case Reference::Mirror2:
      return params.mirror2.omega_m;
  }
  return 0.0;
}

Reference parse_reference(const std::string& name) {
  if (name == "mean") return Reference::Mean;
  if (name == "mirror1") return Reference::Mirror1;
  if (name == "mirror2") return Reference::Mirror2;
  throw ConfigError("unknown reference '" + name +
                    "' (expected mean|mirror1|mirror2)");
}

std::string reference_name(Reference ref) {
  switch (ref) {
    case Reference::Mean:
      return "mean";
    case Reference::Mirror1:
      return "mirror1";
    case Reference::Mirror2:
      return "mirror2";
  }
  return "";
}

std::vector<double> make_delta_grid(const SystemParams& params,
                                    const GridSpec& grid, Reference ref) {
  if (grid.count < 2) throw ConfigError("grid count must be at least 2");
  if (!(grid.start < grid.stop)) {
    throw ConfigError("grid start must be below grid stop");
  }
  const double omega_ref = reference_omega(params, ref);
  std::vector<double> out(grid.count);
  const double step = (grid.stop - grid.start) / double(grid.count - 1);
  for (std::size_t i = 0; i < grid.count; ++i) {
    out[i] = omega_ref * (1.0 + grid.start + step * double(i));
  }
  return out;
}

std::vector<double> make_axis_values(double start, double stop,
                                     std::size_t count, AxisScale scale) {
  if (count < 2) throw ConfigError("axis range needs at least 2 values");
  if (!(start < stop)) throw ConfigError("axis start must be below stop");
  std::vector<double> out(count);
  if (scale == AxisScale::Log) {
    if (start <= 0.0) throw ConfigError("log axis requires positive start");
    const double lstep = std::log(stop / start) / double(count - 1);
    for (std::size_t i = 0; i < count; ++i) {
      out[i] = start * std::exp(lstep * double(i));
    }
  } else {
    const double step = (stop - start) / double(count - 1);
    for (std::size_t i = 0; i < count; ++i) out[i] = start + step * double(i);
  }
  return out;
}

double* resolve_axis(SystemParams& params, const std::string& path) {
  if (path == "g_m") return &params.g_m;
  if (path == "cavity.kappa") return &params.cavity.kappa;
  if (path == "cavity.length") return &params.cavity.length;
  if (path == "cavity.omega0") return &params.cavity.omega0;
  if (path == "drive.power_coupling") return &params.drive.power_coupling;
  if (path == "drive.power_probe") return &params.drive.power_probe;
  if (path == "drive.omega_c") return &params.drive.omega_c;
  if (path == "drive.delta0") {
    if (!params.drive.delta0_target) params.drive.delta0_target = 0.0;
    return &*params.drive.delta0_target;
  }
  if (path == "nonlinear.gain_opa") return &params.nonlinear.gain_opa;
  if (path == "nonlinear.theta") return &params.nonlinear.theta;
  if (path == "nonlinear.eta") return &params.nonlinear.eta;
  for (const auto& [prefix, mirror] :
       {std::pair{std::string("mirror1."), &params.mirror1},
        std::pair{std::string("mirror2."), &params.mirror2}}) {
    if (path.rfind(prefix, 0) != 0) continue;
    const std::string field = path.substr(prefix.size());
    if (field == "mass") return &mirror->mass;
    if (field == "omega_m") return &mirror->omega_m;
    if (field == "gamma") return &mirror->gamma;
  }
  throw UnknownAxis("unknown sweep axis '" + path + "'");
}

Spectrum frequency_sweep(const SystemParams& params, double delta0,
                         const std::vector<double>& delta_grid,
                         Reference ref, int workers, SweepTiming* timing) {
  if (delta_grid.size() < 2) {
    throw ConfigError("frequency sweep needs at least 2 grid points");
  }
  for (std::size_t i = 1; i < delta_grid.size(); ++i) {
    if (!(delta_grid[i] > delta_grid[i - 1])) {
      throw ConfigError("delta grid must be strictly increasing");
    }
  }
  params.validate();

  Spectrum s;
  s.params = params;
  s.delta_grid = delta_grid;
  s.reference_omega = reference_omega(params, ref);
  s.steady = select_operating_state(solve_steady_state(params, delta0));
  s.responses.resize(delta_grid.size());

  if (timing != nullptr) {
    timing->seconds_per_point.assign(delta_grid.size(), 0.0);
  }

  const int n_workers =
      std::max(1, std::min<int>(workers, int(delta_grid.size())));

  auto run_chunk = [&](std::size_t first, std::size_t stride,
                       std::exception_ptr* failure) {
    try {
      for (std::size_t i = first; i < delta_grid.size(); i += stride) {
        const auto t0 = std::chrono::steady_clock::now();
        try {
          s.responses[i] =
              solve_probe_response(params, s.steady, delta_grid[i]);
        } catch (const SingularSystem& err) {
          std::ostringstream os;
          os << err.what() << " [grid point " << i << "]";
          throw SingularSystem(os.str());
        }
        if (timing != nullptr) {
          timing->seconds_per_point[i] =
              std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                            t0)
                  .count();
        }
      }
    } catch (...) {
      *failure = std::current_exception();
    }
  };

  const auto sweep_start = std::chrono::steady_clock::now();
  if (n_workers == 1) {
    std::exception_ptr failure;
    run_chunk(0, 1, &failure);
    if (failure) std::rethrow_exception(failure);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> failures(n_workers);
    pool.reserve(n_workers);
    for (int w = 0; w < n_workers; ++w) {
      pool.emplace_back(run_chunk, w, n_workers, &failures[w]);
    }
    for (auto& t : pool) t.join();
    for (const auto& failure : failures) {
      if (failure) std::rethrow_exception(failure);
    }
  }
  if (timing != nullptr) {
    timing->total_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                      sweep_start)
            .count();
  }
  return s;
}

std::vector<SweepPoint> parameter_sweep(const SystemParams& base,
                                        double delta0, const SweepSpec& spec,
                                        int workers) {
  if (spec.values.empty()) {
    throw ConfigError("parameter sweep has no axis values");
  }
  {
    SystemParams probe = base;
    resolve_axis(probe, spec.axis);  // fail fast on a bad path
  }

  std::vector<SweepPoint> out;
  out.reserve(spec.values.size());
  for (double value : spec.values) {
    SweepPoint point;
    point.value = value;
    try {
      SystemParams params = base;
      if (!params.drive.delta0_target) params.drive.delta0_target = delta0;
      *resolve_axis(params, spec.axis) = value;
      const double d0 = *params.drive.delta0_target;
      const auto grid = make_delta_grid(params, spec.delta_grid, spec.reference);
      point.spectrum =
          frequency_sweep(params, d0, grid, spec.reference, workers);
    } catch (const Error& err) {
      point.error = err.what();
    }
    out.push_back(std::move(point));
  }
  return out;
}

}  // namespace omitsim
