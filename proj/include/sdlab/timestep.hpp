#pragma once

#include <functional>
#include <string>
#include <vector>

#include "sdlab/systems.hpp"

namespace sdlab {

enum class Integrator { rk4, implicit_midpoint };

struct IntegratorConfig {
  Integrator method = Integrator::implicit_midpoint;
  double dt = 0.0;
  int steps = 0;
  double newton_tol = 1e-12;
  int newton_max_iter = 50;
  int snapshot_every = 0;  // 0 disables periodic snapshots

  void validate() const;  // throws ConfigError
};

using Rhs = std::function<std::vector<double>(const std::vector<double>&)>;

// Classical four-stage step. Throws on non-finite stage values.
std::vector<double> rk4_step(const std::vector<double>& x, const Rhs& rhs, double dt);

// Solves y = x + dt rhs((x + y)/2) by fixed-point iteration polished down to
// the roundoff floor, with a dense finite-difference Newton fallback for
// small systems. Throws if the residual cannot be brought below tol within
// max_iter iterations.
std::vector<double> implicit_midpoint_step(const std::vector<double>& x, const Rhs& rhs,
                                           double dt, double tol = 1e-12,
                                           int max_iter = 50);

struct EnergyTraceRow {
  double t;
  double H;
  double conserved;
  double drift;  // (H - H0) / |H0|
};

struct EnergyTrace {
  std::vector<EnergyTraceRow> rows;
};

// Integrates the system, recording (t, H, conserved, drift) at t = 0 and
// after every step. When out_dir is nonempty, writes energy.csv plus
// numbered snapshot files at the configured cadence (the initial and final
// states are always included). Step failures are rethrown annotated with
// the simulation time.
EnergyTrace run_simulation(SimulatedSystem& system, const IntegratorConfig& cfg,
                           const std::string& out_dir = "");

// CSV with the exact header t,H,conserved,drift and round-trip-exact floats.
void write_energy_csv(const EnergyTrace& trace, const std::string& path);

}  // namespace sdlab
