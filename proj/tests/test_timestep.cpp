#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "sdlab/timestep.hpp"

using namespace sdlab;

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

Rhs decay() {
  return [](const std::vector<double>& x) { return std::vector<double>{-x[0]}; };
}

// Harmonic oscillator q' = p, p' = -q with H = (q^2 + p^2) / 2.
Rhs oscillator() {
  return [](const std::vector<double>& x) { return std::vector<double>{x[1], -x[0]}; };
}

double oscillator_energy(const std::vector<double>& x) {
  return 0.5 * (x[0] * x[0] + x[1] * x[1]);
}

std::string slurp(const std::string& path) {
  std::ifstream is(path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("rk4: fixed point of zero field, scalar amplification") {
  const Rhs zero = [](const std::vector<double>& x) {
    return std::vector<double>(x.size(), 0.0);
  };
  const std::vector<double> x{1.5, -2.5};
  CHECK(rk4_step(x, zero, 0.1) == x);

  // One step of x' = -x at dt = 0.1 multiplies by the degree-4 Taylor
  // polynomial of exp(-0.1).
  const auto y = rk4_step({1.0}, decay(), 0.1);
  CHECK(y[0] == doctest::Approx(0.9048375).epsilon(1e-15));
}

TEST_CASE("rk4: two half steps vs one full step differ at fifth order") {
  auto local_error = [&](double dt) {
    const std::vector<double> x{1.0, 0.3};
    const auto full = rk4_step(x, oscillator(), dt);
    const auto half = rk4_step(rk4_step(x, oscillator(), dt / 2), oscillator(), dt / 2);
    return std::abs(full[0] - half[0]) + std::abs(full[1] - half[1]);
  };
  const double e1 = local_error(0.2);
  const double e2 = local_error(0.1);
  CHECK(e1 / e2 >= 20.0);
  CHECK(e1 / e2 <= 48.0);
}

TEST_CASE("rk4: global energy error scales at fourth order") {
  auto energy_error = [&](double dt) {
    std::vector<double> x{1.0, 0.0};
    const double h0 = oscillator_energy(x);
    const int steps = static_cast<int>(std::lround(2.0 / dt));
    for (int i = 0; i < steps; ++i) x = rk4_step(x, oscillator(), dt);
    return std::abs(oscillator_energy(x) - h0);
  };
  const double order = std::log2(energy_error(0.1) / energy_error(0.05));
  CHECK(order >= 3.8);
}

TEST_CASE("rk4: non-finite stages raise with the stage index") {
  const Rhs blow_up = [](const std::vector<double>& x) {
    return std::vector<double>{x[0] > 10.0 ? std::nan("") : x[0] * x[0] * 100.0};
  };
  CHECK_THROWS_AS(rk4_step({5.0}, blow_up, 1.0), std::runtime_error);
}

TEST_CASE("implicit midpoint: identity on zero fields, quadratic invariant") {
  const Rhs zero = [](const std::vector<double>& x) {
    return std::vector<double>(x.size(), 0.0);
  };
  const std::vector<double> x{0.7};
  CHECK(implicit_midpoint_step(x, zero, 0.25) == x);

  // 1000 steps of the oscillator at dt = 0.2 keep H to solver precision.
  std::vector<double> state{1.0, 0.0};
  const double h0 = oscillator_energy(state);
  for (int i = 0; i < 1000; ++i) {
    state = implicit_midpoint_step(state, oscillator(), 0.2);
  }
  CHECK(std::abs(oscillator_energy(state) - h0) / h0 <= 1e-10);
}

TEST_CASE("implicit midpoint agrees with rk4 to third order on smooth systems") {
  auto gap = [&](double dt) {
    const std::vector<double> x{0.9, -0.4};
    const auto a = implicit_midpoint_step(x, oscillator(), dt);
    const auto b = rk4_step(x, oscillator(), dt);
    return std::abs(a[0] - b[0]) + std::abs(a[1] - b[1]);
  };
  const double ratio = gap(0.2) / gap(0.1);
  CHECK(ratio >= 6.0);
  CHECK(ratio <= 10.5);
}

TEST_CASE("implicit midpoint reports non-convergence") {
  // y = x + dt ((x + y)/2)^2 has no real solution at x = 1, dt = 3.
  const Rhs quadratic = [](const std::vector<double>& x) {
    return std::vector<double>{x[0] * x[0]};
  };
  CHECK_THROWS_AS(implicit_midpoint_step({1.0}, quadratic, 3.0), std::runtime_error);
}

TEST_CASE("implicit midpoint falls back to Newton when fixed point diverges") {
  // x' = -50 x at dt = 0.1: the fixed-point map has contraction factor 2.5,
  // but the midpoint equation is linear with solution x (1 - 2.5)/(1 + 2.5).
  const Rhs stiff = [](const std::vector<double>& x) {
    return std::vector<double>{-50.0 * x[0]};
  };
  const auto y = implicit_midpoint_step({1.0}, stiff, 0.1);
  CHECK(y[0] == doctest::Approx(-1.5 / 3.5).epsilon(1e-10));
}

TEST_CASE("run_simulation: validation, row count, determinism, files") {
  const Grid grid({64}, {kTwoPi / 64});
  const SystemSpec spec{"telegrapher", grid, {1.0, 1.0}, {}, {}};

  SimulatedSystem sim = make_simulated_system(spec);
  IntegratorConfig bad;
  bad.dt = 0.0;
  bad.steps = 1;
  CHECK_THROWS_AS(run_simulation(sim, bad), ConfigError);

  IntegratorConfig cfg;
  cfg.method = Integrator::implicit_midpoint;
  cfg.dt = 0.02;
  cfg.steps = 200;
  cfg.snapshot_every = 100;

  const std::string dir1 = "ts_run_a";
  const std::string dir2 = "ts_run_b";
  const EnergyTrace t1 = run_simulation(sim, cfg, dir1);
  CHECK(t1.rows.size() == 201);
  for (std::size_t i = 1; i < t1.rows.size(); ++i) {
    CHECK(t1.rows[i].t > t1.rows[i - 1].t);
  }
  CHECK(std::abs(t1.rows.back().drift) <= 1e-10);
  // The conserved charge is a linear functional, held exactly.
  CHECK(t1.rows.back().conserved ==
        doctest::Approx(t1.rows.front().conserved).epsilon(1e-13));

  SimulatedSystem sim2 = make_simulated_system(spec);
  run_simulation(sim2, cfg, dir2);
  CHECK(slurp(dir1 + "/energy.csv") == slurp(dir2 + "/energy.csv"));
  CHECK(slurp(dir1 + "/energy.csv").rfind("t,H,conserved,drift\n", 0) == 0);
  CHECK(std::filesystem::exists(dir1 + "/snapshot_000000.json"));
  CHECK(std::filesystem::exists(dir1 + "/snapshot_000100.json"));
  CHECK(std::filesystem::exists(dir1 + "/snapshot_000200.json"));

  std::filesystem::remove_all(dir1);
  std::filesystem::remove_all(dir2);
}

TEST_CASE("run_simulation: fluid mass is conserved through rk4") {
  const double h = kTwoPi / 8;
  const Grid grid({8, 8, 8}, {h, h, h});
  const SystemSpec spec{"fluid", grid, {}, {}, {1.0, 1.4}};
  SimulatedSystem sim = make_simulated_system(spec);

  IntegratorConfig cfg;
  cfg.method = Integrator::rk4;
  cfg.dt = 1e-3;
  cfg.steps = 100;
  const EnergyTrace trace = run_simulation(sim, cfg);
  const double m0 = trace.rows.front().conserved;
  double drift = 0.0;
  for (const auto& row : trace.rows) {
    drift = std::max(drift, std::abs(row.conserved - m0) / std::abs(m0));
  }
  CHECK(drift <= 1e-12);
}
