#include "sdlab/timestep.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "sdlab/snapshot.hpp"

namespace sdlab {

namespace {

bool all_finite(const std::vector<double>& v) {
  for (double x : v) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

double max_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// Gaussian elimination with partial pivoting; a is row-major n x n.
std::vector<double> solve_dense(std::vector<double> a, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t row = col + 1; row < n; ++row) {
      if (std::abs(a[row * n + col]) > std::abs(a[pivot * n + col])) pivot = row;
    }
    if (a[pivot * n + col] == 0.0) {
      throw std::runtime_error("implicit midpoint: singular Newton system");
    }
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a[col * n + j], a[pivot * n + j]);
      std::swap(b[col], b[pivot]);
    }
    const double inv = 1.0 / a[col * n + col];
    for (std::size_t row = col + 1; row < n; ++row) {
      const double f = a[row * n + col] * inv;
      if (f == 0.0) continue;
      for (std::size_t j = col; j < n; ++j) a[row * n + j] -= f * a[col * n + j];
      b[row] -= f * b[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t row = n; row-- > 0;) {
    double s = b[row];
    for (std::size_t j = row + 1; j < n; ++j) s -= a[row * n + j] * x[j];
    x[row] = s / a[row * n + row];
  }
  return x;
}

}  // namespace

void IntegratorConfig::validate() const {
  if (!(dt > 0.0)) throw ConfigError("integrator: dt must be positive");
  if (steps < 1) throw ConfigError("integrator: steps must be >= 1");
  if (!(newton_tol > 0.0)) throw ConfigError("integrator: newton_tol must be positive");
  if (newton_max_iter < 1) throw ConfigError("integrator: newton_max_iter must be >= 1");
  if (snapshot_every < 0) throw ConfigError("integrator: snapshot_every must be >= 0");
}

std::vector<double> rk4_step(const std::vector<double>& x, const Rhs& rhs, double dt) {
  const std::size_t n = x.size();
  auto stage_state = [&](const std::vector<double>& k, double factor) {
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = x[i] + factor * k[i];
    return y;
  };

  const std::vector<double> k1 = rhs(x);
  const std::vector<double> k2 = rhs(stage_state(k1, 0.5 * dt));
  const std::vector<double> k3 = rhs(stage_state(k2, 0.5 * dt));
  const std::vector<double> k4 = rhs(stage_state(k3, dt));

  const std::vector<double>* stages[4] = {&k1, &k2, &k3, &k4};
  for (int s = 0; s < 4; ++s) {
    if (!all_finite(*stages[s])) {
      throw std::runtime_error("rk4: non-finite value in stage " + std::to_string(s + 1));
    }
  }

  std::vector<double> out(n);
  const double w = dt / 6.0;
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = x[i] + w * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  return out;
}

std::vector<double> implicit_midpoint_step(const std::vector<double>& x, const Rhs& rhs,
                                           double dt, double tol, int max_iter) {
  const std::size_t n = x.size();
  const double scale = std::max(1.0, max_norm(x));
  // Iterate past the requested tolerance down to the roundoff floor so a
  // quadratic invariant is conserved to machine precision per step.
  const double floor = 1e-15 * scale;

  std::vector<double> y = x;  // current iterate for the end state
  std::vector<double> mid(n);
  double delta = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    for (std::size_t i = 0; i < n; ++i) mid[i] = 0.5 * (x[i] + y[i]);
    const std::vector<double> f = rhs(mid);
    if (!all_finite(f)) {
      throw std::runtime_error("implicit midpoint: non-finite right-hand side");
    }
    delta = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double next = x[i] + dt * f[i];
      delta = std::max(delta, std::abs(next - y[i]));
      y[i] = next;
    }
    if (delta <= floor) return y;
  }
  if (delta <= tol * scale) return y;

  // Fixed point stalled above tolerance: dense Newton for small systems,
  // restarted from the step's initial state.
  if (n <= 256) {
    y = x;
    auto residual = [&](const std::vector<double>& z) {
      std::vector<double> m(n);
      for (std::size_t i = 0; i < n; ++i) m[i] = 0.5 * (x[i] + z[i]);
      const std::vector<double> f = rhs(m);
      std::vector<double> g(n);
      for (std::size_t i = 0; i < n; ++i) g[i] = z[i] - x[i] - dt * f[i];
      return g;
    };
    for (int newton = 0; newton < max_iter; ++newton) {
      const std::vector<double> g = residual(y);
      if (!all_finite(g)) break;
      const double gn = max_norm(g);
      if (gn <= tol * scale) return y;
      const double eps = 1e-7 * std::max(scale, max_norm(y));
      std::vector<double> jac(n * n);
      for (std::size_t j = 0; j < n; ++j) {
        std::vector<double> yp = y;
        yp[j] += eps;
        const std::vector<double> gp = residual(yp);
        for (std::size_t i = 0; i < n; ++i) jac[i * n + j] = (gp[i] - g[i]) / eps;
      }
      const std::vector<double> step = solve_dense(std::move(jac), g);
      for (std::size_t i = 0; i < n; ++i) y[i] -= step[i];
      if (!all_finite(y)) {
        throw std::runtime_error("implicit midpoint: Newton iteration diverged");
      }
    }
  }
  char buf[128];
  std::snprintf(buf, sizeof(buf),
                "implicit midpoint: no convergence in %d iterations (residual %.3e)",
                max_iter, delta);
  throw std::runtime_error(buf);
}

EnergyTrace run_simulation(SimulatedSystem& system, const IntegratorConfig& cfg,
                           const std::string& out_dir) {
  cfg.validate();

  const bool writing = !out_dir.empty();
  if (writing) std::filesystem::create_directories(out_dir);

  auto snapshot_path = [&](int step) {
    char name[64];
    std::snprintf(name, sizeof(name), "snapshot_%06d.json", step);
    return out_dir + "/" + name;
  };
  auto write_snapshot = [&](int step, double t, const std::vector<double>& state) {
    nlohmann::json j;
    j["t"] = t;
    j["step"] = step;
    nlohmann::json fields = nlohmann::json::object();
    for (const auto& [name, form] : system.fields(state)) {
      fields[name] = form_to_json(form);
    }
    j["fields"] = std::move(fields);
    std::ofstream os(snapshot_path(step));
    if (!os) throw std::runtime_error("cannot write snapshot for step " + std::to_string(step));
    os << j.dump(2) << '\n';
  };
  auto want_snapshot = [&](int step) {
    if (!writing) return false;
    if (step == 0 || step == cfg.steps) return true;
    return cfg.snapshot_every > 0 && step % cfg.snapshot_every == 0;
  };

  std::vector<double> state = system.initial;
  const double h0 = system.hamiltonian(state);
  const double h0_scale = std::max(std::abs(h0), 1e-300);

  EnergyTrace trace;
  trace.rows.reserve(static_cast<std::size_t>(cfg.steps) + 1);
  auto record = [&](double t, const std::vector<double>& s) {
    const double h = system.hamiltonian(s);
    const double c = system.conserved(s);
    if (!std::isfinite(h) || !std::isfinite(c)) {
      throw std::runtime_error("simulation: non-finite diagnostics at t = " +
                               std::to_string(t));
    }
    trace.rows.push_back({t, h, c, (h - h0) / h0_scale});
  };

  record(0.0, state);
  if (want_snapshot(0)) write_snapshot(0, 0.0, state);

  for (int step = 1; step <= cfg.steps; ++step) {
    const double t = cfg.dt * step;
    try {
      state = (cfg.method == Integrator::rk4)
                  ? rk4_step(state, system.rhs, cfg.dt)
                  : implicit_midpoint_step(state, system.rhs, cfg.dt, cfg.newton_tol,
                                           cfg.newton_max_iter);
    } catch (const std::exception& e) {
      throw std::runtime_error("step " + std::to_string(step) + " (t = " +
                               std::to_string(t) + "): " + e.what());
    }
    record(t, state);
    if (want_snapshot(step)) write_snapshot(step, t, state);
  }

  if (writing) write_energy_csv(trace, out_dir + "/energy.csv");
  return trace;
}

void write_energy_csv(const EnergyTrace& trace, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  os << "t,H,conserved,drift\n";
  char buf[160];
  for (const auto& row : trace.rows) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g\n", row.t, row.H,
                  row.conserved, row.drift);
    os << buf;
  }
}

}  // namespace sdlab
