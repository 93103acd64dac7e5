#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "sdlab/random_fields.hpp"
#include "sdlab/systems.hpp"
#include "sdlab/timestep.hpp"

using namespace sdlab;

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

Grid line_grid(int nodes) { return Grid({nodes}, {kTwoPi / nodes}); }

Grid box_grid(int nodes) {
  const double h = kTwoPi / nodes;
  return Grid({nodes, nodes, nodes}, {h, h, h});
}

Form volume_form(const Grid& g) {
  Form unit(g, 0);
  for (double& v : unit.component(0)) v = 1.0;
  return hodge(unit);
}

// Centered difference written against the raw arrays, independent of the
// library's operator assembly.
std::vector<double> diff_loop(const Grid& g, const std::vector<double>& in, int axis) {
  std::vector<double> out(in.size());
  for (std::size_t i = 0; i < in.size(); ++i) {
    out[i] = (in[g.neighbor(i, axis, 1)] - in[g.neighbor(i, axis, -1)]) /
             (2.0 * g.spacing(axis));
  }
  return out;
}

}  // namespace

TEST_CASE("maxwell: zero state, hamiltonian, gauge invariance") {
  const Grid g = box_grid(6);
  const MaxwellState zero(Form(g, 2), Form(g, 2));
  CHECK(maxwell_hamiltonian(zero) == 0.0);
  const ReducedCotangent e0 = maxwell_efforts(zero);
  CHECK(e0.e_rho_bar.norm_inf() == 0.0);
  CHECK(e0.e_pi_bar.norm_inf() == 0.0);

  const Form A = random_form(g, 1, 1);
  const Form D = random_form(g, 2, 2);
  const Form f = random_form(g, 0, 3);
  const double h0 = maxwell_hamiltonian_unreduced(A, D);
  const double h1 = maxwell_hamiltonian_unreduced(A + exterior_derivative(f), D);
  CHECK(h0 == doctest::Approx(h1).epsilon(1e-12));

  // The reduced energy agrees with the unreduced one at B = dA.
  const MaxwellState s(exterior_derivative(A), D);
  CHECK(maxwell_hamiltonian(s) == doctest::Approx(h0).epsilon(1e-13));

  CHECK_THROWS(maxwell_hamiltonian_unreduced(random_form(g, 2, 4), D));
  const Grid g1 = line_grid(8);
  CHECK_THROWS(MaxwellState(Form(g1, 1), Form(g1, 0)));
}

TEST_CASE("maxwell component equations against an axis-loop oracle") {
  const Grid g = box_grid(8);
  const MaxwellState s(random_form(g, 2, 11), random_form(g, 2, 12));
  const auto [b_dot, d_dot] = maxwell_evolution(s);

  // Oracle: with unit metric, (*W) for a 2-form W has one-form components
  // (*W)_i = W_{complement(i)} with the cyclic sign, and then
  // (dV)_{jk} pattern assembles the curl. Everything here is raw loops.
  auto star_two_form = [&](const Form& w) {
    std::vector<std::vector<double>> one(3);
    one[0] = w.component(w.index_of(0b110));  // (2,3) -> dx1
    one[1] = w.component(w.index_of(0b101));  // (1,3) -> -dx2
    for (double& v : one[1]) v = -v;
    one[2] = w.component(w.index_of(0b011));  // (1,2) -> dx3
    return one;
  };
  auto curl_to_two_form = [&](const std::vector<std::vector<double>>& v) {
    // d(v_i dx^i) over components (1,2), (1,3), (2,3).
    std::vector<std::vector<double>> out(3);
    const auto d1v2 = diff_loop(g, v[1], 0);
    const auto d2v1 = diff_loop(g, v[0], 1);
    const auto d1v3 = diff_loop(g, v[2], 0);
    const auto d3v1 = diff_loop(g, v[0], 2);
    const auto d2v3 = diff_loop(g, v[2], 1);
    const auto d3v2 = diff_loop(g, v[1], 2);
    out[0].resize(g.node_count());
    out[1].resize(g.node_count());
    out[2].resize(g.node_count());
    for (std::size_t i = 0; i < g.node_count(); ++i) {
      out[0][i] = d1v2[i] - d2v1[i];  // (1,2)
      out[1][i] = d1v3[i] - d3v1[i];  // (1,3)
      out[2][i] = d2v3[i] - d3v2[i];  // (2,3)
    }
    return out;
  };

  const auto curl_star_d = curl_to_two_form(star_two_form(s.D));
  const auto curl_star_b = curl_to_two_form(star_two_form(s.B));

  const unsigned masks[3] = {0b011, 0b101, 0b110};
  double err = 0.0;
  for (int c = 0; c < 3; ++c) {
    const auto& bd = b_dot.component(b_dot.index_of(masks[c]));
    const auto& dd = d_dot.component(d_dot.index_of(masks[c]));
    for (std::size_t i = 0; i < g.node_count(); ++i) {
      err = std::max(err, std::abs(bd[i] + curl_star_d[c][i]));
      err = std::max(err, std::abs(dd[i] - curl_star_b[c][i]));
    }
  }
  CHECK(err <= 1e-12 * (1.0 + b_dot.norm_inf() + d_dot.norm_inf()));
}

TEST_CASE("maxwell: one-sided states and semi-discrete energy skewness") {
  const Grid g = box_grid(8);
  const Form B = random_form(g, 2, 21);
  const Form D = random_form(g, 2, 22);

  const auto [b_dot_no_d, d_dot_no_d] = maxwell_evolution(MaxwellState(B, Form(g, 2)));
  CHECK(b_dot_no_d.norm_inf() == 0.0);
  CHECK(max_abs_diff(d_dot_no_d, exterior_derivative(hodge(B))) == 0.0);

  const auto [b_dot_no_b, d_dot_no_b] = maxwell_evolution(MaxwellState(Form(g, 2), D));
  CHECK(max_abs_diff(b_dot_no_b, -exterior_derivative(hodge(D))) == 0.0);
  CHECK(d_dot_no_b.norm_inf() == 0.0);

  // Single-mode data: dH/dt through the efforts pairing vanishes.
  SystemSpec spec{"maxwell", g, {}, {}, {}};
  SimulatedSystem sim = make_simulated_system(spec);
  const auto fields = sim.fields(sim.initial);
  const MaxwellState ms(fields[0].second, fields[1].second);
  const double rate = reduced_duality(maxwell_efforts(ms), maxwell_evolution_reduced(ms));
  CHECK(std::abs(rate) <= 1e-12 * (1.0 + maxwell_hamiltonian(ms)));
}

TEST_CASE("telegrapher: statics, PDE oracle, efforts") {
  const Grid g = line_grid(64);
  const TelegrapherParams p{1.0, 1.0};

  LineState constant(Form(g, 1), Form(g, 1));
  for (double& v : constant.rho_bar.component(0)) v = 0.8;
  for (double& v : constant.pi_bar.component(0)) v = -0.3;
  const ReducedTangent rest = telegrapher_evolution(constant, p);
  CHECK(rest.rho_bar_dot.norm_inf() == 0.0);
  CHECK(rest.pi_bar_dot.norm_inf() == 0.0);

  // Single Fourier mode: the evolution must equal the centered-difference
  // discretization of C V_t = -I_x, L I_t = -V_x with V = *q/C, I = -*pi/L.
  LineState s(Form(g, 1), Form(g, 1));
  for (std::size_t i = 0; i < g.node_count(); ++i) {
    const double x = g.coord(0, static_cast<int>(i));
    s.rho_bar.component(0)[i] = std::cos(x);
    s.pi_bar.component(0)[i] = 0.4 * std::sin(x);
  }
  const ReducedTangent dot = telegrapher_evolution(s, p);
  const auto current = s.pi_bar.component(0);  // I = -pi/L with L = 1, unit metric
  std::vector<double> I(g.node_count());
  for (std::size_t i = 0; i < I.size(); ++i) I[i] = -current[i] / p.inductance;
  const auto V = s.rho_bar.component(0);  // V = q/C with C = 1
  const auto dI = diff_loop(g, I, 0);
  const auto dV = diff_loop(g, V, 0);
  double err = 0.0;
  for (std::size_t i = 0; i < g.node_count(); ++i) {
    err = std::max(err, std::abs(dot.rho_bar_dot.component(0)[i] + dI[i]));
    err = std::max(err, std::abs(dot.pi_bar_dot.component(0)[i] - dV[i]));
  }
  CHECK(err <= 1e-12);

  CHECK_THROWS(telegrapher_hamiltonian(s, TelegrapherParams{0.0, 1.0}));
  CHECK_THROWS(telegrapher_efforts(s, TelegrapherParams{1.0, -2.0}));
}

TEST_CASE("telegrapher: traveling wave phase velocity within dispersion error") {
  // L = 1, C = 4: propagation speed 1/sqrt(LC) = 0.5 on a 64-node line.
  const Grid g = line_grid(64);
  const TelegrapherParams p{1.0, 4.0};
  SystemSpec spec{"telegrapher", g, p, {}, {}};
  SimulatedSystem sim = make_simulated_system(spec);

  IntegratorConfig cfg;
  cfg.method = Integrator::rk4;
  cfg.dt = 0.01;
  cfg.steps = 200;
  run_simulation(sim, cfg);

  // The simulation mutated nothing; rerun manually to get the final state.
  std::vector<double> state = sim.initial;
  for (int step = 0; step < cfg.steps; ++step) state = rk4_step(state, sim.rhs, cfg.dt);

  // Fourier phase of V at mode 1, before and after.
  auto phase_of = [&](const std::vector<double>& packed) {
    std::complex<double> coeff(0.0, 0.0);
    for (std::size_t i = 0; i < g.node_count(); ++i) {
      const double x = g.coord(0, static_cast<int>(i));
      coeff += (packed[i] / p.capacitance) * std::exp(std::complex<double>(0.0, -x));
    }
    return std::arg(coeff);
  };
  const double dphi = phase_of(sim.initial) - phase_of(state);
  const double travel = cfg.dt * cfg.steps;
  const double speed = std::remainder(dphi, kTwoPi) / travel;
  CHECK(std::abs(speed - 0.5) <= 0.01);
}

TEST_CASE("string: statics, wave-equation oracle, energy skewness") {
  const Grid g = line_grid(64);
  const StringParams p{2.0, 0.5};

  const ReducedTangent rest = string_evolution(LineState(Form(g, 1), Form(g, 1)), p);
  CHECK(rest.rho_bar_dot.norm_inf() == 0.0);
  CHECK(rest.pi_bar_dot.norm_inf() == 0.0);

  // Single mode u = sin(x) at rest: strain rate vanishes and the momentum
  // rate reproduces the wide-stencil second derivative mu u_tt = T u_xx.
  Form u(g, 0);
  for (std::size_t i = 0; i < g.node_count(); ++i) {
    u.component(0)[i] = std::sin(g.coord(0, static_cast<int>(i)));
  }
  const LineState plucked(exterior_derivative(u), Form(g, 1));
  const ReducedTangent dot = string_evolution(plucked, p);
  CHECK(dot.rho_bar_dot.norm_inf() == 0.0);
  const auto ux = diff_loop(g, u.component(0), 0);
  const auto uxx = diff_loop(g, ux, 0);
  double err = 0.0;
  for (std::size_t i = 0; i < g.node_count(); ++i) {
    err = std::max(err, std::abs(dot.pi_bar_dot.component(0)[i] - p.tension * uxx[i]));
  }
  CHECK(err <= 1e-12);

  const LineState s(exterior_derivative(random_form(g, 0, 31)), random_form(g, 1, 32));
  const double rate = reduced_duality(string_efforts(s, p), string_evolution(s, p));
  CHECK(std::abs(rate) <= 1e-12 * (1.0 + string_hamiltonian(s, p)));
  CHECK_THROWS(string_hamiltonian(s, StringParams{-1.0, 1.0}));
}

TEST_CASE("fluid system: rest state, continuity oracle, mass rate") {
  const Grid g = box_grid(8);
  const FluidParams p{1.0, 1.4};

  // Hydrostatic rest: velocity zero, density constant.
  Form rho0 = 2.0 * volume_form(g);
  const FluidTangent rest = fluid_evolution(FluidState(Form(g, 1), rho0), p);
  CHECK(rest.theta_dot.norm_inf() == 0.0);
  CHECK(rest.rho_dot.norm_inf() == 0.0);

  // Continuity against a raw divergence loop.
  Form theta(g, 1);
  Form rho(g, 3);
  for (std::size_t i = 0; i < g.node_count(); ++i) {
    const auto x = g.node_coords(i);
    theta.component(0)[i] = 0.2 * std::cos(x[1]);
    theta.component(1)[i] = 0.15 * std::sin(x[2]);
    theta.component(2)[i] = -0.1 * std::cos(x[0]);
    rho.component(0)[i] = 2.0 + 0.3 * std::sin(x[0]) * std::cos(x[2]);
  }
  const FluidState s(theta, rho);
  const FluidTangent dot = fluid_evolution(s, p);
  std::vector<double> divergence(g.node_count(), 0.0);
  for (int axis = 0; axis < 3; ++axis) {
    std::vector<double> flux(g.node_count());
    const auto& t = theta.component(theta.index_of(1u << axis));
    const auto& r = rho.component(0);
    for (std::size_t i = 0; i < flux.size(); ++i) flux[i] = t[i] * r[i];
    const auto d = diff_loop(g, flux, axis);
    for (std::size_t i = 0; i < flux.size(); ++i) divergence[i] += d[i];
  }
  double err = 0.0;
  for (std::size_t i = 0; i < g.node_count(); ++i) {
    err = std::max(err, std::abs(dot.rho_dot.component(0)[i] + divergence[i]));
  }
  CHECK(err <= 1e-10);
  CHECK(std::abs(integrate(dot.rho_dot)) <= 1e-12);

  CHECK_THROWS(fluid_hamiltonian(s, FluidParams{1.0, 1.0}));
  CHECK_THROWS(fluid_efforts(s, FluidParams{-1.0, 1.4}));
}

TEST_CASE("efforts are the functional derivatives of each hamiltonian") {
  const double eps = 1e-5;

  {
    const Grid g = line_grid(16);
    const TelegrapherParams p{2.0, 0.5};
    const LineState s(random_form(g, 1, 41), random_form(g, 1, 42));
    const Form dq = random_form(g, 1, 43);
    const Form dpi = random_form(g, 1, 44);
    const double dual = reduced_duality(telegrapher_efforts(s, p), ReducedTangent(dq, dpi));
    const double fd = (telegrapher_hamiltonian(LineState(s.rho_bar + eps * dq,
                                                         s.pi_bar + eps * dpi), p) -
                       telegrapher_hamiltonian(LineState(s.rho_bar - eps * dq,
                                                         s.pi_bar - eps * dpi), p)) /
                      (2.0 * eps);
    CHECK(std::abs(dual - fd) <= 1e-6 * (1.0 + std::abs(dual)));
  }

  {
    const Grid g = box_grid(6);
    const MaxwellState s(random_form(g, 2, 45), random_form(g, 2, 46));
    const Form dB = random_form(g, 2, 47);
    const Form dPi = random_form(g, 2, 48);
    const double dual = reduced_duality(maxwell_efforts(s), ReducedTangent(dB, dPi));
    const double fd =
        (maxwell_hamiltonian(MaxwellState(s.B + eps * dB, s.D - eps * dPi)) -
         maxwell_hamiltonian(MaxwellState(s.B - eps * dB, s.D + eps * dPi))) /
        (2.0 * eps);
    CHECK(std::abs(dual - fd) <= 1e-6 * (1.0 + std::abs(dual)));
  }

  {
    const Grid g = box_grid(6);
    const FluidParams p{1.0, 1.4};
    const FluidState s(random_form(g, 1, 49),
                       pointwise_multiply(random_positive_scalar(g, 50), volume_form(g)));
    const Form dtheta = random_form(g, 1, 51, 0.5);
    const Form drho = random_form(g, 3, 52, 0.2);
    const double dual = v_duality(fluid_efforts(s, p), FluidTangent(dtheta, drho));
    const double fd =
        (fluid_hamiltonian(FluidState(s.theta + eps * dtheta, s.rho + eps * drho), p) -
         fluid_hamiltonian(FluidState(s.theta - eps * dtheta, s.rho - eps * drho), p)) /
        (2.0 * eps);
    CHECK(std::abs(dual - fd) <= 1e-6 * (1.0 + std::abs(dual)));
  }
}

TEST_CASE("system spec parsing") {
  const auto good = nlohmann::json::parse(R"({
    "system": "maxwell",
    "grid": { "sizes": [8, 8, 8] },
    "params": {}
  })");
  const SystemSpec spec = system_spec_from_json(good);
  CHECK(spec.system == "maxwell");
  CHECK(spec.grid.dim() == 3);
  CHECK(spec.grid.spacing(0) == doctest::Approx(kTwoPi / 8));

  auto missing = good;
  missing.erase("system");
  CHECK_THROWS_AS(system_spec_from_json(missing), ConfigError);
  try {
    system_spec_from_json(missing);
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("system") != std::string::npos);
  }

  auto bad_system = good;
  bad_system["system"] = "heat";
  CHECK_THROWS_AS(system_spec_from_json(bad_system), ConfigError);

  auto bad_dim = good;
  bad_dim["grid"]["sizes"] = {8};
  CHECK_THROWS_AS(system_spec_from_json(bad_dim), ConfigError);

  auto with_params = nlohmann::json::parse(R"({
    "system": "telegrapher",
    "grid": { "sizes": [64] },
    "params": { "L": 1.0, "C": 4.0 }
  })");
  CHECK(system_spec_from_json(with_params).telegrapher.capacitance == 4.0);
}
