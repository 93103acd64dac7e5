#include "sdlab/checks.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "sdlab/random_fields.hpp"
#include "sdlab/systems.hpp"
#include "sdlab/timestep.hpp"

namespace sdlab {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

Grid unit_torus(int n, int points, std::vector<double> metric = {}) {
  std::vector<int> sizes(static_cast<std::size_t>(n), points);
  std::vector<double> spacings(static_cast<std::size_t>(n), kTwoPi / points);
  return Grid(sizes, spacings, std::move(metric));
}

double rel_diff(double a, double b) { return std::abs(a - b) / (1.0 + std::abs(a) + std::abs(b)); }

double rel_form_diff(const Form& a, const Form& b) {
  return max_abs_diff(a, b) / (1.0 + a.norm_inf() + b.norm_inf());
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.3e", v);
  return buf;
}

struct Collector {
  std::vector<CheckResult> results;
  double tol_scale;

  void add(std::string suite, std::string name, double residual, double tol,
           std::string note = "") {
    CheckResult r;
    r.suite = std::move(suite);
    r.name = std::move(name);
    r.residual = residual;
    r.tolerance = tol * tol_scale;
    r.pass = residual <= r.tolerance;
    r.note = std::move(note);
    results.push_back(std::move(r));
  }
};

// The grids every structural sweep runs on: one per dimension, with a
// non-unit metric in 2-d to keep the Hodge factors honest.
std::vector<Grid> sweep_grids() {
  return {unit_torus(1, 16), unit_torus(2, 8, {1.0, 2.25}), unit_torus(3, 6)};
}

// ------------------------------------------------------------------ dec suite

void check_dec(Collector& out, std::uint64_t seed) {
  double dd_resid = 0.0;
  double stokes_resid = 0.0;
  double adj_resid = 0.0;
  double hodge_resid = 0.0;
  double sharp_resid = 0.0;
  double ix_resid = 0.0;
  double lie_resid = 0.0;

  for (const Grid& grid : sweep_grids()) {
    const int n = grid.dim();
    const double h = grid.min_spacing();
    const double vol = grid.cell_volume() * static_cast<double>(grid.node_count());
    for (int k = 0; k < n; ++k) {
      const Form a = random_form(grid, k, seed + static_cast<std::uint64_t>(10 * n + k));
      const Form da = exterior_derivative(a);
      if (k + 1 < n) {
        dd_resid = std::max(dd_resid, exterior_derivative(da).norm_inf() * h * h /
                                          std::max(1.0, a.norm_inf()));
      }
      if (k == n - 1) {
        stokes_resid = std::max(stokes_resid, std::abs(integrate(da)) * h /
                                                  (vol * std::max(1.0, a.norm_inf())));
      }
      // <da, b> + (-1)^k <a, db> = 0 for b of degree n-k-1.
      const Form b = random_form(grid, n - k - 1, seed + 77 + static_cast<std::uint64_t>(k));
      const double lhs = pairing(da, b);
      const double rhs = pairing(a, exterior_derivative(b));
      const double sign = (k % 2 == 0) ? 1.0 : -1.0;
      adj_resid = std::max(adj_resid, std::abs(lhs + sign * rhs) /
                                          (1.0 + std::abs(lhs) + std::abs(rhs)));
    }
    for (int k = 0; k <= n; ++k) {
      const Form a = random_form(grid, k, seed + 31 + static_cast<std::uint64_t>(k));
      const double sign = ((k * (n - k)) % 2 == 0) ? 1.0 : -1.0;
      hodge_resid = std::max(hodge_resid, rel_form_diff(hodge(hodge(a)), sign * a));
      if (k >= 1) {
        const VectorField x = random_vector_field(grid, seed + 5);
        const Form once = interior_product(x, a);
        if (k >= 2) {
          ix_resid = std::max(ix_resid, interior_product(x, once).norm_inf() /
                                            (1.0 + a.norm_inf()));
        }
      }
    }
    const Form one = random_form(grid, 1, seed + 13);
    sharp_resid = std::max(sharp_resid, rel_form_diff(flat(sharp(one)), one));

    const VectorField x = random_vector_field(grid, seed + 99);
    const Form f = random_form(grid, 0, seed + 7);
    lie_resid = std::max(lie_resid, rel_form_diff(lie_derivative(x, f),
                                                  interior_product(x, exterior_derivative(f))));
    const Form top = random_form(grid, n, seed + 8);
    lie_resid = std::max(
        lie_resid, rel_form_diff(lie_derivative(x, top),
                                 exterior_derivative(interior_product(x, top))));
  }

  out.add("dec", "d_after_d_vanishes", dd_resid, 1e-13,
          "residual scaled by h_min^2 / |a|");
  out.add("dec", "stokes_integral_of_exact_form", stokes_resid, 1e-13,
          "periodic telescoping of centered differences");
  out.add("dec", "integral_adjointness_of_d", adj_resid, 1e-12,
          "<da,b> + (-1)^k <a,db> = 0");
  out.add("dec", "hodge_involution_sign", hodge_resid, 1e-13);
  out.add("dec", "sharp_flat_roundtrip", sharp_resid, 1e-14);
  out.add("dec", "interior_product_nilpotent", ix_resid, 1e-13);
  out.add("dec", "lie_derivative_degree_cases", lie_resid, 1e-14,
          "degree 0 and top-degree Cartan reductions");

  // Discrete L2 positivity of the pairing a ^ *a.
  {
    const Grid grid = unit_torus(2, 8);
    const Form a = random_form(grid, 1, seed + 555);
    const double norm = pairing(a, hodge(a));
    const Form zero(grid, 1);
    const bool ok = norm > 0.0 && pairing(zero, hodge(zero)) == 0.0;
    out.add("dec", "l2_pairing_positive", ok ? 0.0 : 1.0, 0.5,
            "integral(a ^ *a) = " + fmt(norm));
  }
}

// ---------------------------------------------------------------- dirac suite

void check_dirac(Collector& out, std::uint64_t seed) {
  // Skewness of the canonical map under the fixed operand order; holds for
  // k(n-k) even, which covers every configuration this project uses.
  double skew_resid = 0.0;
  for (const Grid& grid : sweep_grids()) {
    const int n = grid.dim();
    for (int k = 0; k < n; ++k) {
      if ((k * (n - k)) % 2 != 0) continue;
      for (int draw = 0; draw < 5; ++draw) {
        const std::uint64_t s = seed + static_cast<std::uint64_t>(1000 * n + 100 * k + draw);
        const CotangentAtPhase e(random_form(grid, n - k, s), random_form(grid, k, s + 1));
        const CotangentAtPhase ep(random_form(grid, n - k, s + 2),
                                  random_form(grid, k, s + 3));
        const double lhs = phase_duality(e, canonical_sharp(ep));
        const double rhs = phase_duality(ep, canonical_sharp(e));
        skew_resid = std::max(skew_resid, rel_diff(lhs, -rhs));
      }
    }
  }
  out.add("dirac", "canonical_sharp_skew", skew_resid, 1e-12,
          "configurations with k(n-k) even");

  const Grid circle = unit_torus(1, 8);
  out.add("dirac", "graph_isotropy", isotropy_residual(circle, 0, 100, seed), 1e-12,
          "100 samples, max mutual pairing");

  // Linearity: sharp(a e + b e') assembled both ways is bitwise identical.
  {
    const Grid grid = unit_torus(2, 8);
    const CotangentAtPhase e(random_form(grid, 1, seed + 41), random_form(grid, 1, seed + 42));
    const CotangentAtPhase ep(random_form(grid, 1, seed + 43), random_form(grid, 1, seed + 44));
    const double a = 1.25, b = -0.75;
    const CotangentAtPhase combo(a * e.e_rho + b * ep.e_rho, a * e.e_pi + b * ep.e_pi);
    const TangentAtPhase lhs = canonical_sharp(combo);
    const TangentAtPhase r1 = canonical_sharp(e);
    const TangentAtPhase r2 = canonical_sharp(ep);
    const double resid =
        std::max(max_abs_diff(lhs.rho_dot, a * r1.rho_dot + b * r2.rho_dot),
                 max_abs_diff(lhs.pi_dot, a * r1.pi_dot + b * r2.pi_dot));
    out.add("dirac", "sharp_linearity", resid, 1e-14);
  }
}

// ------------------------------------------------------------ reduction suite

void check_reduction(Collector& out, std::uint64_t seed) {
  double gauge_resid = 0.0;
  double adj_resid = 0.0;
  double diagram_resid = 0.0;
  double skew_resid = 0.0;
  double exact_resid = 0.0;

  for (const Grid& grid : sweep_grids()) {
    const int n = grid.dim();
    const double h = grid.min_spacing();
    for (int k = 0; k < n; ++k) {
      const std::uint64_t s = seed + static_cast<std::uint64_t>(7000 * n + 300 * k);
      const PhasePoint point(random_form(grid, k, s), random_form(grid, n - k, s + 1));
      const ReducedState base = quotient_project(point);

      // Invariance under the additive action (constant shift when k = 0).
      Form shifted = point.rho;
      if (k >= 1) {
        shifted = gauge_act(point.rho, random_form(grid, k - 1, s + 2));
      } else {
        for (double& v : shifted.component(0)) v += 0.37;
      }
      const ReducedState moved = quotient_project(PhasePoint(shifted, point.pi));
      gauge_resid = std::max(gauge_resid,
                             max_abs_diff(base.rho_bar, moved.rho_bar) * h * h /
                                 std::max(1.0, point.rho.norm_inf()));

      for (int draw = 0; draw < 10; ++draw) {
        const std::uint64_t sd = s + 10 + static_cast<std::uint64_t>(4 * draw);
        const ReducedCotangent e(random_form(grid, n - k - 1, sd),
                                 random_form(grid, k, sd + 1));
        const TangentAtPhase v(random_form(grid, k, sd + 2),
                               random_form(grid, n - k, sd + 3));
        const double lhs = phase_duality(cotangent_quotient(e), v);
        const double rhs = reduced_duality(e, tangent_quotient(v));
        adj_resid = std::max(adj_resid, rel_diff(lhs, rhs));
      }

      const SignSignature sig = SignSignature::make(n, k);
      const ReducedCotangent e(random_form(grid, n - k - 1, s + 50),
                               random_form(grid, k, s + 51));
      const ReducedTangent closed = reduced_sharp(e, sig);
      const ReducedTangent composed = reduced_sharp_composed(e);
      diagram_resid = std::max(diagram_resid,
                               std::max(rel_form_diff(closed.rho_bar_dot, composed.rho_bar_dot),
                                        rel_form_diff(closed.pi_bar_dot, composed.pi_bar_dot)));

      if ((k * (n - k)) % 2 == 0) {
        const ReducedCotangent ep(random_form(grid, n - k - 1, s + 60),
                                  random_form(grid, k, s + 61));
        const double lhs = reduced_duality(e, reduced_sharp(ep, sig));
        const double rhs = reduced_duality(ep, reduced_sharp(e, sig));
        skew_resid = std::max(skew_resid, rel_diff(lhs, -rhs));
      }

      if (k + 1 < n) {
        exact_resid = std::max(exact_resid,
                               exterior_derivative(closed.rho_bar_dot).norm_inf() * h * h /
                                   std::max(1.0, closed.rho_bar_dot.norm_inf()));
      }
    }
  }

  out.add("reduction", "gauge_invariance_of_projection", gauge_resid, 1e-13);
  out.add("reduction", "adjointness_tangent_cotangent", adj_resid, 1e-12,
          "10 draws per configuration");
  out.add("reduction", "diagram_commutation", diagram_resid, 1e-12,
          "closed form vs composed quotient maps");
  out.add("reduction", "reduced_sharp_skew", skew_resid, 1e-12,
          "configurations with k(n-k) even");
  out.add("reduction", "reduced_output_exactness", exact_resid, 1e-13,
          "first output slot stays in the range of d");

  double sd_resid = 0.0;
  for (const SignRow& row : sign_table(3, seed)) {
    if (row.n % 2 == 1) sd_resid = std::max(sd_resid, row.resid_sd_matrix);
  }
  out.add("reduction", "flow_effort_matrix_odd_dimensions", sd_resid, 1e-12,
          "f_p = (-1)^r d e_q and f_q = d e_p for odd n");
}

// -------------------------------------------------------- fluid field helpers

Form analytic_scalar(const Grid& grid, int which) {
  Form f(grid, 0);
  auto& arr = f.component(0);
  for (std::size_t i = 0; i < grid.node_count(); ++i) {
    const auto x = grid.node_coords(i);
    switch (which) {
      case 0: arr[i] = 0.4 * std::sin(x[1]) + 0.3 * std::cos(x[2]); break;
      case 1: arr[i] = 0.5 * std::sin(x[2]) + 0.2 * std::cos(x[0]) * std::sin(x[1]); break;
      default: arr[i] = 0.3 * std::cos(x[0]) * std::cos(x[2]) - 0.2 * std::sin(x[1]); break;
    }
  }
  return f;
}

Form analytic_one_form(const Grid& grid, int which) {
  Form f(grid, 1);
  for (std::size_t i = 0; i < grid.node_count(); ++i) {
    const auto x = grid.node_coords(i);
    double c[3];
    if (which == 0) {
      c[0] = 0.3 * std::cos(x[1]) + 0.2 * std::sin(x[2]);
      c[1] = 0.25 * std::cos(x[2]) - 0.15 * std::sin(x[0]);
      c[2] = 0.2 * std::cos(x[0]) + 0.1 * std::sin(x[1]);
    } else {
      c[0] = -0.2 * std::sin(x[2]) + 0.15 * std::cos(x[1]);
      c[1] = 0.3 * std::cos(x[0]);
      c[2] = 0.25 * std::sin(x[1]) - 0.1 * std::cos(x[2]);
    }
    for (int axis = 0; axis < 3; ++axis) {
      f.component(f.index_of(1u << axis))[i] = c[axis];
    }
  }
  return f;
}

Form analytic_two_form(const Grid& grid) {
  Form f(grid, 2);
  for (std::size_t i = 0; i < grid.node_count(); ++i) {
    const auto x = grid.node_coords(i);
    f.component(f.index_of(0b011))[i] = 0.2 * std::cos(x[2]) + 0.1 * std::sin(x[0]);
    f.component(f.index_of(0b101))[i] = -0.3 * std::sin(x[0]) + 0.2 * std::cos(x[1]);
    f.component(f.index_of(0b110))[i] = 0.25 * std::cos(x[1]) - 0.15 * std::sin(x[2]);
  }
  return f;
}

Form analytic_density(const Grid& grid) {
  Form rho(grid, 3);
  auto& arr = rho.component(0);
  for (std::size_t i = 0; i < grid.node_count(); ++i) {
    const auto x = grid.node_coords(i);
    arr[i] = (2.0 + 0.3 * std::sin(x[0]) * std::cos(x[1]) + 0.2 * std::sin(x[2])) *
             grid.volume_scale();
  }
  return rho;
}

Form volume_form(const Grid& grid) {
  Form unit(grid, 0);
  for (double& v : unit.component(0)) v = 1.0;
  return hodge(unit);
}

Form random_density(const Grid& grid, std::uint64_t seed) {
  return pointwise_multiply(random_positive_scalar(grid, seed), volume_form(grid));
}

AlgebraElement analytic_algebra(const Grid& grid, int which) {
  return AlgebraElement(sharp(analytic_one_form(grid, which)),
                        analytic_scalar(grid, which));
}

double coadjoint_duality_residual(const Grid& grid) {
  const AlgebraElement a = analytic_algebra(grid, 0);
  const AlgebraElement b = analytic_algebra(grid, 1);
  const MomentumState mu(analytic_one_form(grid, 1), analytic_density(grid));
  const double lhs = s_duality(b, coadjoint_star(a, mu));
  const double rhs = s_duality(algebra_bracket(a, b), mu);
  return std::abs(lhs - rhs);
}

double fluid_energy_rate(const Grid& grid, const FluidParams& params) {
  const FluidState s(analytic_one_form(grid, 0), analytic_density(grid));
  const FluidCotangent e = fluid_efforts(s, params);
  const FluidTangent xdot = fluid_evolution(s, params);
  return std::abs(v_duality(e, xdot)) / (1.0 + std::abs(fluid_hamiltonian(s, params)));
}

// ---------------------------------------------------------------- fluid suite

void check_fluid(Collector& out, std::uint64_t seed) {
  const Grid grid = unit_torus(3, 8);

  double dual_adj = 0.0;
  double composition = 0.0;
  double convective = 0.0;
  for (int draw = 0; draw < 10; ++draw) {
    const std::uint64_t s = seed + static_cast<std::uint64_t>(100 * draw);
    const MomentumState mu(random_form(grid, 1, s), random_density(grid, s + 1));
    const FluidCotangent e(random_form(grid, 2, s + 2), random_form(grid, 0, s + 3));
    const MomentumTangent v(random_form(grid, 1, s + 4), random_form(grid, 3, s + 5));

    const AlgebraElement pulled = cotangent_phi(e, mu);
    const double lhs = s_duality(pulled, v);
    const double rhs = v_duality(e, tangent_phi(v, mu));
    dual_adj = std::max(dual_adj, rel_diff(lhs, rhs));

    const FluidState state = phi(mu);
    const FluidTangent direct = velocity_sharp(e, state);
    const FluidTangent composed =
        tangent_phi(lie_poisson_sharp_momentum(flat(pulled.xi), pulled.f, mu), mu);
    composition = std::max(composition,
                           std::max(rel_form_diff(direct.theta_dot, composed.theta_dot),
                                    rel_form_diff(direct.rho_dot, composed.rho_dot)));

    const auto paths = convective_term(e.e_theta, state.theta, state.rho);
    convective = std::max(convective, rel_form_diff(paths.first, paths.second));
  }
  out.add("fluid", "dual_map_adjointness", dual_adj, 1e-10,
          "pairing of the pulled-back cotangent vs pushed tangent");
  out.add("fluid", "velocity_map_composition", composition, 1e-10,
          "direct velocity map vs three-map composition");
  out.add("fluid", "convective_term_two_routes", convective, 1e-12,
          "contraction route vs Hodge route, pointwise");

  {
    // The duality defect is a centered-difference product-rule failure; on
    // mode-1 fields its symbol is sin(h)/h - sin(2h)/(2h), so the observed
    // order between N and 2N is 2 + log2((1 - h^2/4)/(1 - h^2/16)) + O(h^4),
    // which is 1.83 at N = 8 for every field choice and approaches 2 from
    // below. Assert the asymptotic measurement and report both.
    const double r8 = coadjoint_duality_residual(unit_torus(3, 8));
    const double r16 = coadjoint_duality_residual(unit_torus(3, 16));
    const double r32 = coadjoint_duality_residual(unit_torus(3, 32));
    const double order_coarse = std::log2(r8 / r16);
    const double order_fine = std::log2(r16 / r32);
    out.add("fluid", "coadjoint_duality_order", 1.9 - order_fine, 0.0,
            "residual " + fmt(r8) + " -> " + fmt(r16) + " -> " + fmt(r32) + ", order " +
                fmt(order_coarse) + " then " + fmt(order_fine));
  }

  {
    const VectorField x = random_vector_field(grid, seed + 7);
    const Form rho = analytic_density(grid);
    const Form rho_tilde = density_scalar(rho);
    const Form e_theta = random_form(grid, 2, seed + 8);

    // i_X dV = e_theta / *rho with X = x_field(e_theta, rho).
    const Form dV = volume_form(grid);
    const Form lhs = interior_product(x_field(e_theta, rho), dV);
    const Form rhs = pointwise_divide(e_theta, rho_tilde);
    out.add("fluid", "interior_volume_identity", rel_form_diff(lhs, rhs), 1e-13);

    const Form transport = lie_derivative(x, rho);
    const Form reconstructed = pointwise_multiply(div_rho(x, rho), rho);
    out.add("fluid", "density_divergence_definition",
            rel_form_diff(transport, reconstructed), 1e-13);

    const Form rho_dot = exterior_derivative(e_theta);
    out.add("fluid", "mass_casimir_exactness",
            std::abs(integrate(rho_dot)) * grid.min_spacing() /
                (grid.cell_volume() * static_cast<double>(grid.node_count()) *
                 std::max(1.0, e_theta.norm_inf())),
            1e-12, "density rates are exact forms");
  }

  {
    const FluidState s(analytic_one_form(grid, 0), analytic_density(grid));
    const FluidCotangent e(analytic_two_form(grid), analytic_scalar(grid, 0));
    const FluidCotangent ep(random_form(grid, 2, seed + 21), random_form(grid, 0, seed + 22));
    const double lhs = v_duality(e, velocity_sharp(ep, s));
    const double rhs = v_duality(ep, velocity_sharp(e, s));
    out.add("fluid", "velocity_sharp_antisymmetry", rel_diff(lhs, -rhs), 1e-12,
            "exact here: pointwise contraction algebra plus summation by parts");
  }
}

// -------------------------------------------------------------- systems suite

void check_systems(Collector& out, std::uint64_t seed) {
  const Grid line = unit_torus(1, 16);
  const Grid box = unit_torus(3, 8);
  const TelegrapherParams tp{1.0, 1.0};
  const StringParams sp{1.0, 1.0};
  const FluidParams fp{1.0, 1.4};
  const double eps = 1e-5;

  double effort_resid = 0.0;
  {
    const LineState s(random_form(line, 1, seed + 1), random_form(line, 1, seed + 2));
    const Form drho = random_form(line, 1, seed + 3);
    const Form dpi = random_form(line, 1, seed + 4);
    const auto check_line = [&](auto hamiltonian, const ReducedCotangent& efforts) {
      const double dual = reduced_duality(efforts, ReducedTangent(drho, dpi));
      const LineState plus(s.rho_bar + eps * drho, s.pi_bar + eps * dpi);
      const LineState minus(s.rho_bar - eps * drho, s.pi_bar - eps * dpi);
      const double fd = (hamiltonian(plus) - hamiltonian(minus)) / (2.0 * eps);
      return rel_diff(dual, fd);
    };
    effort_resid = std::max(effort_resid,
                            check_line([&](const LineState& x) { return telegrapher_hamiltonian(x, tp); },
                                       telegrapher_efforts(s, tp)));
    effort_resid = std::max(effort_resid,
                            check_line([&](const LineState& x) { return string_hamiltonian(x, sp); },
                                       string_efforts(s, sp)));
  }
  {
    const MaxwellState s(random_form(box, 2, seed + 5), random_form(box, 2, seed + 6));
    const Form dB = random_form(box, 2, seed + 7);
    const Form dPi = random_form(box, 2, seed + 8);
    const ReducedCotangent efforts = maxwell_efforts(s);
    const double dual = reduced_duality(efforts, ReducedTangent(dB, dPi));
    const double hp = maxwell_hamiltonian(MaxwellState(s.B + eps * dB, s.D - eps * dPi));
    const double hm = maxwell_hamiltonian(MaxwellState(s.B - eps * dB, s.D + eps * dPi));
    effort_resid = std::max(effort_resid, rel_diff(dual, (hp - hm) / (2.0 * eps)));
  }
  {
    const FluidState s(analytic_one_form(box, 0), analytic_density(box));
    const Form dtheta = random_form(box, 1, seed + 9, 0.5);
    const Form drho = random_form(box, 3, seed + 10, 0.2);
    const double dual = v_duality(fluid_efforts(s, fp), FluidTangent(dtheta, drho));
    const double hp = fluid_hamiltonian(FluidState(s.theta + eps * dtheta, s.rho + eps * drho), fp);
    const double hm = fluid_hamiltonian(FluidState(s.theta - eps * dtheta, s.rho - eps * drho), fp);
    effort_resid = std::max(effort_resid, rel_diff(dual, (hp - hm) / (2.0 * eps)));
  }
  out.add("systems", "efforts_match_functional_derivative", effort_resid, 1e-6,
          "central differences at eps = 1e-5");

  {
    const MaxwellState s(random_form(box, 2, seed + 11), random_form(box, 2, seed + 12));
    const auto dot = maxwell_evolution(s);
    const Form b_expected = -exterior_derivative(hodge(s.D));
    const Form d_expected = exterior_derivative(hodge(s.B));
    const double resid = std::max(rel_form_diff(dot.first, b_expected),
                                  rel_form_diff(dot.second, d_expected));
    out.add("systems", "maxwell_component_equations", resid, 1e-12,
            "B_dot = -d*D and D_dot = d*B");

    const Form A = random_form(box, 1, seed + 13);
    const Form f = random_form(box, 0, seed + 14);
    const Form A_gauge = gauge_act(A, f);
    const double h0 = maxwell_hamiltonian_unreduced(A, s.D);
    const double h1 = maxwell_hamiltonian_unreduced(A_gauge, s.D);
    out.add("systems", "maxwell_gauge_invariance", rel_diff(h0, h1), 1e-12);
  }

  {
    const LineState s(random_form(line, 1, seed + 15), random_form(line, 1, seed + 16));
    const TelegrapherParams p{2.0, 0.5};
    const ReducedTangent dot = telegrapher_evolution(s, p);
    // Direct component equations: with V = *q/C and I = -*pi/L,
    // q_dot = -d I and pi_dot = d V.
    const Form current = (-1.0 / p.inductance) * hodge(s.pi_bar);
    const Form voltage = (1.0 / p.capacitance) * hodge(s.rho_bar);
    const double resid =
        std::max(rel_form_diff(dot.rho_bar_dot, -exterior_derivative(current)),
                 rel_form_diff(dot.pi_bar_dot, exterior_derivative(voltage)));
    out.add("systems", "telegrapher_component_equations", resid, 1e-12,
            "L I_t + V_x = 0 and C V_t + I_x = 0");
  }

  {
    const LineState s(random_form(line, 1, seed + 17), random_form(line, 1, seed + 18));
    const StringParams p{2.5, 0.8};
    const ReducedTangent dot = string_evolution(s, p);
    const Form strain_rate = exterior_derivative((1.0 / p.mass_density) * hodge(s.pi_bar));
    const Form momentum_rate = exterior_derivative(p.tension * hodge(s.rho_bar));
    const double resid = std::max(rel_form_diff(dot.rho_bar_dot, strain_rate),
                                  rel_form_diff(dot.pi_bar_dot, momentum_rate));
    out.add("systems", "string_component_equations", resid, 1e-12,
            "strain_t = d(pi/mu)* and momentum_t = d(T eps)*");
  }

  {
    double skew = 0.0;
    const LineState ls(random_form(line, 1, seed + 19), random_form(line, 1, seed + 20));
    skew = std::max(skew, std::abs(reduced_duality(telegrapher_efforts(ls, tp),
                                                   telegrapher_evolution(ls, tp))) /
                              (1.0 + std::abs(telegrapher_hamiltonian(ls, tp))));
    skew = std::max(skew, std::abs(reduced_duality(string_efforts(ls, sp),
                                                   string_evolution(ls, sp))) /
                              (1.0 + std::abs(string_hamiltonian(ls, sp))));
    const MaxwellState ms(random_form(box, 2, seed + 21), random_form(box, 2, seed + 22));
    skew = std::max(skew, std::abs(reduced_duality(maxwell_efforts(ms),
                                                   maxwell_evolution_reduced(ms))) /
                              (1.0 + std::abs(maxwell_hamiltonian(ms))));
    out.add("systems", "energy_skewness_linear_systems", skew, 1e-12,
            "dH/dt along the flow, relative to H");
  }

  {
    // Continuity in divergence form, assembled by independent axis loops.
    const FluidState s(analytic_one_form(box, 0), analytic_density(box));
    const FluidTangent dot = fluid_evolution(s, fp);
    const Form rho_tilde = density_scalar(s.rho);
    Form oracle(box, 3);
    auto& target = oracle.component(0);
    const VectorField v = sharp(s.theta);
    for (int axis = 0; axis < 3; ++axis) {
      std::vector<double> flux(box.node_count());
      const auto& vi = v.component(axis);
      const auto& rt = rho_tilde.component(0);
      for (std::size_t i = 0; i < flux.size(); ++i) flux[i] = rt[i] * vi[i];
      const auto d = centered_diff(box, flux, axis);
      for (std::size_t i = 0; i < flux.size(); ++i) {
        target[i] -= d[i] * box.volume_scale();
      }
    }
    out.add("systems", "fluid_continuity_divergence_form",
            rel_form_diff(dot.rho_dot, oracle), 1e-10,
            "rho_t + div(rho v) = 0 against an axis-loop oracle");

    out.add("systems", "fluid_mass_rate_zero",
            std::abs(integrate(dot.rho_dot)) / (1.0 + std::abs(integrate(s.rho))), 1e-12);
  }

  {
    const double r8 = fluid_energy_rate(unit_torus(3, 8), fp);
    const double r16 = fluid_energy_rate(unit_torus(3, 16), fp);
    const double floor = 1e-12;
    const bool at_floor = r8 <= floor && r16 <= floor;
    const double order = at_floor ? 99.0 : std::log2(r8 / r16);
    out.add("systems", "fluid_energy_rate_refinement",
            at_floor ? 0.0 : std::max(0.0, 1.9 - order), 0.0,
            at_floor ? "at roundoff floor at both resolutions (" + fmt(r8) + ", " +
                           fmt(r16) + ")"
                     : "order " + fmt(order));
  }
}

}  // namespace

std::vector<CheckResult> run_checks(const std::string& suite, std::uint64_t seed,
                                    double tol_scale) {
  const bool all = suite == "all";
  if (!all && suite != "dec" && suite != "dirac" && suite != "reduction" &&
      suite != "fluid" && suite != "systems") {
    throw ConfigError("unknown suite \"" + suite +
                      "\" (expected all, dec, dirac, reduction, fluid, systems)");
  }
  Collector collector;
  collector.tol_scale = tol_scale;
  if (all || suite == "dec") check_dec(collector, seed);
  if (all || suite == "dirac") check_dirac(collector, seed);
  if (all || suite == "reduction") check_reduction(collector, seed);
  if (all || suite == "fluid") check_fluid(collector, seed);
  if (all || suite == "systems") check_systems(collector, seed);
  std::sort(collector.results.begin(), collector.results.end(),
            [](const CheckResult& a, const CheckResult& b) {
              return a.suite != b.suite ? a.suite < b.suite : a.name < b.name;
            });
  return collector.results;
}

}  // namespace sdlab
