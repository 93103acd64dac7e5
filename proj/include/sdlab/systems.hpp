#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "sdlab/gauge_reduction.hpp"
#include "sdlab/lie_poisson_fluid.hpp"

namespace sdlab {

// Invalid configuration input (bad JSON, unknown fields, out-of-range
// parameters). The CLI maps this to a usage error exit code.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Maxwell: configuration degree k = 1 on a 3-d grid, state (B, D) of 2-forms
// with the momentum bookkeeping Pi = -D.
// ---------------------------------------------------------------------------

struct MaxwellState {
  Form B;  // degree 2
  Form D;  // degree 2

  MaxwellState(Form b, Form d);
};

double maxwell_hamiltonian(const MaxwellState& s);

// Unreduced energy as a functional of the potential: (1/2) integral of
// (D ^ *D + dA ^ *dA); invariant under A -> A + df.
double maxwell_hamiltonian_unreduced(const Form& A, const Form& D);

// Variational derivatives with the Pi = -D bookkeeping:
// e_rho_bar = *B, e_pi_bar = -*D.
ReducedCotangent maxwell_efforts(const MaxwellState& s);

// Structure map output (B_dot, Pi_dot).
ReducedTangent maxwell_evolution_reduced(const MaxwellState& s);

// (B_dot, D_dot) with D_dot = -Pi_dot; recovers B_dot = -d*D, D_dot = d*B.
std::pair<Form, Form> maxwell_evolution(const MaxwellState& s);

// ---------------------------------------------------------------------------
// Transmission line: n = 1, k = 0, state (q_bar, pi_bar) of 1-forms holding
// the charge density and the momentum pi_bar = -L I dx; V = *q_bar / C.
// ---------------------------------------------------------------------------

struct TelegrapherParams {
  double inductance = 1.0;   // L
  double capacitance = 1.0;  // C
};

struct LineState {
  Form rho_bar;  // degree 1
  Form pi_bar;   // degree 1

  LineState(Form rho, Form pi);
};

double telegrapher_hamiltonian(const LineState& s, const TelegrapherParams& p);
ReducedCotangent telegrapher_efforts(const LineState& s, const TelegrapherParams& p);
ReducedTangent telegrapher_evolution(const LineState& s, const TelegrapherParams& p);

// ---------------------------------------------------------------------------
// Vibrating string: n = 1, k = 0, reduced state (strain du, momentum) with
// H = (1/2) integral(T eps ^ *eps + pi ^ *pi / mu); recovers
// mu u_tt = T u_xx.
// ---------------------------------------------------------------------------

struct StringParams {
  double tension = 1.0;       // T
  double mass_density = 1.0;  // mu
};

double string_hamiltonian(const LineState& s, const StringParams& p);
ReducedCotangent string_efforts(const LineState& s, const StringParams& p);
ReducedTangent string_evolution(const LineState& s, const StringParams& p);

// ---------------------------------------------------------------------------
// Compressible isentropic fluid in the velocity representation, with the
// ideal-gas internal energy U(r) = K r^{gamma-1} / (gamma-1).
// ---------------------------------------------------------------------------

struct FluidParams {
  double gas_constant = 1.0;  // K
  double adiabatic_index = 1.4;
};

double fluid_internal_energy(double rho_tilde, const FluidParams& p);
double fluid_hamiltonian(const FluidState& s, const FluidParams& p);

// e_theta = i_{theta^sharp} rho (mass-flux 2-form),
// e_rho = |v|^2 / 2 + d(r U(r))/dr (Bernoulli 0-form).
FluidCotangent fluid_efforts(const FluidState& s, const FluidParams& p);

// Time evolution is minus the structure map applied to the efforts; the
// density equation is the continuity law rho_dot = -d(i_{v^sharp} rho).
FluidTangent fluid_evolution(const FluidState& s, const FluidParams& p);

// ---------------------------------------------------------------------------
// System description and the flat-vector adapter used by the integrators.
// ---------------------------------------------------------------------------

struct SystemSpec {
  std::string system;  // telegrapher | string | maxwell | fluid
  Grid grid;
  TelegrapherParams telegrapher;
  StringParams string;
  FluidParams fluid;
};

// Parses { "system": ..., "grid": { "sizes": [...], "spacings": [...],
// "metric": [...] }, "params": {...} }. Spacings default to 2 pi / N per
// axis and the metric to ones. Throws ConfigError naming the offending
// field.
SystemSpec system_spec_from_json(const nlohmann::json& j);
SystemSpec load_system_spec(const std::string& path);

struct SimulatedSystem {
  std::string name;
  std::vector<double> initial;
  std::function<std::vector<double>(const std::vector<double>&)> rhs;
  std::function<double(const std::vector<double>&)> hamiltonian;
  std::function<double(const std::vector<double>&)> conserved;
  std::string conserved_label;
  std::function<std::vector<std::pair<std::string, Form>>(const std::vector<double>&)>
      fields;
};

// Wires a spec to its evolution operator with deterministic smooth initial
// data (single low modes; see README).
SimulatedSystem make_simulated_system(const SystemSpec& spec);

}  // namespace sdlab
