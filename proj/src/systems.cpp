#include "sdlab/systems.hpp"

#include <cmath>
#include <fstream>

namespace sdlab {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

void require_dim(const Grid& grid, int n, const char* what) {
  if (grid.dim() != n) {
    throw std::invalid_argument(std::string(what) + ": grid dimension must be " +
                                std::to_string(n));
  }
}

// Pointwise squared metric norm of a 1-form, as a 0-form.
Form norm_sq(const Form& one_form) {
  return hodge(wedge(one_form, hodge(one_form)));
}

std::vector<double> pack_forms(const std::vector<const Form*>& forms) {
  std::vector<double> out;
  for (const Form* f : forms) {
    for (int c = 0; c < f->component_count(); ++c) {
      const auto& arr = f->component(c);
      out.insert(out.end(), arr.begin(), arr.end());
    }
  }
  return out;
}

void unpack_forms(const std::vector<double>& x, std::vector<Form*> forms) {
  std::size_t pos = 0;
  for (Form* f : forms) {
    for (int c = 0; c < f->component_count(); ++c) {
      auto& arr = f->component(c);
      std::copy(x.begin() + static_cast<std::ptrdiff_t>(pos),
                x.begin() + static_cast<std::ptrdiff_t>(pos + arr.size()), arr.begin());
      pos += arr.size();
    }
  }
  if (pos != x.size()) {
    throw std::invalid_argument("unpack_forms: state vector length mismatch");
  }
}

}  // namespace

// --------------------------------------------------------------------- Maxwell

MaxwellState::MaxwellState(Form b, Form d) : B(std::move(b)), D(std::move(d)) {
  require_dim(B.grid(), 3, "MaxwellState");
  if (B.degree() != 2 || D.degree() != 2 || B.grid() != D.grid()) {
    throw std::invalid_argument("MaxwellState: B and D must be 2-forms on one 3-d grid");
  }
}

double maxwell_hamiltonian(const MaxwellState& s) {
  return 0.5 * (pairing(s.D, hodge(s.D)) + pairing(s.B, hodge(s.B)));
}

double maxwell_hamiltonian_unreduced(const Form& A, const Form& D) {
  require_dim(A.grid(), 3, "maxwell_hamiltonian_unreduced");
  if (A.degree() != 1 || D.degree() != 2) {
    throw std::invalid_argument(
        "maxwell_hamiltonian_unreduced: A must be a 1-form and D a 2-form");
  }
  const Form B = exterior_derivative(A);
  return 0.5 * (pairing(D, hodge(D)) + pairing(B, hodge(B)));
}

ReducedCotangent maxwell_efforts(const MaxwellState& s) {
  return ReducedCotangent(hodge(s.B), -hodge(s.D));
}

ReducedTangent maxwell_evolution_reduced(const MaxwellState& s) {
  return reduced_sharp(maxwell_efforts(s), SignSignature::make(3, 1));
}

std::pair<Form, Form> maxwell_evolution(const MaxwellState& s) {
  ReducedTangent t = maxwell_evolution_reduced(s);
  return {std::move(t.rho_bar_dot), -t.pi_bar_dot};
}

// ---------------------------------------------------------------- Transmission

LineState::LineState(Form rho, Form pi) : rho_bar(std::move(rho)), pi_bar(std::move(pi)) {
  require_dim(rho_bar.grid(), 1, "LineState");
  if (rho_bar.degree() != 1 || pi_bar.degree() != 1 || rho_bar.grid() != pi_bar.grid()) {
    throw std::invalid_argument("LineState: state must be two 1-forms on one 1-d grid");
  }
}

static void validate_telegrapher(const TelegrapherParams& p) {
  if (!(p.inductance > 0.0) || !(p.capacitance > 0.0)) {
    throw std::invalid_argument("telegrapher: inductance and capacitance must be positive");
  }
}

double telegrapher_hamiltonian(const LineState& s, const TelegrapherParams& p) {
  validate_telegrapher(p);
  return pairing(s.rho_bar, hodge(s.rho_bar)) / (2.0 * p.capacitance) +
         pairing(s.pi_bar, hodge(s.pi_bar)) / (2.0 * p.inductance);
}

ReducedCotangent telegrapher_efforts(const LineState& s, const TelegrapherParams& p) {
  validate_telegrapher(p);
  return ReducedCotangent((1.0 / p.capacitance) * hodge(s.rho_bar),
                          (1.0 / p.inductance) * hodge(s.pi_bar));
}

ReducedTangent telegrapher_evolution(const LineState& s, const TelegrapherParams& p) {
  return reduced_sharp_composed(telegrapher_efforts(s, p));
}

// --------------------------------------------------------------------- String

static void validate_string(const StringParams& p) {
  if (!(p.tension > 0.0) || !(p.mass_density > 0.0)) {
    throw std::invalid_argument("string: tension and mass density must be positive");
  }
}

double string_hamiltonian(const LineState& s, const StringParams& p) {
  validate_string(p);
  return 0.5 * (p.tension * pairing(s.rho_bar, hodge(s.rho_bar)) +
                pairing(s.pi_bar, hodge(s.pi_bar)) / p.mass_density);
}

ReducedCotangent string_efforts(const LineState& s, const StringParams& p) {
  validate_string(p);
  return ReducedCotangent(p.tension * hodge(s.rho_bar),
                          (1.0 / p.mass_density) * hodge(s.pi_bar));
}

ReducedTangent string_evolution(const LineState& s, const StringParams& p) {
  return reduced_sharp_composed(string_efforts(s, p));
}

// ---------------------------------------------------------------------- Fluid

static void validate_fluid(const FluidParams& p) {
  if (!(p.gas_constant > 0.0) || !(p.adiabatic_index > 1.0)) {
    throw std::invalid_argument("fluid: needs gas constant > 0 and adiabatic index > 1");
  }
}

double fluid_internal_energy(double rho_tilde, const FluidParams& p) {
  return p.gas_constant * std::pow(rho_tilde, p.adiabatic_index - 1.0) /
         (p.adiabatic_index - 1.0);
}

double fluid_hamiltonian(const FluidState& s, const FluidParams& p) {
  validate_fluid(p);
  const Form rho_tilde = density_scalar(s.rho);
  const Form kinetic = norm_sq(s.theta);
  Form energy_density(s.rho.grid(), 0);
  auto& e = energy_density.component(0);
  const auto& rt = rho_tilde.component(0);
  const auto& kin = kinetic.component(0);
  for (std::size_t i = 0; i < e.size(); ++i) {
    e[i] = 0.5 * rt[i] * kin[i] + rt[i] * fluid_internal_energy(rt[i], p);
  }
  Form unit(s.rho.grid(), 0);
  for (double& v : unit.component(0)) v = 1.0;
  return integrate(pointwise_multiply(energy_density, hodge(unit)));
}

FluidCotangent fluid_efforts(const FluidState& s, const FluidParams& p) {
  validate_fluid(p);
  const Form rho_tilde = density_scalar(s.rho);
  Form e_theta = interior_product(sharp(s.theta), s.rho);
  Form e_rho = norm_sq(s.theta);
  auto& er = e_rho.component(0);
  const auto& rt = rho_tilde.component(0);
  const double gamma = p.adiabatic_index;
  for (std::size_t i = 0; i < er.size(); ++i) {
    // d(r U(r))/dr = K gamma r^{gamma-1} / (gamma-1), the specific enthalpy.
    er[i] = 0.5 * er[i] +
            p.gas_constant * gamma * std::pow(rt[i], gamma - 1.0) / (gamma - 1.0);
  }
  return FluidCotangent(std::move(e_theta), std::move(e_rho));
}

FluidTangent fluid_evolution(const FluidState& s, const FluidParams& p) {
  const FluidTangent t = velocity_sharp(fluid_efforts(s, p), s);
  return FluidTangent(-t.theta_dot, -t.rho_dot);
}

// ----------------------------------------------------------------- SystemSpec

SystemSpec system_spec_from_json(const nlohmann::json& j) {
  if (!j.contains("system")) {
    throw ConfigError("config: missing required field \"system\"");
  }
  if (!j.at("system").is_string()) {
    throw ConfigError("config: field \"system\" must be a string");
  }
  const std::string system = j.at("system").get<std::string>();
  if (system != "telegrapher" && system != "string" && system != "maxwell" &&
      system != "fluid") {
    throw ConfigError("config: unknown system \"" + system + "\"");
  }

  if (!j.contains("grid") || !j.at("grid").contains("sizes")) {
    throw ConfigError("config: missing required field \"grid.sizes\"");
  }
  std::vector<int> sizes;
  std::vector<double> spacings;
  std::vector<double> metric;
  try {
    sizes = j.at("grid").at("sizes").get<std::vector<int>>();
    if (j.at("grid").contains("spacings")) {
      spacings = j.at("grid").at("spacings").get<std::vector<double>>();
    }
    if (j.at("grid").contains("metric")) {
      metric = j.at("grid").at("metric").get<std::vector<double>>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config: malformed \"grid\": ") + e.what());
  }
  if (spacings.empty()) {
    for (int n : sizes) spacings.push_back(kTwoPi / n);
  }
  SystemSpec spec{system, [&] {
                    try {
                      return Grid(sizes, spacings, metric);
                    } catch (const std::invalid_argument& e) {
                      throw ConfigError(std::string("config: field \"grid\": ") + e.what());
                    }
                  }(),
                  {}, {}, {}};

  const int need_dim = (spec.system == "telegrapher" || spec.system == "string") ? 1 : 3;
  if (spec.grid.dim() != need_dim) {
    throw ConfigError("config: system \"" + spec.system + "\" needs a " +
                      std::to_string(need_dim) + "-d grid");
  }

  const auto params = j.value("params", nlohmann::json::object());
  auto get = [&params](const char* key, double fallback) {
    if (!params.contains(key)) return fallback;
    if (!params.at(key).is_number()) {
      throw ConfigError(std::string("config: field \"params.") + key +
                        "\" must be a number");
    }
    return params.at(key).get<double>();
  };
  spec.telegrapher.inductance = get("L", 1.0);
  spec.telegrapher.capacitance = get("C", 1.0);
  spec.string.tension = get("T", 1.0);
  spec.string.mass_density = get("mu", 1.0);
  spec.fluid.gas_constant = get("K", 1.0);
  spec.fluid.adiabatic_index = get("gamma", 1.4);
  return spec;
}

SystemSpec load_system_spec(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("config: cannot open " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(is);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return system_spec_from_json(j);
}

// ----------------------------------------------------- simulation adapters

namespace {

SystemSpec validated(const SystemSpec& spec) {
  if (spec.system == "telegrapher") validate_telegrapher(spec.telegrapher);
  if (spec.system == "string") validate_string(spec.string);
  if (spec.system == "fluid") validate_fluid(spec.fluid);
  return spec;
}

SimulatedSystem make_line_system(const SystemSpec& spec) {
  const Grid grid = spec.grid;
  const bool telegrapher = spec.system == "telegrapher";
  const TelegrapherParams tp = spec.telegrapher;
  const StringParams sp = spec.string;

  Form rho0(grid, 1);
  Form pi0(grid, 1);
  if (telegrapher) {
    // Right-moving eigenmode: q = C cos(x), pi = -sqrt(LC) cos(x).
    const double c = tp.capacitance;
    const double z = std::sqrt(tp.inductance * tp.capacitance);
    for (std::size_t i = 0; i < grid.node_count(); ++i) {
      const double x = grid.node_coords(i)[0] * kTwoPi / grid.extent(0);
      rho0.component(0)[i] = c * std::cos(x);
      pi0.component(0)[i] = -z * std::cos(x);
    }
  } else {
    // Plucked string at rest: strain = d(sin x), momentum = 0.
    Form u(grid, 0);
    for (std::size_t i = 0; i < grid.node_count(); ++i) {
      const double x = grid.node_coords(i)[0] * kTwoPi / grid.extent(0);
      u.component(0)[i] = std::sin(x);
    }
    rho0 = exterior_derivative(u);
  }

  auto to_state = [grid](const std::vector<double>& x) {
    Form rho(grid, 1), pi(grid, 1);
    unpack_forms(x, {&rho, &pi});
    return LineState(std::move(rho), std::move(pi));
  };

  SimulatedSystem sim;
  sim.name = spec.system;
  sim.initial = pack_forms({&rho0, &pi0});
  sim.rhs = [to_state, telegrapher, tp, sp](const std::vector<double>& x) {
    const LineState s = to_state(x);
    const ReducedTangent t =
        telegrapher ? telegrapher_evolution(s, tp) : string_evolution(s, sp);
    return pack_forms({&t.rho_bar_dot, &t.pi_bar_dot});
  };
  sim.hamiltonian = [to_state, telegrapher, tp, sp](const std::vector<double>& x) {
    const LineState s = to_state(x);
    return telegrapher ? telegrapher_hamiltonian(s, tp) : string_hamiltonian(s, sp);
  };
  sim.conserved = [to_state, telegrapher](const std::vector<double>& x) {
    const LineState s = to_state(x);
    return integrate(telegrapher ? s.rho_bar : s.pi_bar);
  };
  sim.conserved_label = telegrapher ? "total charge" : "total momentum";
  sim.fields = [to_state, telegrapher](const std::vector<double>& x) {
    const LineState s = to_state(x);
    std::vector<std::pair<std::string, Form>> out;
    out.emplace_back(telegrapher ? "charge_density" : "strain", s.rho_bar);
    out.emplace_back("momentum", s.pi_bar);
    return out;
  };
  return sim;
}

SimulatedSystem make_maxwell_system(const SystemSpec& spec) {
  const Grid grid = spec.grid;

  // Single transverse mode along the third axis: B from a potential, D
  // rotated a quarter period.
  Form A(grid, 1);
  {
    auto& a1 = A.component(A.index_of(1u << 0));
    for (std::size_t i = 0; i < grid.node_count(); ++i) {
      const double x3 = grid.node_coords(i)[2] * kTwoPi / grid.extent(2);
      a1[i] = std::sin(x3);
    }
  }
  Form B0 = exterior_derivative(A);
  Form D0(grid, 2);
  {
    auto& d23 = D0.component(D0.index_of((1u << 1) | (1u << 2)));
    for (std::size_t i = 0; i < grid.node_count(); ++i) {
      const double x3 = grid.node_coords(i)[2] * kTwoPi / grid.extent(2);
      d23[i] = std::cos(x3);
    }
  }

  auto to_state = [grid](const std::vector<double>& x) {
    Form b(grid, 2), d(grid, 2);
    unpack_forms(x, {&b, &d});
    return MaxwellState(std::move(b), std::move(d));
  };

  SimulatedSystem sim;
  sim.name = "maxwell";
  sim.initial = pack_forms({&B0, &D0});
  sim.rhs = [to_state](const std::vector<double>& x) {
    const MaxwellState s = to_state(x);
    const auto dot = maxwell_evolution(s);
    return pack_forms({&dot.first, &dot.second});
  };
  sim.hamiltonian = [to_state](const std::vector<double>& x) {
    return maxwell_hamiltonian(to_state(x));
  };
  sim.conserved = [to_state, grid](const std::vector<double>& x) {
    // Electric flux through the (2,3) coordinate torus at x1 = 0; the flux
    // derivative d*B telescopes over the closed slice, so this is constant.
    const MaxwellState s = to_state(x);
    const auto& d23 = s.D.component(s.D.index_of((1u << 1) | (1u << 2)));
    double flux = 0.0;
    for (int i2 = 0; i2 < grid.size(1); ++i2) {
      for (int i3 = 0; i3 < grid.size(2); ++i3) {
        const std::size_t idx = static_cast<std::size_t>(i2) * grid.stride(1) +
                                static_cast<std::size_t>(i3) * grid.stride(2);
        flux += d23[idx];
      }
    }
    return flux * grid.spacing(1) * grid.spacing(2);
  };
  sim.conserved_label = "electric flux";
  sim.fields = [to_state](const std::vector<double>& x) {
    const MaxwellState s = to_state(x);
    std::vector<std::pair<std::string, Form>> out;
    out.emplace_back("B", s.B);
    out.emplace_back("D", s.D);
    return out;
  };
  return sim;
}

SimulatedSystem make_fluid_system(const SystemSpec& spec) {
  const Grid grid = spec.grid;
  const FluidParams fp = spec.fluid;

  Form theta0(grid, 1);
  Form rho0(grid, 3);
  for (std::size_t i = 0; i < grid.node_count(); ++i) {
    const auto xc = grid.node_coords(i);
    const double x1 = xc[0] * kTwoPi / grid.extent(0);
    const double x2 = xc[1] * kTwoPi / grid.extent(1);
    const double x3 = xc[2] * kTwoPi / grid.extent(2);
    theta0.component(theta0.index_of(1u << 0))[i] = 0.1 * std::cos(x2);
    theta0.component(theta0.index_of(1u << 1))[i] = 0.1 * std::cos(x3);
    theta0.component(theta0.index_of(1u << 2))[i] = 0.1 * std::cos(x1);
    rho0.component(0)[i] = (1.0 + 0.2 * std::cos(x1)) * grid.volume_scale();
  }

  auto to_state = [grid](const std::vector<double>& x) {
    Form theta(grid, 1), rho(grid, 3);
    unpack_forms(x, {&theta, &rho});
    return FluidState(std::move(theta), std::move(rho));
  };

  SimulatedSystem sim;
  sim.name = "fluid";
  sim.initial = pack_forms({&theta0, &rho0});
  sim.rhs = [to_state, fp](const std::vector<double>& x) {
    const FluidTangent t = fluid_evolution(to_state(x), fp);
    return pack_forms({&t.theta_dot, &t.rho_dot});
  };
  sim.hamiltonian = [to_state, fp](const std::vector<double>& x) {
    return fluid_hamiltonian(to_state(x), fp);
  };
  sim.conserved = [to_state](const std::vector<double>& x) {
    return integrate(to_state(x).rho);
  };
  sim.conserved_label = "total mass";
  sim.fields = [to_state](const std::vector<double>& x) {
    const FluidState s = to_state(x);
    std::vector<std::pair<std::string, Form>> out;
    out.emplace_back("theta", s.theta);
    out.emplace_back("rho", s.rho);
    return out;
  };
  return sim;
}

}  // namespace

SimulatedSystem make_simulated_system(const SystemSpec& spec_in) {
  const SystemSpec spec = validated(spec_in);
  if (spec.system == "telegrapher" || spec.system == "string") {
    return make_line_system(spec);
  }
  if (spec.system == "maxwell") {
    return make_maxwell_system(spec);
  }
  if (spec.system == "fluid") {
    return make_fluid_system(spec);
  }
  throw ConfigError("config: unknown system \"" + spec.system + "\"");
}

}  // namespace sdlab
