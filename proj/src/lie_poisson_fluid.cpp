#include "sdlab/lie_poisson_fluid.hpp"

#include <stdexcept>

namespace sdlab {

namespace {

constexpr double kDensityFloor = 1e-8;

void require_3d(const Grid& grid, const char* what) {
  if (grid.dim() != 3) {
    throw std::invalid_argument(std::string(what) + ": fluid machinery needs a 3-d grid");
  }
}

void require_degree(const Form& form, int degree, const char* what) {
  if (form.degree() != degree) {
    throw std::invalid_argument(std::string(what) + ": wrong form degree");
  }
}

}  // namespace

AlgebraElement::AlgebraElement(VectorField xi_in, Form f_in)
    : xi(std::move(xi_in)), f(std::move(f_in)) {
  require_3d(xi.grid(), "AlgebraElement");
  require_degree(f, 0, "AlgebraElement");
  if (xi.grid() != f.grid()) {
    throw std::invalid_argument("AlgebraElement: mismatched grids");
  }
}

MomentumState::MomentumState(Form m_cov_in, Form rho_in)
    : m_cov(std::move(m_cov_in)), rho(std::move(rho_in)) {
  require_3d(m_cov.grid(), "MomentumState");
  require_degree(m_cov, 1, "MomentumState");
  require_degree(rho, 3, "MomentumState");
  density_scalar(rho);  // validates positivity
}

MomentumTangent::MomentumTangent(Form m_dot_cov_in, Form rho_dot_in)
    : m_dot_cov(std::move(m_dot_cov_in)), rho_dot(std::move(rho_dot_in)) {
  require_degree(m_dot_cov, 1, "MomentumTangent");
  require_degree(rho_dot, 3, "MomentumTangent");
}

FluidState::FluidState(Form theta_in, Form rho_in)
    : theta(std::move(theta_in)), rho(std::move(rho_in)) {
  require_3d(theta.grid(), "FluidState");
  require_degree(theta, 1, "FluidState");
  require_degree(rho, 3, "FluidState");
  density_scalar(rho);
}

FluidTangent::FluidTangent(Form theta_dot_in, Form rho_dot_in)
    : theta_dot(std::move(theta_dot_in)), rho_dot(std::move(rho_dot_in)) {
  require_degree(theta_dot, 1, "FluidTangent");
  require_degree(rho_dot, 3, "FluidTangent");
}

FluidCotangent::FluidCotangent(Form e_theta_in, Form e_rho_in)
    : e_theta(std::move(e_theta_in)), e_rho(std::move(e_rho_in)) {
  require_degree(e_theta, 2, "FluidCotangent");
  require_degree(e_rho, 0, "FluidCotangent");
}

Form density_scalar(const Form& rho) {
  require_3d(rho.grid(), "density_scalar");
  require_degree(rho, 3, "density_scalar");
  Form rho_tilde = hodge(rho);
  for (double v : rho_tilde.component(0)) {
    if (!(v >= kDensityFloor)) {
      throw std::invalid_argument("density is not positive (needs *rho >= 1e-8)");
    }
  }
  return rho_tilde;
}

AlgebraElement algebra_bracket(const AlgebraElement& a, const AlgebraElement& b) {
  if (a.xi.grid() != b.xi.grid()) {
    throw std::invalid_argument("algebra_bracket: mismatched grids");
  }
  VectorField vec = -1.0 * jacobi_lie_bracket(a.xi, b.xi);
  Form fun = lie_derivative(b.xi, a.f) - lie_derivative(a.xi, b.f);
  return AlgebraElement(std::move(vec), std::move(fun));
}

double s_duality(const AlgebraElement& a, const Form& m_cov, const Form& rho_slot) {
  require_degree(m_cov, 1, "s_duality");
  require_degree(rho_slot, 3, "s_duality");
  if (a.xi.grid() != m_cov.grid()) {
    throw std::invalid_argument("s_duality: mismatched grids");
  }
  // m_cov(xi) dV: contract, then weight by the volume form.
  const Grid& grid = m_cov.grid();
  Form integrand(grid, 3);
  auto& out = integrand.component(0);
  const double vol = grid.volume_scale();
  for (int axis = 0; axis < 3; ++axis) {
    const auto& mi = m_cov.component(m_cov.index_of(1u << axis));
    const auto& xii = a.xi.component(axis);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += vol * mi[i] * xii[i];
  }
  const auto& fv = a.f.component(0);
  const auto& rv = rho_slot.component(0);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += fv[i] * rv[i];
  return integrate(integrand);
}

double s_duality(const AlgebraElement& a, const MomentumState& mu) {
  return s_duality(a, mu.m_cov, mu.rho);
}

double s_duality(const AlgebraElement& a, const MomentumTangent& mu_dot) {
  return s_duality(a, mu_dot.m_dot_cov, mu_dot.rho_dot);
}

MomentumTangent coadjoint_star(const AlgebraElement& a, const MomentumState& mu) {
  const Form rho_tilde = density_scalar(mu.rho);
  const Form theta = pointwise_divide(mu.m_cov, rho_tilde);
  const Form div = div_rho(a.xi, mu.rho);
  Form bracket_one_form = lie_derivative(a.xi, theta) + pointwise_multiply(div, theta) +
                          exterior_derivative(a.f);
  // The result is (one-form) (x) rho; against dV its factor picks up *rho.
  Form m_dot_cov = pointwise_multiply(rho_tilde, bracket_one_form);
  Form rho_dot = lie_derivative(a.xi, mu.rho);
  return MomentumTangent(std::move(m_dot_cov), std::move(rho_dot));
}

MomentumTangent lie_poisson_sharp_momentum(const Form& e_m, const Form& e_rho,
                                           const MomentumState& mu) {
  require_degree(e_m, 1, "lie_poisson_sharp_momentum");
  require_degree(e_rho, 0, "lie_poisson_sharp_momentum");
  return coadjoint_star(AlgebraElement(sharp(e_m), e_rho), mu);
}

FluidState phi(const MomentumState& mu) {
  const Form rho_tilde = density_scalar(mu.rho);
  return FluidState(pointwise_divide(mu.m_cov, rho_tilde), mu.rho);
}

MomentumState phi_inverse(const FluidState& s) {
  const Form rho_tilde = density_scalar(s.rho);
  return MomentumState(pointwise_multiply(rho_tilde, s.theta), s.rho);
}

FluidTangent tangent_phi(const MomentumTangent& v, const MomentumState& mu) {
  const Form rho_tilde = density_scalar(mu.rho);
  const Form theta = pointwise_divide(mu.m_cov, rho_tilde);
  const Form rho_tilde_dot = hodge(v.rho_dot);
  Form theta_dot =
      pointwise_divide(v.m_dot_cov - pointwise_multiply(rho_tilde_dot, theta), rho_tilde);
  return FluidTangent(std::move(theta_dot), v.rho_dot);
}

AlgebraElement cotangent_phi(const FluidCotangent& e, const MomentumState& mu) {
  return cotangent_phi(e, phi(mu));
}

AlgebraElement cotangent_phi(const FluidCotangent& e, const FluidState& s) {
  if (e.e_theta.grid() != s.theta.grid()) {
    throw std::invalid_argument("cotangent_phi: mismatched grids");
  }
  const Form rho_tilde = density_scalar(s.rho);
  VectorField vec = x_field(e.e_theta, s.rho);
  Form fun = e.e_rho - pointwise_divide(hodge(wedge(e.e_theta, s.theta)), rho_tilde);
  return AlgebraElement(std::move(vec), std::move(fun));
}

VectorField x_field(const Form& e_theta, const Form& rho) {
  require_degree(e_theta, 2, "x_field");
  const Form rho_tilde = density_scalar(rho);
  return divide_pointwise(sharp(hodge(e_theta)), rho_tilde.component(0));
}

FluidTangent velocity_sharp(const FluidCotangent& e, const FluidState& s) {
  if (e.e_theta.grid() != s.theta.grid()) {
    throw std::invalid_argument("velocity_sharp: mismatched grids");
  }
  const VectorField x = x_field(e.e_theta, s.rho);
  Form theta_dot =
      exterior_derivative(e.e_rho) + interior_product(x, exterior_derivative(s.theta));
  Form rho_dot = exterior_derivative(e.e_theta);
  return FluidTangent(std::move(theta_dot), std::move(rho_dot));
}

std::pair<Form, Form> convective_term(const Form& e_theta, const Form& theta,
                                      const Form& rho) {
  require_degree(e_theta, 2, "convective_term");
  require_degree(theta, 1, "convective_term");
  const Form rho_tilde = density_scalar(rho);
  const Form d_theta = exterior_derivative(theta);

  const VectorField x = x_field(e_theta, rho);
  Form path_a = interior_product(x, d_theta);

  Form path_b =
      pointwise_divide(hodge(wedge(hodge(d_theta), hodge(e_theta))), rho_tilde);
  return {std::move(path_a), std::move(path_b)};
}

Form div_rho(const VectorField& x, const Form& rho) {
  const Form rho_tilde = density_scalar(rho);
  return pointwise_divide(hodge(exterior_derivative(interior_product(x, rho))), rho_tilde);
}

double v_duality(const FluidCotangent& e, const FluidTangent& v) {
  if (e.e_theta.grid() != v.theta_dot.grid()) {
    throw std::invalid_argument("v_duality: mismatched grids");
  }
  return pairing(e.e_theta, v.theta_dot) + integrate(wedge(e.e_rho, v.rho_dot));
}

}  // namespace sdlab
