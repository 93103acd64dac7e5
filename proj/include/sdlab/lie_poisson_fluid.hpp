#pragma once

#include <utility>

#include "sdlab/dec.hpp"

namespace sdlab {

// Semidirect-product algebra of vector fields acting on functions, its dual
// realized as (one-form density, density) pairs, and the structure maps for
// the compressible isentropic fluid in both the momentum representation
// (m, rho) and the velocity representation (theta, rho). Momentum densities
// are stored through their one-form factor against the metric volume form,
// m = m_cov (x) dV, so no tensor-product array type is needed.
//
// Three-dimensional grids only. Densities must satisfy *rho >= 1e-8
// everywhere; operations that divide by the density throw otherwise.

struct AlgebraElement {
  VectorField xi;
  Form f;  // degree 0

  AlgebraElement(VectorField xi_in, Form f_in);
};

struct MomentumState {
  Form m_cov;  // degree 1, m = m_cov (x) dV
  Form rho;    // degree 3, *rho > 0

  MomentumState(Form m_cov_in, Form rho_in);
};

struct MomentumTangent {
  Form m_dot_cov;  // degree 1, m_dot = m_dot_cov (x) dV
  Form rho_dot;    // degree 3

  MomentumTangent(Form m_dot_cov_in, Form rho_dot_in);
};

struct FluidState {
  Form theta;  // degree 1 velocity one-form
  Form rho;    // degree 3, *rho > 0

  FluidState(Form theta_in, Form rho_in);
};

struct FluidTangent {
  Form theta_dot;  // degree 1
  Form rho_dot;    // degree 3

  FluidTangent(Form theta_dot_in, Form rho_dot_in);
};

struct FluidCotangent {
  Form e_theta;  // degree 2
  Form e_rho;    // degree 0

  FluidCotangent(Form e_theta_in, Form e_rho_in);
};

// *rho as a 0-form, with the positivity threshold enforced.
Form density_scalar(const Form& rho);

// ( -[xi1, xi2], L_{xi2} f1 - L_{xi1} f2 ).
AlgebraElement algebra_bracket(const AlgebraElement& a, const AlgebraElement& b);

// <(xi, f), (m_cov, rho)> = integral(m_cov(xi) dV + f rho). The first slot
// pairs against the one-form factor of the momentum density, the second
// against the density slot, so the same formula applies to tangent vectors.
double s_duality(const AlgebraElement& a, const Form& m_cov, const Form& rho_slot);
double s_duality(const AlgebraElement& a, const MomentumState& mu);
double s_duality(const AlgebraElement& a, const MomentumTangent& mu_dot);

// ad*_{(xi,f)} mu = ((L_xi theta + div_rho(xi) theta + d f) (x) rho, L_xi rho)
// with theta = m_cov / *rho.
MomentumTangent coadjoint_star(const AlgebraElement& a, const MomentumState& mu);

// The momentum-representation structure map: coadjoint_star with
// xi = sharp(e_m).
MomentumTangent lie_poisson_sharp_momentum(const Form& e_m, const Form& e_rho,
                                           const MomentumState& mu);

// Change of representation theta = m_cov / *rho and its exact inverse.
FluidState phi(const MomentumState& mu);
MomentumState phi_inverse(const FluidState& s);

// theta_dot = (m_dot_cov - theta * (*rho_dot)) / *rho, the unique solution
// of m_dot = theta (x) rho_dot + theta_dot (x) rho.
FluidTangent tangent_phi(const MomentumTangent& v, const MomentumState& mu);

// ( (* e_theta)^sharp / *rho, e_rho - *(e_theta ^ theta) / *rho ).
AlgebraElement cotangent_phi(const FluidCotangent& e, const MomentumState& mu);
AlgebraElement cotangent_phi(const FluidCotangent& e, const FluidState& s);

// X = (* e_theta)^sharp / *rho; satisfies i_X dV = e_theta / *rho pointwise.
VectorField x_field(const Form& e_theta, const Form& rho);

// Velocity-representation structure map:
// ( d e_rho + (1 / *rho) i_X d theta, d e_theta ) with X = x_field(e_theta, rho).
FluidTangent velocity_sharp(const FluidCotangent& e, const FluidState& s);

// The convective term along two routes: contraction i_X d theta / *rho, and
// the Hodge form *(*d theta ^ *e_theta) / *rho. The two agree pointwise.
std::pair<Form, Form> convective_term(const Form& e_theta, const Form& theta,
                                      const Form& rho);

// div_rho(X) = *(d i_X rho) / *rho, so L_X rho = div_rho(X) rho exactly.
Form div_rho(const VectorField& x, const Form& rho);

// integral(e_theta ^ theta_dot + e_rho rho_dot).
double v_duality(const FluidCotangent& e, const FluidTangent& v);

}  // namespace sdlab
