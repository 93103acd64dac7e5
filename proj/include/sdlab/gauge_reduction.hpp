#pragma once

#include <utility>
#include <vector>

#include "sdlab/canonical_dirac.hpp"

namespace sdlab {

// Quotient of the canonical phase space by the additive gauge action
// rho -> rho + d(alpha). The reduced state is (d rho, pi); the tangent and
// cotangent quotient maps, the closed-form reduced structure map, and its
// ground-truth composition through the unreduced symplectic map all live
// here, along with the flow/effort sign bookkeeping.
//
// On a torus, closed forms strictly contain exact ones (constant modes
// survive), so "d of something" identifies the quotient only up to that
// harmonic residue. Reduced states here are always produced as d(rho), so
// the residue never enters; the closedness invariant below is the
// necessary condition that is actually checkable.

struct ReducedState {
  Form rho_bar;  // degree k+1, closed (d rho_bar = 0 within tolerance)
  Form pi_bar;   // degree n-k

  ReducedState(Form rho_bar_in, Form pi_bar_in);
  int k() const { return rho_bar.degree() - 1; }
};

struct ReducedTangent {
  Form rho_bar_dot;  // degree k+1
  Form pi_bar_dot;   // degree n-k

  ReducedTangent(Form rho_bar_dot_in, Form pi_bar_dot_in);
  int k() const { return rho_bar_dot.degree() - 1; }
};

struct ReducedCotangent {
  Form e_rho_bar;  // degree n-k-1
  Form e_pi_bar;   // degree k

  ReducedCotangent(Form e_rho_bar_in, Form e_pi_bar_in);
  int k() const { return e_pi_bar.degree(); }
};

// Flow/effort sign data for a configuration degree k in dimension n:
// p = n-k, q = k+1 (so p + q = n + 1), r = pq + 1.
struct SignSignature {
  int n = 0;
  int k = 0;
  int p = 0;
  int q = 0;
  int r = 0;
  int sign_structure = 1;   // (-1)^{n-k-1}, the composed structure sign
  int sign_cotangent = 1;    // (-1)^{n-k}, the cotangent quotient sign
  int sign_flow_effort = 1;  // (-1)^r
  int sign_fq = 1;           // (-1)^{n-p}

  static SignSignature make(int n, int k);
};

// rho + d(alpha); alpha has degree k-1, so k >= 1.
Form gauge_act(const Form& rho, const Form& alpha);

// (d rho, pi); invariant under gauge_act by d o d = 0.
ReducedState quotient_project(const PhasePoint& s);

// (d rho_dot, pi_dot).
ReducedTangent tangent_quotient(const TangentAtPhase& v);

// ((-1)^{n-k} d e_rho_bar, e_pi_bar).
CotangentAtPhase cotangent_quotient(const ReducedCotangent& e);

// Closed form of the reduced structure map:
// (d e_pi_bar, (-1)^{n-k-1} d e_rho_bar).
ReducedTangent reduced_sharp(const ReducedCotangent& e, const SignSignature& sig);

// Ground truth: tangent_quotient o canonical_sharp o cotangent_quotient.
ReducedTangent reduced_sharp_composed(const ReducedCotangent& e);

// integral(e_rho_bar ^ rho_bar_dot + e_pi_bar ^ pi_bar_dot).
double reduced_duality(const ReducedCotangent& e, const ReducedTangent& v);

// Flow/effort change of variables: e_p = e_rho_bar, e_q = (-1)^r e_pi_bar,
// f_p = rho_bar_dot, f_q = (-1)^{n-p} pi_bar_dot, wrapped around the
// composed structure map. For odd n this lands on
// f_p = (-1)^r d e_q, f_q = d e_p.
std::pair<Form, Form> stokes_dirac_apply(const Form& e_p, const Form& e_q,
                                         const SignSignature& sig);

// One row of the sign diagnostic per (n, k): the two published closed-form
// signs, whether each agrees with the composed map, and the numerically
// measured residuals on random inputs.
struct SignRow {
  int n, k, p, q, r;
  int sign_structure;          // (-1)^{n-k-1}
  int sign_variant;            // (-1)^{n-k}, the alternative closed form
  bool structure_matches;      // composed map reproduces sign_structure
  bool variant_matches;        // composed map reproduces sign_variant
  bool sd_matrix_reproduced;    // f_p = (-1)^r d e_q and f_q = d e_p both hold
  double resid_composition;     // reduced_sharp vs reduced_sharp_composed
  double resid_sd_matrix;       // stokes_dirac_apply vs the flow/effort matrix
};

std::vector<SignRow> sign_table(int n_max = 3, std::uint64_t seed = 42);

}  // namespace sdlab
