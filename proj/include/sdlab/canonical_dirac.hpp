#pragma once

#include <cstdint>
#include <utility>

#include "sdlab/dec.hpp"

namespace sdlab {

// Canonical Dirac structure on the phase space of a degree-k configuration
// form: points (rho, pi) with pi of complementary degree, the duality
// pairing integral(e_rho ^ rho_dot + e_pi ^ pi_dot) with the operand order
// fixed exactly as written, and the symplectic isomorphism
// (e_rho, e_pi) -> (e_pi, -e_rho) whose graph is the structure.
//
// With this operand order the isomorphism is skew, and its graph isotropic,
// precisely when k(n-k) is even; that covers every configuration used by
// the systems in this project ((n,k) = (1,0) and (3,1)).

struct PhasePoint {
  Form rho;  // degree k
  Form pi;   // degree n-k

  PhasePoint(Form rho_in, Form pi_in);
  int k() const { return rho.degree(); }
};

struct TangentAtPhase {
  Form rho_dot;  // degree k
  Form pi_dot;   // degree n-k

  TangentAtPhase(Form rho_dot_in, Form pi_dot_in);
  int k() const { return rho_dot.degree(); }
};

struct CotangentAtPhase {
  Form e_rho;  // degree n-k
  Form e_pi;   // degree k

  CotangentAtPhase(Form e_rho_in, Form e_pi_in);
  int k() const { return e_pi.degree(); }
};

// integral(e_rho ^ rho_dot + e_pi ^ pi_dot).
double phase_duality(const CotangentAtPhase& e, const TangentAtPhase& v);

// (rho_dot, pi_dot) = (e_pi, -e_rho).
TangentAtPhase canonical_sharp(const CotangentAtPhase& e);

// <<(v, alpha), (w, beta)>> = (alpha(w) + beta(v)) / 2.
double dirac_pairing(const std::pair<TangentAtPhase, CotangentAtPhase>& p1,
                     const std::pair<TangentAtPhase, CotangentAtPhase>& p2);

// Draws random band-limited cotangent vectors, forms the graph pairs
// (sharp(e), e) and returns the largest mutual Dirac pairing magnitude.
// Isotropy plus the dimension count of a graph certifies the structure.
double isotropy_residual(const Grid& grid, int k, int samples, std::uint64_t seed,
                         double amplitude = 1.0);

}  // namespace sdlab
