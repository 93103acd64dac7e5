#include "sdlab/canonical_dirac.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "sdlab/random_fields.hpp"

namespace sdlab {

namespace {

void require_complementary(const Form& a, const Form& b, const char* what) {
  if (a.grid() != b.grid()) {
    throw std::invalid_argument(std::string(what) + ": mismatched grids");
  }
  if (a.degree() + b.degree() != a.grid().dim()) {
    throw std::invalid_argument(std::string(what) + ": degrees are not complementary");
  }
}

}  // namespace

PhasePoint::PhasePoint(Form rho_in, Form pi_in)
    : rho(std::move(rho_in)), pi(std::move(pi_in)) {
  require_complementary(rho, pi, "PhasePoint");
}

TangentAtPhase::TangentAtPhase(Form rho_dot_in, Form pi_dot_in)
    : rho_dot(std::move(rho_dot_in)), pi_dot(std::move(pi_dot_in)) {
  require_complementary(rho_dot, pi_dot, "TangentAtPhase");
}

CotangentAtPhase::CotangentAtPhase(Form e_rho_in, Form e_pi_in)
    : e_rho(std::move(e_rho_in)), e_pi(std::move(e_pi_in)) {
  require_complementary(e_rho, e_pi, "CotangentAtPhase");
}

double phase_duality(const CotangentAtPhase& e, const TangentAtPhase& v) {
  if (e.k() != v.k() || e.e_pi.grid() != v.rho_dot.grid()) {
    throw std::invalid_argument("phase_duality: mismatched degrees or grids");
  }
  return pairing(e.e_rho, v.rho_dot) + pairing(e.e_pi, v.pi_dot);
}

TangentAtPhase canonical_sharp(const CotangentAtPhase& e) {
  return TangentAtPhase(e.e_pi, -e.e_rho);
}

double dirac_pairing(const std::pair<TangentAtPhase, CotangentAtPhase>& p1,
                     const std::pair<TangentAtPhase, CotangentAtPhase>& p2) {
  return 0.5 * (phase_duality(p1.second, p2.first) + phase_duality(p2.second, p1.first));
}

double isotropy_residual(const Grid& grid, int k, int samples, std::uint64_t seed,
                         double amplitude) {
  if (samples < 1) {
    throw std::invalid_argument("isotropy_residual: samples must be >= 1");
  }
  const int n = grid.dim();
  std::vector<std::pair<TangentAtPhase, CotangentAtPhase>> graph;
  graph.reserve(static_cast<std::size_t>(samples));
  for (int s = 0; s < samples; ++s) {
    const std::uint64_t base = seed + 1000003ull * static_cast<std::uint64_t>(s);
    CotangentAtPhase e(random_form(grid, n - k, base, amplitude),
                       random_form(grid, k, base + 1, amplitude));
    graph.emplace_back(canonical_sharp(e), e);
  }
  double residual = 0.0;
  for (std::size_t i = 0; i < graph.size(); ++i) {
    for (std::size_t j = i; j < graph.size(); ++j) {
      residual = std::max(residual, std::abs(dirac_pairing(graph[i], graph[j])));
    }
  }
  return residual;
}

}  // namespace sdlab
