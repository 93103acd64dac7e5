#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sdlab/canonical_dirac.hpp"
#include "sdlab/random_fields.hpp"

using namespace sdlab;

namespace {

constexpr double kPi = 3.14159265358979323846;

Grid circle(int nodes) { return Grid({nodes}, {2.0 * kPi / nodes}); }

Grid torus(int n, int nodes) {
  std::vector<int> sizes(static_cast<std::size_t>(n), nodes);
  std::vector<double> spacings(static_cast<std::size_t>(n), 2.0 * kPi / nodes);
  return Grid(sizes, spacings);
}

Form constant_form(const Grid& g, int degree, double value) {
  Form f(g, degree);
  for (int c = 0; c < f.component_count(); ++c) {
    for (double& v : f.component(c)) v = value;
  }
  return f;
}

}  // namespace

TEST_CASE("phase duality: zero element, constant integral, graded swap") {
  const Grid g = circle(4);
  const CotangentAtPhase zero(Form(g, 1), Form(g, 0));
  const TangentAtPhase v(random_form(g, 0, 2), random_form(g, 1, 3));
  CHECK(phase_duality(zero, v) == 0.0);

  // e_rho = dx, rho_dot = 1, e_pi = 0 on the 4-node circle of spacing pi/2.
  const CotangentAtPhase e(constant_form(g, 1, 1.0), Form(g, 0));
  const TangentAtPhase one(constant_form(g, 0, 1.0), Form(g, 1));
  CHECK(phase_duality(e, one) == doctest::Approx(2.0 * kPi));

  // Swapping both slots across the duality costs the wedge-grading sign.
  const Grid g3 = torus(3, 6);
  const int k = 1;
  const CotangentAtPhase e3(random_form(g3, 2, 5), random_form(g3, k, 6));
  const TangentAtPhase v3(random_form(g3, k, 7), random_form(g3, 2, 8));
  const double sign = ((k * (3 - k)) % 2 == 0) ? 1.0 : -1.0;
  const CotangentAtPhase swapped(v3.pi_dot, v3.rho_dot);
  const TangentAtPhase swapped_v(e3.e_pi, e3.e_rho);
  CHECK(phase_duality(e3, v3) ==
        doctest::Approx(sign * phase_duality(swapped, swapped_v)).epsilon(1e-12));

  CHECK_THROWS(phase_duality(e, TangentAtPhase(random_form(g, 1, 9), random_form(g, 0, 9))));
}

TEST_CASE("canonical sharp: zero, slot swap, double application") {
  const Grid g3 = torus(3, 6);
  const TangentAtPhase z = canonical_sharp(CotangentAtPhase(Form(g3, 2), Form(g3, 1)));
  CHECK(z.rho_dot.norm_inf() == 0.0);
  CHECK(z.pi_dot.norm_inf() == 0.0);

  // n = 3, k = 1 with e_pi = dx1: rho_dot = dx1, pi_dot = -e_rho.
  Form e_pi(g3, 1);
  for (double& v : e_pi.component(e_pi.index_of(0b001))) v = 1.0;
  const Form e_rho = random_form(g3, 2, 11);
  const TangentAtPhase out = canonical_sharp(CotangentAtPhase(e_rho, e_pi));
  CHECK(max_abs_diff(out.rho_dot, e_pi) == 0.0);
  CHECK(max_abs_diff(out.pi_dot, -e_rho) == 0.0);

  // With k = n - k the output wraps back into a cotangent vector and the
  // map squares to minus the identity.
  const Grid g2 = torus(2, 8);
  const CotangentAtPhase e2(random_form(g2, 1, 12), random_form(g2, 1, 13));
  const TangentAtPhase once = canonical_sharp(e2);
  const TangentAtPhase twice = canonical_sharp(CotangentAtPhase(once.rho_dot, once.pi_dot));
  CHECK(max_abs_diff(twice.rho_dot, -e2.e_rho) == 0.0);
  CHECK(max_abs_diff(twice.pi_dot, -e2.e_pi) == 0.0);
}

TEST_CASE("linearity of the sharp map is exact") {
  const Grid g = circle(8);
  const CotangentAtPhase e(random_form(g, 1, 21), random_form(g, 0, 22));
  const CotangentAtPhase ep(random_form(g, 1, 23), random_form(g, 0, 24));
  const double a = 2.5, b = -1.25;
  const TangentAtPhase combo =
      canonical_sharp(CotangentAtPhase(a * e.e_rho + b * ep.e_rho, a * e.e_pi + b * ep.e_pi));
  const TangentAtPhase ta = canonical_sharp(e);
  const TangentAtPhase tb = canonical_sharp(ep);
  CHECK(max_abs_diff(combo.rho_dot, a * ta.rho_dot + b * tb.rho_dot) == 0.0);
  CHECK(max_abs_diff(combo.pi_dot, a * ta.pi_dot + b * tb.pi_dot) == 0.0);
}

TEST_CASE("dirac pairing: diagonal, zero element, graph isotropy") {
  const Grid g = circle(8);
  const CotangentAtPhase e(random_form(g, 1, 31), random_form(g, 0, 32));
  const TangentAtPhase v(random_form(g, 0, 33), random_form(g, 1, 34));
  CHECK(dirac_pairing({v, e}, {v, e}) == doctest::Approx(phase_duality(e, v)).epsilon(1e-14));

  const CotangentAtPhase zero_e(Form(g, 1), Form(g, 0));
  const TangentAtPhase zero_v(Form(g, 0), Form(g, 1));
  CHECK(dirac_pairing({zero_v, zero_e}, {v, e}) ==
        doctest::Approx(0.5 * phase_duality(zero_e, v)));

  // Graph elements of the sharp map pair to zero against each other.
  for (int draw = 0; draw < 25; ++draw) {
    const std::uint64_t s = 100 + 10 * static_cast<std::uint64_t>(draw);
    const CotangentAtPhase a(random_form(g, 1, s), random_form(g, 0, s + 1));
    const CotangentAtPhase b(random_form(g, 1, s + 2), random_form(g, 0, s + 3));
    CHECK(std::abs(dirac_pairing({canonical_sharp(a), a}, {canonical_sharp(b), b})) <=
          1e-12);
  }
}

TEST_CASE("skew symmetry of the sharp map under the phase duality") {
  // Printed operand order; k(n-k) even configurations.
  for (const auto& [n, k] : std::vector<std::pair<int, int>>{{1, 0}, {3, 1}, {2, 0}}) {
    const Grid g = torus(n, n == 1 ? 16 : (n == 2 ? 8 : 6));
    for (int draw = 0; draw < 10; ++draw) {
      const std::uint64_t s = 200 + 10 * static_cast<std::uint64_t>(draw);
      const CotangentAtPhase e(random_form(g, n - k, s), random_form(g, k, s + 1));
      const CotangentAtPhase ep(random_form(g, n - k, s + 2), random_form(g, k, s + 3));
      const double lhs = phase_duality(e, canonical_sharp(ep));
      const double rhs = phase_duality(ep, canonical_sharp(e));
      CHECK(std::abs(lhs + rhs) <= 1e-12 * (1.0 + std::abs(lhs) + std::abs(rhs)));
    }
  }
}

TEST_CASE("isotropy residual: zero input, random samples, quadratic scaling") {
  const Grid g = circle(8);
  CHECK(isotropy_residual(g, 0, 1, 42, 0.0) == 0.0);
  CHECK(isotropy_residual(g, 0, 100, 42) <= 1e-12);
  const double base = isotropy_residual(g, 0, 20, 7, 1.0);
  const double scaled = isotropy_residual(g, 0, 20, 7, 2.0);
  CHECK(scaled == doctest::Approx(4.0 * base).epsilon(1e-12));
  CHECK_THROWS(isotropy_residual(g, 0, 0, 1));
}
