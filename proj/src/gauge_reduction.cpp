#include "sdlab/gauge_reduction.hpp"

#include <cmath>
#include <stdexcept>

#include "sdlab/random_fields.hpp"

namespace sdlab {

namespace {

constexpr double kClosednessTol = 1e-12;

void require_same_grid(const Form& a, const Form& b, const char* what) {
  if (a.grid() != b.grid()) {
    throw std::invalid_argument(std::string(what) + ": mismatched grids");
  }
}

double closedness_residual(const Form& rho_bar) {
  if (rho_bar.degree() == rho_bar.grid().dim()) return 0.0;  // top forms are closed
  const double scale = rho_bar.grid().min_spacing();
  return exterior_derivative(rho_bar).norm_inf() * scale /
         std::max(1.0, rho_bar.norm_inf());
}

}  // namespace

ReducedState::ReducedState(Form rho_bar_in, Form pi_bar_in)
    : rho_bar(std::move(rho_bar_in)), pi_bar(std::move(pi_bar_in)) {
  require_same_grid(rho_bar, pi_bar, "ReducedState");
  const int n = rho_bar.grid().dim();
  if (rho_bar.degree() < 1 || rho_bar.degree() + pi_bar.degree() != n + 1) {
    throw std::invalid_argument("ReducedState: degrees must be (k+1, n-k)");
  }
  if (closedness_residual(rho_bar) > kClosednessTol) {
    throw std::invalid_argument("ReducedState: rho_bar is not closed (not an exact form)");
  }
}

ReducedTangent::ReducedTangent(Form rho_bar_dot_in, Form pi_bar_dot_in)
    : rho_bar_dot(std::move(rho_bar_dot_in)), pi_bar_dot(std::move(pi_bar_dot_in)) {
  require_same_grid(rho_bar_dot, pi_bar_dot, "ReducedTangent");
  const int n = rho_bar_dot.grid().dim();
  if (rho_bar_dot.degree() < 1 || rho_bar_dot.degree() + pi_bar_dot.degree() != n + 1) {
    throw std::invalid_argument("ReducedTangent: degrees must be (k+1, n-k)");
  }
}

ReducedCotangent::ReducedCotangent(Form e_rho_bar_in, Form e_pi_bar_in)
    : e_rho_bar(std::move(e_rho_bar_in)), e_pi_bar(std::move(e_pi_bar_in)) {
  require_same_grid(e_rho_bar, e_pi_bar, "ReducedCotangent");
  const int n = e_rho_bar.grid().dim();
  if (e_rho_bar.degree() + e_pi_bar.degree() != n - 1) {
    throw std::invalid_argument("ReducedCotangent: degrees must be (n-k-1, k)");
  }
}

SignSignature SignSignature::make(int n, int k) {
  if (n < 1 || k < 0 || k >= n) {
    throw std::invalid_argument("SignSignature: need 0 <= k < n");
  }
  SignSignature s;
  s.n = n;
  s.k = k;
  s.p = n - k;
  s.q = k + 1;
  s.r = s.p * s.q + 1;
  auto sign = [](int e) { return (e % 2 == 0) ? 1 : -1; };
  s.sign_structure = sign(n - k - 1);
  s.sign_cotangent = sign(n - k);
  s.sign_flow_effort = sign(s.r);
  s.sign_fq = sign(n - s.p);
  return s;
}

Form gauge_act(const Form& rho, const Form& alpha) {
  require_same_grid(rho, alpha, "gauge_act");
  if (rho.degree() < 1 || alpha.degree() != rho.degree() - 1) {
    throw std::invalid_argument("gauge_act: alpha degree must be one below rho degree");
  }
  return rho + exterior_derivative(alpha);
}

ReducedState quotient_project(const PhasePoint& s) {
  if (s.k() >= s.rho.grid().dim()) {
    throw std::invalid_argument("quotient_project: configuration degree must be < n");
  }
  return ReducedState(exterior_derivative(s.rho), s.pi);
}

ReducedTangent tangent_quotient(const TangentAtPhase& v) {
  return ReducedTangent(exterior_derivative(v.rho_dot), v.pi_dot);
}

CotangentAtPhase cotangent_quotient(const ReducedCotangent& e) {
  const int n = e.e_rho_bar.grid().dim();
  const int k = e.k();
  const double sign = ((n - k) % 2 == 0) ? 1.0 : -1.0;
  return CotangentAtPhase(sign * exterior_derivative(e.e_rho_bar), e.e_pi_bar);
}

ReducedTangent reduced_sharp(const ReducedCotangent& e, const SignSignature& sig) {
  if (sig.n != e.e_rho_bar.grid().dim() || sig.k != e.k()) {
    throw std::invalid_argument("reduced_sharp: signature does not match cotangent degrees");
  }
  return ReducedTangent(
      exterior_derivative(e.e_pi_bar),
      static_cast<double>(sig.sign_structure) * exterior_derivative(e.e_rho_bar));
}

ReducedTangent reduced_sharp_composed(const ReducedCotangent& e) {
  return tangent_quotient(canonical_sharp(cotangent_quotient(e)));
}

double reduced_duality(const ReducedCotangent& e, const ReducedTangent& v) {
  if (e.k() != v.k()) {
    throw std::invalid_argument("reduced_duality: mismatched configuration degrees");
  }
  return pairing(e.e_rho_bar, v.rho_bar_dot) + pairing(e.e_pi_bar, v.pi_bar_dot);
}

std::pair<Form, Form> stokes_dirac_apply(const Form& e_p, const Form& e_q,
                                         const SignSignature& sig) {
  ReducedCotangent e(e_p, static_cast<double>(sig.sign_flow_effort) * e_q);
  const ReducedTangent t = reduced_sharp_composed(e);
  Form f_p = t.rho_bar_dot;
  Form f_q = static_cast<double>(sig.sign_fq) * t.pi_bar_dot;
  return {std::move(f_p), std::move(f_q)};
}

std::vector<SignRow> sign_table(int n_max, std::uint64_t seed) {
  if (n_max < 1 || n_max > 3) {
    throw std::invalid_argument("sign_table: n_max must be between 1 and 3");
  }
  std::vector<SignRow> rows;
  for (int n = 1; n <= n_max; ++n) {
    std::vector<int> sizes;
    std::vector<double> spacings;
    const int npts = (n == 1) ? 16 : (n == 2 ? 8 : 6);
    for (int a = 0; a < n; ++a) {
      sizes.push_back(npts);
      spacings.push_back(6.283185307179586 / npts);
    }
    const Grid grid(sizes, spacings);
    for (int k = 0; k < n; ++k) {
      const SignSignature sig = SignSignature::make(n, k);
      const std::uint64_t s = seed + 977ull * static_cast<std::uint64_t>(10 * n + k);
      ReducedCotangent e(random_form(grid, n - k - 1, s),
                         random_form(grid, k, s + 1));

      const ReducedTangent closed = reduced_sharp(e, sig);
      const ReducedTangent composed = reduced_sharp_composed(e);
      const double resid_comp =
          std::max(max_abs_diff(closed.rho_bar_dot, composed.rho_bar_dot),
                   max_abs_diff(closed.pi_bar_dot, composed.pi_bar_dot)) /
          std::max({1.0, closed.rho_bar_dot.norm_inf(), closed.pi_bar_dot.norm_inf()});

      // Flow/effort matrix check: f_p = (-1)^r d e_q, f_q = d e_p.
      Form e_p = e.e_rho_bar;
      Form e_q = random_form(grid, k, s + 2);
      const auto flows = stokes_dirac_apply(e_p, e_q, sig);
      const Form f_p_expected =
          static_cast<double>(sig.sign_flow_effort) * exterior_derivative(e_q);
      const Form f_q_expected = exterior_derivative(e_p);
      const double resid_sd =
          std::max(max_abs_diff(flows.first, f_p_expected),
                   max_abs_diff(flows.second, f_q_expected)) /
          std::max({1.0, f_p_expected.norm_inf(), f_q_expected.norm_inf()});

      SignRow row{};
      row.n = n;
      row.k = k;
      row.p = sig.p;
      row.q = sig.q;
      row.r = sig.r;
      row.sign_structure = sig.sign_structure;
      row.sign_variant = sig.sign_cotangent;
      row.resid_composition = resid_comp;
      row.structure_matches = resid_comp <= 1e-12;
      row.variant_matches = row.structure_matches && sig.sign_structure == sig.sign_cotangent;
      row.resid_sd_matrix = resid_sd;
      row.sd_matrix_reproduced = resid_sd <= 1e-12;
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace sdlab
