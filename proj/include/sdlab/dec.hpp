#pragma once

#include "sdlab/form.hpp"

namespace sdlab {

// Exterior calculus on collocated periodic-grid forms.
//
// The differential uses centered differences, which commute exactly, so
// d(d a) vanishes to roundoff and the integrated adjointness
// <d a, b> + (-1)^k <a, d b> = 0 holds exactly (centered differences are
// skew-adjoint under uniform-weight periodic sums). Wedge, Hodge star,
// index raising/lowering and contraction are pointwise exterior algebra
// at every node, so all purely algebraic identities hold to roundoff.
// Note the wedge does not obey a pointwise Leibniz rule against d; only
// the integrated identity above is exact.

// Centered difference along one axis, (f[i+1] - f[i-1]) / (2 h), periodic.
std::vector<double> centered_diff(const Grid& grid, const std::vector<double>& in,
                                  int axis);

// Exterior derivative of a degree-k form, k < n. Degree-n input is an error;
// callers wanting the zero (n+1)-form must construct it explicitly.
Form exterior_derivative(const Form& a);

// Pointwise antisymmetrized product with permutation signs; bilinear.
Form wedge(const Form& a, const Form& b);

// Hodge star for the diagonal constant metric; satisfies
// hodge(hodge(a)) = (-1)^{k(n-k)} a.
Form hodge(const Form& a);

// Metric index raising (1-form to vector field) and lowering (back).
// flat(sharp(a)) == a exactly.
VectorField sharp(const Form& one_form);
Form flat(const VectorField& x);

// Contraction on the first slot; requires degree >= 1.
Form interior_product(const VectorField& x, const Form& a);

// Lie derivative, defined through the Cartan formula i_X d + d i_X, with
// the d term dropped for top degree and the i_X term dropped for degree 0.
Form lie_derivative(const VectorField& x, const Form& a);

// Integral of a top-degree form: (prod h_i) * sum of the single component,
// accumulated compensated in fixed axis-major order (deterministic).
double integrate(const Form& top);

// Duality pairing of complementary degrees: integrate(wedge(a, b)).
double pairing(const Form& a, const Form& b);

// Pointwise quotient of every component of `a` by a scalar (degree-0) field.
// The caller is responsible for keeping the denominator away from zero.
Form pointwise_divide(const Form& a, const Form& scalar);

// Pointwise scale of every component of `a` by a scalar (degree-0) field.
Form pointwise_multiply(const Form& scalar, const Form& a);

// Jacobi-Lie bracket of two vector fields, componentwise centered
// differences: [x, y]^i = sum_j (x^j D_j y^i - y^j D_j x^i).
VectorField jacobi_lie_bracket(const VectorField& x, const VectorField& y);

VectorField scale_pointwise(const VectorField& x, const std::vector<double>& factor);
VectorField divide_pointwise(const VectorField& x, const std::vector<double>& denom);

}  // namespace sdlab
