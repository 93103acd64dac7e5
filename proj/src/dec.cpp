#include "sdlab/dec.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace sdlab {

std::vector<double> centered_diff(const Grid& grid, const std::vector<double>& in,
                                  int axis) {
  std::vector<double> out(grid.node_count());
  const double inv2h = 1.0 / (2.0 * grid.spacing(axis));
  for (std::size_t idx = 0; idx < in.size(); ++idx) {
    const std::size_t up = grid.neighbor(idx, axis, +1);
    const std::size_t dn = grid.neighbor(idx, axis, -1);
    out[idx] = (in[up] - in[dn]) * inv2h;
  }
  return out;
}

Form exterior_derivative(const Form& a) {
  const Grid& grid = a.grid();
  const int n = grid.dim();
  const int k = a.degree();
  if (k >= n) {
    throw std::invalid_argument("exterior_derivative: derivative of top form undefined");
  }
  Form out(grid, k + 1);
  for (int c = 0; c < out.component_count(); ++c) {
    const unsigned target = out.mask_of(c);
    auto& arr = out.component(c);
    for (unsigned rest = target; rest != 0; rest &= rest - 1) {
      const int axis = std::countr_zero(rest);
      const unsigned source = target & ~(1u << axis);
      // Position of `axis` within the ascending target index.
      const int below = std::popcount(target & ((1u << axis) - 1u));
      const double sign = (below % 2 == 0) ? 1.0 : -1.0;
      const auto diff = centered_diff(grid, a.component(a.index_of(source)), axis);
      for (std::size_t i = 0; i < arr.size(); ++i) arr[i] += sign * diff[i];
    }
  }
  return out;
}

Form wedge(const Form& a, const Form& b) {
  if (a.grid() != b.grid()) {
    throw std::invalid_argument("wedge: forms live on different grids");
  }
  const int n = a.grid().dim();
  const int k = a.degree();
  const int l = b.degree();
  if (k + l > n) {
    throw std::invalid_argument("wedge: degree overflow (k + l > n)");
  }
  Form out(a.grid(), k + l);
  for (int ca = 0; ca < a.component_count(); ++ca) {
    const unsigned ma = a.mask_of(ca);
    const auto& xa = a.component(ca);
    for (int cb = 0; cb < b.component_count(); ++cb) {
      const unsigned mb = b.mask_of(cb);
      if ((ma & mb) != 0) continue;
      const double sign = merge_sign(ma, mb);
      auto& arr = out.component(out.index_of(ma | mb));
      const auto& xb = b.component(cb);
      for (std::size_t i = 0; i < arr.size(); ++i) arr[i] += sign * xa[i] * xb[i];
    }
  }
  return out;
}

Form hodge(const Form& a) {
  const Grid& grid = a.grid();
  const int n = grid.dim();
  const unsigned full = (1u << n) - 1u;
  Form out(grid, n - a.degree());
  for (int c = 0; c < a.component_count(); ++c) {
    const unsigned mask = a.mask_of(c);
    const unsigned comp = full & ~mask;
    double coeff = grid.volume_scale() * merge_sign(mask, comp);
    for (unsigned rest = mask; rest != 0; rest &= rest - 1) {
      coeff /= grid.metric_coeff(std::countr_zero(rest));
    }
    const auto& src = a.component(c);
    auto& dst = out.component(out.index_of(comp));
    for (std::size_t i = 0; i < src.size(); ++i) dst[i] = coeff * src[i];
  }
  return out;
}

VectorField sharp(const Form& one_form) {
  if (one_form.degree() != 1) {
    throw std::invalid_argument("sharp: input must be a 1-form");
  }
  const Grid& grid = one_form.grid();
  VectorField out(grid);
  for (int axis = 0; axis < grid.dim(); ++axis) {
    const double ginv = 1.0 / grid.metric_coeff(axis);
    const auto& src = one_form.component(one_form.index_of(1u << axis));
    auto& dst = out.component(axis);
    for (std::size_t i = 0; i < src.size(); ++i) dst[i] = ginv * src[i];
  }
  return out;
}

Form flat(const VectorField& x) {
  const Grid& grid = x.grid();
  Form out(grid, 1);
  for (int axis = 0; axis < grid.dim(); ++axis) {
    const double g = grid.metric_coeff(axis);
    const auto& src = x.component(axis);
    auto& dst = out.component(out.index_of(1u << axis));
    for (std::size_t i = 0; i < src.size(); ++i) dst[i] = g * src[i];
  }
  return out;
}

Form interior_product(const VectorField& x, const Form& a) {
  if (x.grid() != a.grid()) {
    throw std::invalid_argument("interior_product: mismatched grids");
  }
  if (a.degree() < 1) {
    throw std::invalid_argument("interior_product: degree must be >= 1");
  }
  const Grid& grid = a.grid();
  Form out(grid, a.degree() - 1);
  for (int c = 0; c < out.component_count(); ++c) {
    const unsigned target = out.mask_of(c);
    auto& arr = out.component(c);
    for (int axis = 0; axis < grid.dim(); ++axis) {
      const unsigned bit = 1u << axis;
      if ((target & bit) != 0) continue;
      // Sign from moving the contracted slot past the smaller indices of J.
      const int below = std::popcount(target & (bit - 1u));
      const double sign = (below % 2 == 0) ? 1.0 : -1.0;
      const auto& src = a.component(a.index_of(target | bit));
      const auto& xv = x.component(axis);
      for (std::size_t i = 0; i < arr.size(); ++i) arr[i] += sign * xv[i] * src[i];
    }
  }
  return out;
}

Form lie_derivative(const VectorField& x, const Form& a) {
  const int n = a.grid().dim();
  const int k = a.degree();
  if (k == 0) {
    return interior_product(x, exterior_derivative(a));
  }
  if (k == n) {
    return exterior_derivative(interior_product(x, a));
  }
  return interior_product(x, exterior_derivative(a)) +
         exterior_derivative(interior_product(x, a));
}

double integrate(const Form& top) {
  const Grid& grid = top.grid();
  if (top.degree() != grid.dim()) {
    throw std::invalid_argument("integrate: form degree must equal grid dimension");
  }
  // Compensated sum in flat (axis-major) order.
  const auto& arr = top.component(0);
  double sum = 0.0;
  double comp = 0.0;
  for (double v : arr) {
    const double y = v - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return grid.cell_volume() * sum;
}

double pairing(const Form& a, const Form& b) {
  if (a.grid() != b.grid()) {
    throw std::invalid_argument("pairing: forms live on different grids");
  }
  if (a.degree() + b.degree() != a.grid().dim()) {
    throw std::invalid_argument("pairing: degrees are not complementary");
  }
  return integrate(wedge(a, b));
}

Form pointwise_divide(const Form& a, const Form& scalar) {
  if (scalar.degree() != 0 || scalar.grid() != a.grid()) {
    throw std::invalid_argument("pointwise_divide: scalar must be a 0-form on the same grid");
  }
  Form out = a;
  const auto& s = scalar.component(0);
  for (int c = 0; c < out.component_count(); ++c) {
    auto& arr = out.component(c);
    for (std::size_t i = 0; i < arr.size(); ++i) arr[i] /= s[i];
  }
  return out;
}

Form pointwise_multiply(const Form& scalar, const Form& a) {
  if (scalar.degree() != 0 || scalar.grid() != a.grid()) {
    throw std::invalid_argument("pointwise_multiply: scalar must be a 0-form on the same grid");
  }
  Form out = a;
  const auto& s = scalar.component(0);
  for (int c = 0; c < out.component_count(); ++c) {
    auto& arr = out.component(c);
    for (std::size_t i = 0; i < arr.size(); ++i) arr[i] *= s[i];
  }
  return out;
}

VectorField jacobi_lie_bracket(const VectorField& x, const VectorField& y) {
  if (x.grid() != y.grid()) {
    throw std::invalid_argument("jacobi_lie_bracket: mismatched grids");
  }
  const Grid& grid = x.grid();
  VectorField out(grid);
  for (int i = 0; i < grid.dim(); ++i) {
    auto& arr = out.component(i);
    for (int j = 0; j < grid.dim(); ++j) {
      const auto dyi = centered_diff(grid, y.component(i), j);
      const auto dxi = centered_diff(grid, x.component(i), j);
      const auto& xj = x.component(j);
      const auto& yj = y.component(j);
      for (std::size_t idx = 0; idx < arr.size(); ++idx) {
        arr[idx] += xj[idx] * dyi[idx] - yj[idx] * dxi[idx];
      }
    }
  }
  return out;
}

VectorField scale_pointwise(const VectorField& x, const std::vector<double>& factor) {
  VectorField out = x;
  for (int a = 0; a < x.grid().dim(); ++a) {
    auto& arr = out.component(a);
    for (std::size_t i = 0; i < arr.size(); ++i) arr[i] *= factor[i];
  }
  return out;
}

VectorField divide_pointwise(const VectorField& x, const std::vector<double>& denom) {
  VectorField out = x;
  for (int a = 0; a < x.grid().dim(); ++a) {
    auto& arr = out.component(a);
    for (std::size_t i = 0; i < arr.size(); ++i) arr[i] /= denom[i];
  }
  return out;
}

}  // namespace sdlab
