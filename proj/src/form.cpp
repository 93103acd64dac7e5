#include "sdlab/form.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace sdlab {

int binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  int r = 1;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

std::vector<unsigned> component_masks(int n, int k) {
  std::vector<unsigned> out;
  const unsigned top = 1u << n;
  for (unsigned m = 0; m < top; ++m) {
    if (std::popcount(m) == k) out.push_back(m);
  }
  return out;
}

int merge_sign(unsigned lo, unsigned hi) {
  // Count inversions: pairs (i in lo, j in hi) with i > j.
  int inversions = 0;
  for (unsigned rest = hi; rest != 0; rest &= rest - 1) {
    const int j = std::countr_zero(rest);
    inversions += std::popcount(lo >> (j + 1));
  }
  return (inversions % 2 == 0) ? 1 : -1;
}

Form::Form(Grid grid, int degree) : grid_(std::move(grid)), degree_(degree) {
  if (degree < 0 || degree > grid_.dim()) {
    throw std::invalid_argument("form degree out of range for grid dimension");
  }
  masks_ = component_masks(grid_.dim(), degree);
  comps_.assign(masks_.size(), std::vector<double>(grid_.node_count(), 0.0));
}

Form Form::sampled(const Grid& grid, int degree, const Sampler& f) {
  Form out(grid, degree);
  for (int c = 0; c < out.component_count(); ++c) {
    const unsigned mask = out.mask_of(c);
    auto& arr = out.component(c);
    for (std::size_t idx = 0; idx < grid.node_count(); ++idx) {
      arr[idx] = f(mask, grid.node_coords(idx));
    }
  }
  return out;
}

int Form::index_of(unsigned mask) const {
  for (std::size_t c = 0; c < masks_.size(); ++c) {
    if (masks_[c] == mask) return static_cast<int>(c);
  }
  throw std::invalid_argument("component mask not present in form");
}

Form& Form::operator+=(const Form& other) {
  if (grid_ != other.grid_ || degree_ != other.degree_) {
    throw std::invalid_argument("form addition: mismatched grid or degree");
  }
  for (std::size_t c = 0; c < comps_.size(); ++c) {
    auto& a = comps_[c];
    const auto& b = other.comps_[c];
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  }
  return *this;
}

Form& Form::operator-=(const Form& other) {
  if (grid_ != other.grid_ || degree_ != other.degree_) {
    throw std::invalid_argument("form subtraction: mismatched grid or degree");
  }
  for (std::size_t c = 0; c < comps_.size(); ++c) {
    auto& a = comps_[c];
    const auto& b = other.comps_[c];
    for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  }
  return *this;
}

Form& Form::operator*=(double s) {
  for (auto& arr : comps_) {
    for (double& v : arr) v *= s;
  }
  return *this;
}

double Form::norm_inf() const {
  double m = 0.0;
  for (const auto& arr : comps_) {
    for (double v : arr) m = std::max(m, std::abs(v));
  }
  return m;
}

Form operator+(Form a, const Form& b) { return a += b; }
Form operator-(Form a, const Form& b) { return a -= b; }
Form operator*(double s, Form a) { return a *= s; }
Form operator-(Form a) { return a *= -1.0; }

double max_abs_diff(const Form& a, const Form& b) {
  if (a.grid() != b.grid() || a.degree() != b.degree()) {
    throw std::invalid_argument("max_abs_diff: mismatched forms");
  }
  double m = 0.0;
  for (int c = 0; c < a.component_count(); ++c) {
    const auto& x = a.component(c);
    const auto& y = b.component(c);
    for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, std::abs(x[i] - y[i]));
  }
  return m;
}

VectorField::VectorField(Grid grid) : grid_(std::move(grid)) {
  comps_.assign(static_cast<std::size_t>(grid_.dim()),
                std::vector<double>(grid_.node_count(), 0.0));
}

VectorField VectorField::sampled(const Grid& grid, const Sampler& f) {
  VectorField out(grid);
  for (int a = 0; a < grid.dim(); ++a) {
    auto& arr = out.component(a);
    for (std::size_t idx = 0; idx < grid.node_count(); ++idx) {
      arr[idx] = f(a, grid.node_coords(idx));
    }
  }
  return out;
}

VectorField& VectorField::operator+=(const VectorField& other) {
  if (grid_ != other.grid_) {
    throw std::invalid_argument("vector field addition: mismatched grids");
  }
  for (std::size_t c = 0; c < comps_.size(); ++c) {
    auto& a = comps_[c];
    const auto& b = other.comps_[c];
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  }
  return *this;
}

VectorField& VectorField::operator*=(double s) {
  for (auto& arr : comps_) {
    for (double& v : arr) v *= s;
  }
  return *this;
}

double VectorField::norm_inf() const {
  double m = 0.0;
  for (const auto& arr : comps_) {
    for (double v : arr) m = std::max(m, std::abs(v));
  }
  return m;
}

VectorField operator*(double s, VectorField x) { return x *= s; }

double max_abs_diff(const VectorField& a, const VectorField& b) {
  if (a.grid() != b.grid()) {
    throw std::invalid_argument("max_abs_diff: mismatched vector fields");
  }
  double m = 0.0;
  for (int c = 0; c < a.grid().dim(); ++c) {
    const auto& x = a.component(c);
    const auto& y = b.component(c);
    for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, std::abs(x[i] - y[i]));
  }
  return m;
}

}  // namespace sdlab
