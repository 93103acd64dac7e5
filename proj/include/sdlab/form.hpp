#pragma once

#include <array>
#include <functional>
#include <vector>

#include "sdlab/grid.hpp"

namespace sdlab {

int binomial(int n, int k);

// Component bookkeeping for degree-k forms: each component is labeled by a
// strictly increasing multi-index J of axes, stored as a bitmask (bit a set
// means dx^{a+1} participates). Masks are enumerated in ascending numeric
// order, which coincides with lexicographic order of the index tuples.
std::vector<unsigned> component_masks(int n, int k);

// Sign of the permutation that sorts the concatenation (lo, hi) of two
// disjoint ascending multi-indices into one ascending multi-index.
int merge_sign(unsigned lo, unsigned hi);

// Degree-k differential form sampled at grid nodes, one scalar array per
// increasing multi-index (C(n,k) arrays). Plain value type; all operators in
// dec.hpp are pure functions of these.
class Form {
public:
  Form(Grid grid, int degree);

  using Sampler =
      std::function<double(unsigned mask, const std::array<double, Grid::max_dim>&)>;
  static Form sampled(const Grid& grid, int degree, const Sampler& f);

  int degree() const { return degree_; }
  const Grid& grid() const { return grid_; }
  int component_count() const { return static_cast<int>(comps_.size()); }
  unsigned mask_of(int c) const { return masks_[static_cast<std::size_t>(c)]; }
  int index_of(unsigned mask) const;

  std::vector<double>& component(int c) { return comps_[static_cast<std::size_t>(c)]; }
  const std::vector<double>& component(int c) const {
    return comps_[static_cast<std::size_t>(c)];
  }

  Form& operator+=(const Form& other);
  Form& operator-=(const Form& other);
  Form& operator*=(double s);

  double norm_inf() const;

private:
  Grid grid_;
  int degree_;
  std::vector<unsigned> masks_;
  std::vector<std::vector<double>> comps_;
};

Form operator+(Form a, const Form& b);
Form operator-(Form a, const Form& b);
Form operator*(double s, Form a);
Form operator-(Form a);

double max_abs_diff(const Form& a, const Form& b);

// Vector field with contravariant components, one array per axis.
class VectorField {
public:
  explicit VectorField(Grid grid);

  using Sampler =
      std::function<double(int axis, const std::array<double, Grid::max_dim>&)>;
  static VectorField sampled(const Grid& grid, const Sampler& f);

  const Grid& grid() const { return grid_; }
  std::vector<double>& component(int axis) { return comps_[static_cast<std::size_t>(axis)]; }
  const std::vector<double>& component(int axis) const {
    return comps_[static_cast<std::size_t>(axis)];
  }

  VectorField& operator+=(const VectorField& other);
  VectorField& operator*=(double s);
  double norm_inf() const;

private:
  Grid grid_;
  std::vector<std::vector<double>> comps_;
};

VectorField operator*(double s, VectorField x);
double max_abs_diff(const VectorField& a, const VectorField& b);

}  // namespace sdlab
