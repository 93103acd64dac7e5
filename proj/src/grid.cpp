#include "sdlab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace sdlab {

Grid::Grid(std::vector<int> sizes, std::vector<double> spacings,
           std::vector<double> metric) {
  n_ = static_cast<int>(sizes.size());
  if (n_ < 1 || n_ > max_dim) {
    throw std::invalid_argument("grid dimension must be 1, 2, or 3");
  }
  if (spacings.size() != sizes.size()) {
    throw std::invalid_argument("grid: spacings count must match sizes count");
  }
  if (metric.empty()) {
    metric.assign(sizes.size(), 1.0);
  }
  if (metric.size() != sizes.size()) {
    throw std::invalid_argument("grid: metric count must match sizes count");
  }

  nodes_ = 1;
  volume_scale_ = 1.0;
  cell_volume_ = 1.0;
  for (int a = 0; a < n_; ++a) {
    const auto ua = static_cast<std::size_t>(a);
    if (sizes[ua] < 4 || sizes[ua] % 2 != 0) {
      throw std::invalid_argument("grid: axis size must be even and >= 4, got " +
                                  std::to_string(sizes[ua]));
    }
    if (!(spacings[ua] > 0.0)) {
      throw std::invalid_argument("grid: spacings must be positive");
    }
    if (!(metric[ua] > 0.0)) {
      throw std::invalid_argument("grid: metric coefficients must be positive");
    }
    sizes_[ua] = sizes[ua];
    spacings_[ua] = spacings[ua];
    metric_[ua] = metric[ua];
    nodes_ *= static_cast<std::size_t>(sizes[ua]);
    volume_scale_ *= metric[ua];
    cell_volume_ *= spacings[ua];
  }
  volume_scale_ = std::sqrt(volume_scale_);

  // Row major: axis 0 slowest, axis n-1 contiguous.
  strides_[static_cast<std::size_t>(n_ - 1)] = 1;
  for (int a = n_ - 2; a >= 0; --a) {
    strides_[static_cast<std::size_t>(a)] =
        strides_[static_cast<std::size_t>(a + 1)] *
        static_cast<std::size_t>(sizes_[static_cast<std::size_t>(a + 1)]);
  }
}

double Grid::min_spacing() const {
  double h = spacings_[0];
  for (int a = 1; a < n_; ++a) h = std::min(h, spacings_[static_cast<std::size_t>(a)]);
  return h;
}

std::size_t Grid::neighbor(std::size_t flat, int axis, int delta) const {
  const auto ua = static_cast<std::size_t>(axis);
  const int nsize = sizes_[ua];
  const std::size_t str = strides_[ua];
  const int i = static_cast<int>((flat / str) % static_cast<std::size_t>(nsize));
  int j = (i + delta) % nsize;
  if (j < 0) j += nsize;
  return flat - static_cast<std::size_t>(i) * str + static_cast<std::size_t>(j) * str;
}

std::array<int, Grid::max_dim> Grid::decompose(std::size_t flat) const {
  std::array<int, max_dim> c{};
  for (int a = 0; a < n_; ++a) {
    const auto ua = static_cast<std::size_t>(a);
    c[ua] = static_cast<int>((flat / strides_[ua]) % static_cast<std::size_t>(sizes_[ua]));
  }
  return c;
}

std::array<double, Grid::max_dim> Grid::node_coords(std::size_t flat) const {
  const auto c = decompose(flat);
  std::array<double, max_dim> x{};
  for (int a = 0; a < n_; ++a) {
    x[static_cast<std::size_t>(a)] = coord(a, c[static_cast<std::size_t>(a)]);
  }
  return x;
}

bool Grid::operator==(const Grid& other) const {
  if (n_ != other.n_) return false;
  for (int a = 0; a < n_; ++a) {
    const auto ua = static_cast<std::size_t>(a);
    if (sizes_[ua] != other.sizes_[ua]) return false;
    if (spacings_[ua] != other.spacings_[ua]) return false;
    if (metric_[ua] != other.metric_[ua]) return false;
  }
  return true;
}

}  // namespace sdlab
