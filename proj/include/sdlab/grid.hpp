#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace sdlab {

// Periodic structured grid on a flat torus: an n-dimensional box of nodes
// (n = 1, 2 or 3) with uniform spacing and a constant diagonal metric per
// axis. Every axis wraps around, so the complex has no boundary and every
// telescoping sum over a coordinate direction cancels exactly.
//
// Centered differences on such a grid have a checkerboard null mode (the
// alternating-sign field on an even axis). Callers that need smooth fields
// should band-limit their data; the mode is documented, not filtered.
class Grid {
public:
  static constexpr int max_dim = 3;

  // sizes: node count per axis, each even and >= 4.
  // spacings: positive step per axis.
  // metric: positive diagonal coefficients g_ii; defaults to all ones.
  Grid(std::vector<int> sizes, std::vector<double> spacings,
       std::vector<double> metric = {});

  int dim() const { return n_; }
  int size(int axis) const { return sizes_[static_cast<std::size_t>(axis)]; }
  double spacing(int axis) const { return spacings_[static_cast<std::size_t>(axis)]; }
  double metric_coeff(int axis) const { return metric_[static_cast<std::size_t>(axis)]; }
  double volume_scale() const { return volume_scale_; }  // sqrt(det g)
  double cell_volume() const { return cell_volume_; }    // prod h_i
  double min_spacing() const;
  std::size_t node_count() const { return nodes_; }
  std::size_t stride(int axis) const { return strides_[static_cast<std::size_t>(axis)]; }

  // Node coordinate along an axis; the torus is [0, N_i h_i) per axis.
  double coord(int axis, int index) const {
    return spacings_[static_cast<std::size_t>(axis)] * index;
  }

  // Axis length N_i h_i.
  double extent(int axis) const {
    return spacings_[static_cast<std::size_t>(axis)] * sizes_[static_cast<std::size_t>(axis)];
  }

  // Flat index of the periodic neighbor `delta` steps along `axis`.
  std::size_t neighbor(std::size_t flat, int axis, int delta) const;

  // Multi-index of a flat node index (row major, axis 0 slowest).
  std::array<int, max_dim> decompose(std::size_t flat) const;

  // Coordinates of a node given its flat index.
  std::array<double, max_dim> node_coords(std::size_t flat) const;

  bool operator==(const Grid& other) const;
  bool operator!=(const Grid& other) const { return !(*this == other); }

private:
  int n_ = 0;
  std::array<int, max_dim> sizes_{};
  std::array<double, max_dim> spacings_{};
  std::array<double, max_dim> metric_{};
  std::array<std::size_t, max_dim> strides_{};
  std::size_t nodes_ = 0;
  double volume_scale_ = 1.0;
  double cell_volume_ = 1.0;
};

}  // namespace sdlab
