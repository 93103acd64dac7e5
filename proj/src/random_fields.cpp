#include "sdlab/random_fields.hpp"

#include <cmath>
#include <random>

namespace sdlab {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

double next_uniform(std::mt19937_64& eng) {
  // 53-bit mantissa in [0, 1); identical across platforms for a given seed.
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

// One band-limited scalar array: sum over a small box of integer modes of
// A cos(k . x + phi), normalized so the amplitude stays O(1).
std::vector<double> band_limited_samples(const Grid& grid, std::mt19937_64& eng,
                                         double amplitude) {
  const int n = grid.dim();
  int max_mode[Grid::max_dim] = {0, 0, 0};
  int mode_count = 1;
  for (int a = 0; a < n; ++a) {
    max_mode[a] = std::max(1, grid.size(a) / 6);
    mode_count *= 2 * max_mode[a] + 1;
  }

  struct ModeTerm {
    double k[Grid::max_dim];
    double amp;
    double phase;
  };
  std::vector<ModeTerm> terms;
  terms.reserve(static_cast<std::size_t>(mode_count));
  const double norm = amplitude / std::sqrt(static_cast<double>(mode_count));

  int m[Grid::max_dim] = {0, 0, 0};
  for (m[0] = -max_mode[0]; m[0] <= max_mode[0]; ++m[0]) {
    for (m[1] = -max_mode[1]; m[1] <= (n > 1 ? max_mode[1] : -max_mode[1]);
         ++m[1]) {
      for (m[2] = -max_mode[2]; m[2] <= (n > 2 ? max_mode[2] : -max_mode[2]);
           ++m[2]) {
        ModeTerm t{};
        for (int a = 0; a < n; ++a) {
          t.k[a] = kTwoPi * m[a] / grid.extent(a);
        }
        t.amp = norm * (2.0 * next_uniform(eng) - 1.0);
        t.phase = kTwoPi * next_uniform(eng);
        terms.push_back(t);
      }
    }
  }

  std::vector<double> out(grid.node_count());
  for (std::size_t idx = 0; idx < out.size(); ++idx) {
    const auto x = grid.node_coords(idx);
    double v = 0.0;
    for (const auto& t : terms) {
      double arg = t.phase;
      for (int a = 0; a < n; ++a) arg += t.k[a] * x[static_cast<std::size_t>(a)];
      v += t.amp * std::cos(arg);
    }
    out[idx] = v;
  }
  return out;
}

}  // namespace

Form random_form(const Grid& grid, int degree, std::uint64_t seed, double amplitude) {
  std::mt19937_64 eng(seed);
  Form out(grid, degree);
  for (int c = 0; c < out.component_count(); ++c) {
    out.component(c) = band_limited_samples(grid, eng, amplitude);
  }
  return out;
}

VectorField random_vector_field(const Grid& grid, std::uint64_t seed, double amplitude) {
  std::mt19937_64 eng(seed ^ 0x9e3779b97f4a7c15ull);
  VectorField out(grid);
  for (int a = 0; a < grid.dim(); ++a) {
    out.component(a) = band_limited_samples(grid, eng, amplitude);
  }
  return out;
}

Form random_positive_scalar(const Grid& grid, std::uint64_t seed, double offset,
                            double amplitude) {
  std::mt19937_64 eng(seed ^ 0xda442d24691348aaull);
  Form out(grid, 0);
  auto samples = band_limited_samples(grid, eng, amplitude);
  const double floor = 0.1 * offset;
  for (double& v : samples) v = std::max(offset + v, floor);
  out.component(0) = std::move(samples);
  return out;
}

}  // namespace sdlab
