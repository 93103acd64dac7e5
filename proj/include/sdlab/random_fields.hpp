#pragma once

#include <cstdint>

#include "sdlab/form.hpp"

namespace sdlab {

// Smooth random test fields: superpositions of low trigonometric modes with
// random amplitudes and phases. Band limiting keeps the per-axis mode index
// at or below max(1, N_i / 6), so the centered-difference checkerboard mode
// never enters. Deterministic for a given seed.
Form random_form(const Grid& grid, int degree, std::uint64_t seed,
                 double amplitude = 1.0);

VectorField random_vector_field(const Grid& grid, std::uint64_t seed,
                                double amplitude = 1.0);

// Random scalar samples bounded away from zero: offset + amplitude-scaled
// band-limited field, clipped so the minimum stays >= floor.
Form random_positive_scalar(const Grid& grid, std::uint64_t seed, double offset = 2.0,
                            double amplitude = 0.5);

}  // namespace sdlab
