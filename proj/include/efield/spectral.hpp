#pragma once

#include <span>
#include <vector>

#include "efield/espace.hpp"

namespace efield::spectral {

// Zeroes every Fourier coefficient of a periodic-grid field whose magnitude is
// below relative_threshold times the largest coefficient (Krasny filter).
// Throws InvalidArgument on non-periodic grids.
void fourier_noise_filter(const espace::Grid& grid, std::span<double> values,
                          double relative_threshold);

// |DFT| of a real series for bins 0..n_fft/2, zero-padding x to n_fft.
std::vector<double> magnitude_spectrum(std::span<const double> x, std::size_t n_fft);

}  // namespace efield::spectral
