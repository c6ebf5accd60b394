#pragma once

#include <cstddef>
#include <vector>

#include "bo2d/spectral_field.hpp"

namespace bo2d {

/// Points per axis of the zero-padded grid used for degree-d products:
/// more than (d + 1) n / 2, rounded up to an even FFT-friendly size.
std::size_t padded_size(std::size_t n, int degree);

/// Alias-free pointwise product of all factors.
///
/// The factors are interpolated onto a grid padded by (degree + 1) / 2 per
/// axis, multiplied there and projected back onto the retained modes. For
/// polynomial degree <= `degree` no wrapped mode reaches the retained band.
/// Nyquist coefficients are split evenly between +n/2 and -n/2 on the way
/// up and folded back on the way down. `degree` < 0 means factors.size().
SpectralField dealias_product(const std::vector<SpectralField>& factors, int degree = -1);

/// u^k with degree-`degree` padding (degree < 0 means k). When `max_abs` is
/// given it receives max |u| over the padded grid.
SpectralField dealias_power(const SpectralField& u, int k, int degree = -1,
                            double* max_abs = nullptr);

}  // namespace bo2d
