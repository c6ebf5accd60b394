#pragma once

#include <complex>
#include <cstddef>
#include <span>

namespace bo2d::fft {

using cplx = std::complex<double>;

enum class Direction { forward, backward };

/// Unnormalized in-place 2D DFT of an n0 x n1 row-major array. The forward
/// kernel is e^{-i k x}, the backward kernel e^{+i k x}.
void dft2(std::span<cplx> data, std::size_t n0, std::size_t n1, Direction dir);

/// Unnormalized in-place 1D DFT.
void dft1(std::span<cplx> data, Direction dir);

/// Smallest even n' >= n whose only prime factors are 2, 3, 5 and 7.
std::size_t good_size(std::size_t n);

const char* backend_version();

}  // namespace bo2d::fft
