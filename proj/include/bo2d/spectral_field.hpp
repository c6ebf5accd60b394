#pragma once

#include <complex>
#include <span>
#include <vector>

#include "bo2d/grid.hpp"

namespace bo2d {

using cplx = std::complex<double>;

/// Scalar field held as Fourier coefficients on a Grid2D.
///
/// Normalization is the unitary DFT: coeffs = DFT(samples) / sqrt(nx ny),
/// with forward kernel e^{-i<x,xi>} measured from the first grid point.
/// Consequently sum |u_j|^2 = sum |coeffs_k|^2, and the discrete L2 norm is
/// sqrt(cell_area * sum |coeffs_k|^2).
struct SpectralField {
  Grid2D grid;
  std::vector<cplx> coeffs;
  double time = 0.0;
  bool real = true;

  explicit SpectralField(const Grid2D& g, double t = 0.0, bool is_real = true)
      : grid(g), coeffs(g.size(), cplx{0.0, 0.0}), time(t), real(is_real) {}

  cplx& operator()(std::size_t ix, std::size_t iy) { return coeffs[grid.index(ix, iy)]; }
  const cplx& operator()(std::size_t ix, std::size_t iy) const {
    return coeffs[grid.index(ix, iy)];
  }

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator-=(const SpectralField& other);
  SpectralField& operator*=(double a);
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(double a, SpectralField f);

/// Physical samples -> coefficients. Throws GridMismatch on a size mismatch.
SpectralField transform(const Grid2D& grid, std::span<const double> samples, double time = 0.0);
SpectralField transform(const Grid2D& grid, std::span<const cplx> samples, double time = 0.0);

/// Coefficients -> physical samples. The real overload drops imaginary
/// round-off and is only meaningful for real fields.
std::vector<double> inverse_transform(const SpectralField& u);
std::vector<cplx> inverse_transform_complex(const SpectralField& u);

/// Samples a function of (x, y) on the grid.
template <class F>
std::vector<double> sample(const Grid2D& g, F&& f) {
  std::vector<double> out(g.size());
  for (std::size_t ix = 0; ix < g.nx(); ++ix)
    for (std::size_t iy = 0; iy < g.ny(); ++iy) out[g.index(ix, iy)] = f(g.x(ix), g.y(iy));
  return out;
}

/// Discrete inner product cell_area * sum conj(a_k) b_k.
cplx inner(const SpectralField& a, const SpectralField& b);
double l2_norm(const SpectralField& u);

/// L2 norm of the xi = 0 column (the x-mean profile).
double x_mean_norm(const SpectralField& u);
/// Zeroes the xi = 0 column.
SpectralField project_zero_x_mean(SpectralField u);

/// Largest deviation from u(-k) = conj(u(k)) relative to max |u_k|.
double conjugate_symmetry_defect(const SpectralField& u);
bool all_finite(const SpectralField& u);

/// Relative L2 distance |a - b| / |b| (absolute when b = 0).
double relative_l2_distance(const SpectralField& a, const SpectralField& b);

/// u(-x, -y) on the grid, i.e. coefficient k -> -k.
SpectralField reflect(const SpectralField& u);

/// Translation by whole grid cells: result(x) = u(x - sx dx, y - sy dy).
SpectralField shift_cells(const SpectralField& u, long sx, long sy);

}  // namespace bo2d
