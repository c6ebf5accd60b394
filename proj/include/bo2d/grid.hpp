#pragma once

#include <cstddef>

namespace bo2d {

/// Uniform periodic rectangle [-Lx, Lx) x [-Ly, Ly) with nx x ny points.
///
/// Storage order (physical samples and Fourier coefficients alike) is
/// row-major with x as the slow index: element (ix, iy) lives at
/// ix * ny + iy. Fourier indices follow the FFT convention: slot j holds
/// wavenumber j for j < n/2 and j - n otherwise, so slot n/2 is the
/// Nyquist mode -n/2. Angular frequencies are xi = pi * k / Lx.
class Grid2D {
 public:
  Grid2D(std::size_t nx, std::size_t ny, double lx, double ly);

  std::size_t nx() const noexcept { return nx_; }
  std::size_t ny() const noexcept { return ny_; }
  double lx() const noexcept { return lx_; }
  double ly() const noexcept { return ly_; }
  std::size_t size() const noexcept { return nx_ * ny_; }
  std::size_t index(std::size_t ix, std::size_t iy) const noexcept { return ix * ny_ + iy; }

  double dx() const noexcept { return 2.0 * lx_ / static_cast<double>(nx_); }
  double dy() const noexcept { return 2.0 * ly_ / static_cast<double>(ny_); }
  double cell_area() const noexcept { return dx() * dy(); }

  double x(std::size_t ix) const noexcept { return -lx_ + dx() * static_cast<double>(ix); }
  double y(std::size_t iy) const noexcept { return -ly_ + dy() * static_cast<double>(iy); }

  /// Signed integer wavenumber stored in slot ix (resp. iy).
  long kx(std::size_t ix) const noexcept;
  long ky(std::size_t iy) const noexcept;
  double xi(std::size_t ix) const noexcept;
  double eta(std::size_t iy) const noexcept;
  bool is_nyquist_x(std::size_t ix) const noexcept { return ix == nx_ / 2; }
  bool is_nyquist_y(std::size_t iy) const noexcept { return iy == ny_ / 2; }

  /// Largest |xi| on the lattice (the Nyquist magnitude).
  double xi_max() const noexcept;
  double eta_max() const noexcept;

  bool operator==(const Grid2D&) const = default;

 private:
  std::size_t nx_;
  std::size_t ny_;
  double lx_;
  double ly_;
};

Grid2D make_grid(std::size_t nx, std::size_t ny, double lx, double ly);

/// Throws GridMismatch unless a == b.
void require_same_grid(const Grid2D& a, const Grid2D& b);

}  // namespace bo2d
