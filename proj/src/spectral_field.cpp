#include "bo2d/spectral_field.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bo2d/errors.hpp"
#include "bo2d/fft.hpp"

namespace bo2d {

namespace {

void check_size(const Grid2D& grid, std::size_t n) {
  if (n != grid.size())
    throw GridMismatch("sample array has " + std::to_string(n) + " entries, grid needs " +
                       std::to_string(grid.size()));
}

std::size_t mirror(std::size_t j, std::size_t n) { return (n - j) % n; }

}  // namespace

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  require_same_grid(grid, other.grid);
  for (std::size_t k = 0; k < coeffs.size(); ++k) coeffs[k] += other.coeffs[k];
  real = real && other.real;
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
  require_same_grid(grid, other.grid);
  for (std::size_t k = 0; k < coeffs.size(); ++k) coeffs[k] -= other.coeffs[k];
  real = real && other.real;
  return *this;
}

SpectralField& SpectralField::operator*=(double a) {
  for (auto& c : coeffs) c *= a;
  return *this;
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator*(double a, SpectralField f) { return f *= a; }

SpectralField transform(const Grid2D& grid, std::span<const double> samples, double time) {
  check_size(grid, samples.size());
  SpectralField u(grid, time, true);
  std::copy(samples.begin(), samples.end(), u.coeffs.begin());
  fft::dft2(u.coeffs, grid.nx(), grid.ny(), fft::Direction::forward);
  u *= 1.0 / std::sqrt(static_cast<double>(grid.size()));
  return u;
}

SpectralField transform(const Grid2D& grid, std::span<const cplx> samples, double time) {
  check_size(grid, samples.size());
  SpectralField u(grid, time, false);
  std::copy(samples.begin(), samples.end(), u.coeffs.begin());
  fft::dft2(u.coeffs, grid.nx(), grid.ny(), fft::Direction::forward);
  u *= 1.0 / std::sqrt(static_cast<double>(grid.size()));
  return u;
}

std::vector<cplx> inverse_transform_complex(const SpectralField& u) {
  std::vector<cplx> out = u.coeffs;
  fft::dft2(out, u.grid.nx(), u.grid.ny(), fft::Direction::backward);
  const double scale = 1.0 / std::sqrt(static_cast<double>(u.grid.size()));
  for (auto& v : out) v *= scale;
  return out;
}

std::vector<double> inverse_transform(const SpectralField& u) {
  const auto c = inverse_transform_complex(u);
  std::vector<double> out(c.size());
  std::transform(c.begin(), c.end(), out.begin(), [](cplx v) { return v.real(); });
  return out;
}

cplx inner(const SpectralField& a, const SpectralField& b) {
  require_same_grid(a.grid, b.grid);
  cplx acc{0.0, 0.0};
  for (std::size_t k = 0; k < a.coeffs.size(); ++k) acc += std::conj(a.coeffs[k]) * b.coeffs[k];
  return acc * a.grid.cell_area();
}

double l2_norm(const SpectralField& u) {
  double acc = 0.0;
  for (const auto& c : u.coeffs) acc += std::norm(c);
  return std::sqrt(acc * u.grid.cell_area());
}

double x_mean_norm(const SpectralField& u) {
  double acc = 0.0;
  for (std::size_t iy = 0; iy < u.grid.ny(); ++iy) acc += std::norm(u(0, iy));
  return std::sqrt(acc * u.grid.cell_area());
}

SpectralField project_zero_x_mean(SpectralField u) {
  for (std::size_t iy = 0; iy < u.grid.ny(); ++iy) u(0, iy) = 0.0;
  return u;
}

double conjugate_symmetry_defect(const SpectralField& u) {
  const auto& g = u.grid;
  double scale = 0.0, defect = 0.0;
  for (const auto& c : u.coeffs) scale = std::max(scale, std::abs(c));
  if (scale == 0.0) return 0.0;
  for (std::size_t ix = 0; ix < g.nx(); ++ix)
    for (std::size_t iy = 0; iy < g.ny(); ++iy) {
      const cplx d = u(ix, iy) - std::conj(u(mirror(ix, g.nx()), mirror(iy, g.ny())));
      defect = std::max(defect, std::abs(d));
    }
  return defect / scale;
}

bool all_finite(const SpectralField& u) {
  return std::all_of(u.coeffs.begin(), u.coeffs.end(),
                     [](cplx c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); });
}

double relative_l2_distance(const SpectralField& a, const SpectralField& b) {
  const double diff = l2_norm(a - b);
  const double ref = l2_norm(b);
  return ref > 0.0 ? diff / ref : diff;
}

SpectralField reflect(const SpectralField& u) {
  const auto& g = u.grid;
  SpectralField out(g, u.time, u.real);
  for (std::size_t ix = 0; ix < g.nx(); ++ix)
    for (std::size_t iy = 0; iy < g.ny(); ++iy)
      out(mirror(ix, g.nx()), mirror(iy, g.ny())) = u(ix, iy);
  return out;
}

SpectralField shift_cells(const SpectralField& u, long sx, long sy) {
  const auto& g = u.grid;
  SpectralField out = u;
  const double two_pi = 2.0 * std::numbers::pi;
  for (std::size_t ix = 0; ix < g.nx(); ++ix)
    for (std::size_t iy = 0; iy < g.ny(); ++iy) {
      const double phase = -two_pi * (static_cast<double>(g.kx(ix) * sx) / g.nx() +
                                      static_cast<double>(g.ky(iy) * sy) / g.ny());
      out(ix, iy) *= std::polar(1.0, phase);
    }
  return out;
}

}  // namespace bo2d
