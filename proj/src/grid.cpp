#include "bo2d/grid.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "bo2d/errors.hpp"

namespace bo2d {

namespace {

void check_points(const char* name, std::size_t n) {
  if (n % 2 != 0) {
    std::ostringstream os;
    os << name << " must be even (got " << n << ")";
    throw InvalidArgument(os.str());
  }
  if (n < 8) {
    std::ostringstream os;
    os << name << " must be at least 8 (got " << n << ")";
    throw InvalidArgument(os.str());
  }
}

void check_length(const char* name, double l) {
  if (!(l > 0.0) || !std::isfinite(l)) {
    std::ostringstream os;
    os << name << " must be a positive finite length (got " << l << ")";
    throw InvalidArgument(os.str());
  }
}

long signed_mode(std::size_t j, std::size_t n) {
  return j < n / 2 ? static_cast<long>(j) : static_cast<long>(j) - static_cast<long>(n);
}

}  // namespace

Grid2D::Grid2D(std::size_t nx, std::size_t ny, double lx, double ly)
    : nx_(nx), ny_(ny), lx_(lx), ly_(ly) {
  check_points("nx", nx);
  check_points("ny", ny);
  check_length("Lx", lx);
  check_length("Ly", ly);
}

long Grid2D::kx(std::size_t ix) const noexcept { return signed_mode(ix, nx_); }
long Grid2D::ky(std::size_t iy) const noexcept { return signed_mode(iy, ny_); }

double Grid2D::xi(std::size_t ix) const noexcept {
  return std::numbers::pi * static_cast<double>(kx(ix)) / lx_;
}

double Grid2D::eta(std::size_t iy) const noexcept {
  return std::numbers::pi * static_cast<double>(ky(iy)) / ly_;
}

double Grid2D::xi_max() const noexcept {
  return std::numbers::pi * static_cast<double>(nx_ / 2) / lx_;
}

double Grid2D::eta_max() const noexcept {
  return std::numbers::pi * static_cast<double>(ny_ / 2) / ly_;
}

Grid2D make_grid(std::size_t nx, std::size_t ny, double lx, double ly) {
  return Grid2D(nx, ny, lx, ly);
}

void require_same_grid(const Grid2D& a, const Grid2D& b) {
  if (!(a == b)) {
    std::ostringstream os;
    os << "grid mismatch: " << a.nx() << "x" << a.ny() << " on [" << a.lx() << ", " << a.ly()
       << "] vs " << b.nx() << "x" << b.ny() << " on [" << b.lx() << ", " << b.ly() << "]";
    throw GridMismatch(os.str());
  }
}

}  // namespace bo2d
