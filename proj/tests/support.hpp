#pragma once

#include <cmath>
#include <map>
#include <random>
#include <utility>
#include <vector>

#include "bo2d/spectral_field.hpp"

namespace testing {

using bo2d::cplx;
using bo2d::Grid2D;
using bo2d::SpectralField;

/// Real field with random modes |k| <= kmax on each axis; amplitudes decay
/// like e^{-|k|/2}. Independent of the library's own generator.
inline SpectralField random_field(const Grid2D& g, unsigned seed, long kmax) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<double> samples(g.size(), 0.0);
  for (long kx = -kmax; kx <= kmax; ++kx)
    for (long ky = -kmax; ky <= kmax; ++ky) {
      const double amp = std::exp(-0.5 * std::hypot(kx, ky));
      const double a = amp * normal(rng), b = amp * normal(rng);
      for (std::size_t ix = 0; ix < g.nx(); ++ix)
        for (std::size_t iy = 0; iy < g.ny(); ++iy) {
          const double ph = M_PI * (kx * g.x(ix) / g.lx() + ky * g.y(iy) / g.ly());
          samples[g.index(ix, iy)] += a * std::cos(ph) + b * std::sin(ph);
        }
    }
  return bo2d::transform(g, samples);
}

/// Coefficients as a map wavenumber -> physical amplitude, with Nyquist
/// coefficients split evenly between +n/2 and -n/2.
using Spectrum = std::map<std::pair<long, long>, cplx>;

inline Spectrum to_spectrum(const SpectralField& u) {
  const auto& g = u.grid;
  const double scale = 1.0 / std::sqrt(static_cast<double>(g.size()));
  Spectrum out;
  for (std::size_t ix = 0; ix < g.nx(); ++ix)
    for (std::size_t iy = 0; iy < g.ny(); ++iy) {
      const cplx c = u(ix, iy) * scale;
      if (c == cplx{0.0, 0.0}) continue;
      std::vector<long> xs{g.kx(ix)}, ys{g.ky(iy)};
      if (g.is_nyquist_x(ix)) xs.push_back(-g.kx(ix));
      if (g.is_nyquist_y(iy)) ys.push_back(-g.ky(iy));
      const double w = 1.0 / static_cast<double>(xs.size() * ys.size());
      for (long a : xs)
        for (long b : ys) out[{a, b}] += w * c;
    }
  return out;
}

/// Exact product of trigonometric polynomials by direct convolution.
inline Spectrum convolve(const Spectrum& a, const Spectrum& b) {
  Spectrum out;
  for (const auto& [ka, ca] : a)
    for (const auto& [kb, cb] : b) out[{ka.first + kb.first, ka.second + kb.second}] += ca * cb;
  return out;
}

/// Projects onto the grid's retained modes, folding +-n/2 into the Nyquist slot.
inline SpectralField from_spectrum(const Spectrum& s, const Grid2D& g) {
  SpectralField out(g);
  const double scale = std::sqrt(static_cast<double>(g.size()));
  const long hx = static_cast<long>(g.nx() / 2), hy = static_cast<long>(g.ny() / 2);
  for (const auto& [k, c] : s) {
    if (std::abs(k.first) > hx || std::abs(k.second) > hy) continue;
    const long sx = (k.first % static_cast<long>(g.nx()) + g.nx()) % g.nx();
    const long sy = (k.second % static_cast<long>(g.ny()) + g.ny()) % g.ny();
    out(sx, sy) += scale * c;
  }
  return out;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double max_abs(const std::vector<double>& a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace testing
