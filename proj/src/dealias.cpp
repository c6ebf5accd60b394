#include "bo2d/dealias.hpp"

#include <algorithm>
#include <cmath>

#include "bo2d/errors.hpp"
#include "bo2d/fft.hpp"

namespace bo2d {

namespace {

struct Target {
  std::size_t slot;
  double weight;
};

// Padded slots receiving coarse slot j (one, or two for the Nyquist mode).
void embed_axis(std::size_t j, std::size_t n, std::size_t m, Target out[2], int& count) {
  if (j < n / 2) {
    out[0] = {j, 1.0};
    count = 1;
  } else if (j > n / 2) {
    out[0] = {m - (n - j), 1.0};
    count = 1;
  } else {
    out[0] = {m - n / 2, 0.5};
    out[1] = {n / 2, 0.5};
    count = 2;
  }
}

// Coarse slot for padded slot q, or n when q is discarded.
std::size_t fold_axis(std::size_t q, std::size_t n, std::size_t m) {
  const long k = q < m / 2 ? static_cast<long>(q) : static_cast<long>(q) - static_cast<long>(m);
  const long half = static_cast<long>(n / 2);
  if (k > half || k < -half) return n;
  if (k == half || k == -half) return n / 2;
  return k >= 0 ? static_cast<std::size_t>(k) : static_cast<std::size_t>(k + static_cast<long>(n));
}

class PaddedSpace {
 public:
  PaddedSpace(const Grid2D& g, int degree)
      : g_(g), mx_(padded_size(g.nx(), degree)), my_(padded_size(g.ny(), degree)) {}

  std::size_t size() const { return mx_ * my_; }

  std::vector<cplx> to_physical(const SpectralField& u) const {
    std::vector<cplx> buf(size(), cplx{0.0, 0.0});
    Target tx[2], ty[2];
    int cx = 0, cy = 0;
    for (std::size_t ix = 0; ix < g_.nx(); ++ix) {
      embed_axis(ix, g_.nx(), mx_, tx, cx);
      for (std::size_t iy = 0; iy < g_.ny(); ++iy) {
        embed_axis(iy, g_.ny(), my_, ty, cy);
        const cplx c = u(ix, iy);
        for (int a = 0; a < cx; ++a)
          for (int b = 0; b < cy; ++b)
            buf[tx[a].slot * my_ + ty[b].slot] += tx[a].weight * ty[b].weight * c;
      }
    }
    fft::dft2(buf, mx_, my_, fft::Direction::backward);
    const double scale = 1.0 / std::sqrt(static_cast<double>(g_.size()));
    for (auto& v : buf) v *= scale;
    return buf;
  }

  SpectralField to_spectral(std::vector<cplx> buf, double time, bool real) const {
    fft::dft2(buf, mx_, my_, fft::Direction::forward);
    const double scale = std::sqrt(static_cast<double>(g_.size())) / static_cast<double>(size());
    SpectralField out(g_, time, real);
    for (std::size_t qx = 0; qx < mx_; ++qx) {
      const std::size_t ix = fold_axis(qx, g_.nx(), mx_);
      if (ix == g_.nx()) continue;
      for (std::size_t qy = 0; qy < my_; ++qy) {
        const std::size_t iy = fold_axis(qy, g_.ny(), my_);
        if (iy == g_.ny()) continue;
        out(ix, iy) += scale * buf[qx * my_ + qy];
      }
    }
    return out;
  }

 private:
  const Grid2D& g_;
  std::size_t mx_;
  std::size_t my_;
};

}  // namespace

std::size_t padded_size(std::size_t n, int degree) {
  // Split Nyquist modes make each factor's band |k| <= n/2 inclusive, so
  // the padded size must strictly exceed (degree + 1) n / 2.
  const auto need = static_cast<std::size_t>(degree + 1) * n / 2 + 1;
  return fft::good_size(std::max(need, n));
}

SpectralField dealias_product(const std::vector<SpectralField>& factors, int degree) {
  if (factors.empty()) throw InvalidArgument("dealias_product needs at least one factor");
  const Grid2D& g = factors.front().grid;
  for (const auto& f : factors) require_same_grid(g, f.grid);
  if (degree < 0) degree = static_cast<int>(factors.size());
  if (degree < 1) throw InvalidArgument("dealiasing degree must be positive");

  PaddedSpace space(g, degree);
  bool real = true;
  std::vector<cplx> acc;
  for (const auto& f : factors) {
    real = real && f.real;
    auto phys = space.to_physical(f);
    if (acc.empty()) {
      acc = std::move(phys);
    } else {
      for (std::size_t k = 0; k < acc.size(); ++k) acc[k] *= phys[k];
    }
  }
  if (real)
    for (auto& v : acc) v = v.real();
  return space.to_spectral(std::move(acc), factors.front().time, real);
}

SpectralField dealias_power(const SpectralField& u, int k, int degree, double* max_abs) {
  if (k < 1) throw InvalidArgument("dealias_power needs a positive exponent");
  if (degree < 0) degree = k;
  PaddedSpace space(u.grid, degree);
  auto phys = space.to_physical(u);
  double peak = 0.0;
  for (auto& v : phys) {
    if (u.real) v = v.real();
    const double a = std::abs(v);
    peak = std::isfinite(a) ? std::max(peak, a) : HUGE_VAL;
    cplx p = v;
    for (int j = 1; j < k; ++j) p *= v;
    v = p;
  }
  if (max_abs) *max_abs = peak;
  return space.to_spectral(std::move(phys), u.time, u.real);
}

}  // namespace bo2d
