#include "bo2d/propagator.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "bo2d/errors.hpp"
#include "bo2d/fft.hpp"
#include "bo2d/log.hpp"
#include "bo2d/multiplier.hpp"

namespace bo2d {

namespace {

using std::numbers::pi;

void require_xs(const SpectralField& u, const EquationParams& params) {
  if (params.gamma == 0.0) return;
  const double mean = x_mean_norm(u);
  const double total = l2_norm(u);
  if (mean > 1e-12 * total) {
    std::ostringstream os;
    os << "X^s violation: gamma = " << params.gamma
       << " requires zero x-mean data (x-mean column carries " << mean / total
       << " of the L2 norm)";
    throw XsViolation(os.str());
  }
}

const std::complex<double> kKernelC = std::complex<double>{1.0, 1.0} / (4.0 * std::sqrt(2.0 * pi));

// C-infinity step: 1 for r <= L/2, 0 for r >= L.
double taper(double r, double l) {
  const double u = (std::abs(r) - 0.5 * l) / (0.5 * l);
  if (u <= 0.0) return 1.0;
  if (u >= 1.0) return 0.0;
  const double a = std::exp(-1.0 / (1.0 - u));
  const double b = std::exp(-1.0 / u);
  return a / (a + b);
}

// Periodic 1D convolution of every line of `data` along one axis with a
// kernel sampled on a line refined `refine` times.
class AxisConvolver {
 public:
  template <class Kernel>
  AxisConvolver(std::size_t n, double half_length, std::size_t refine, Kernel&& kernel)
      : n_(n), refine_(refine), fine_(n * refine), h_(2.0 * half_length / double(n * refine)),
        kernel_hat_(fine_) {
    for (std::size_t j = 0; j < fine_; ++j) {
      const long m = j < fine_ / 2 ? long(j) : long(j) - long(fine_);
      const double off = h_ * double(m);
      kernel_hat_[j] = kernel(off) * taper(off, half_length);
    }
    fft::dft1(kernel_hat_, fft::Direction::forward);
  }

  void apply(std::vector<cplx>& line) const {
    fft::dft1(line, fft::Direction::forward);
    std::vector<cplx> spec(fine_, cplx{0.0, 0.0});
    for (std::size_t j = 0; j < n_; ++j) {
      if (j < n_ / 2) {
        spec[j] += line[j];
      } else if (j > n_ / 2) {
        spec[fine_ - (n_ - j)] += line[j];
      } else {
        spec[n_ / 2] += 0.5 * line[j];
        spec[fine_ - n_ / 2] += 0.5 * line[j];
      }
    }
    for (std::size_t j = 0; j < fine_; ++j) spec[j] *= kernel_hat_[j];
    fft::dft1(spec, fft::Direction::backward);
    const double scale = h_ / double(n_);
    for (std::size_t j = 0; j < n_; ++j) line[j] = spec[j * refine_] * scale;
  }

 private:
  std::size_t n_;
  std::size_t refine_;
  std::size_t fine_;
  double h_;
  std::vector<cplx> kernel_hat_;
};

// Refinement making the chirp e^{i r^2/4t} resolved out to |r| = L.
std::size_t refinement(double half_length, double spacing, double t) {
  const double need = 1.3 * half_length * spacing / (2.0 * pi * std::abs(t));
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(need)));
}

}  // namespace

SpectralField propagate(const SpectralField& u, double t, const EquationParams& params) {
  require_xs(u, params);
  SpectralField out = apply_multiplier(u, symbols::Dispersion{t, params.alpha, params.gamma});
  out.time = u.time + t;
  return out;
}

std::complex<double> kernel_I(double t, double x, double y) {
  if (t == 0.0) throw InvalidArgument("kernel undefined at t=0");
  if (t < 0.0) return kernel_I(-t, -x, -y);
  const double phase = (x * x + y * y) / (4.0 * t);
  const auto f = fresnel_tail(x / std::sqrt(t));
  const auto first = kKernelC / t * std::polar(1.0, -phase) * f;
  const auto second = std::conj(kKernelC) / t * std::polar(1.0, phase) * std::conj(f);
  return first + second;
}

double outside_half_domain_fraction(const SpectralField& u) {
  const auto& g = u.grid;
  const auto v = inverse_transform_complex(u);
  double outside = 0.0, total = 0.0;
  for (std::size_t ix = 0; ix < g.nx(); ++ix)
    for (std::size_t iy = 0; iy < g.ny(); ++iy) {
      const double m = std::norm(v[g.index(ix, iy)]);
      total += m;
      if (std::abs(g.x(ix)) > 0.5 * g.lx() || std::abs(g.y(iy)) > 0.5 * g.ly()) outside += m;
    }
  return total > 0.0 ? outside / total : 0.0;
}

SpectralField propagate_via_kernel(const SpectralField& u, double t, const EquationParams& params) {
  if (params.alpha != 1.0 || params.gamma != 0.0)
    throw InvalidArgument("kernel unavailable: the explicit kernel needs alpha = 1 and gamma = 0");
  if (!u.real) throw InvalidArgument("kernel unavailable for complex fields");
  if (t == 0.0) return u;
  if (const double tail = outside_half_domain_fraction(u); tail > 1e-6) {
    std::ostringstream os;
    os << "propagate_via_kernel: " << tail
       << " of the mass lies outside the half-domain; periodic images will overlap";
    warn(os.str());
  }

  const auto& g = u.grid;
  const double tau = std::abs(t);
  const double sgn = t > 0.0 ? 1.0 : -1.0;
  // The group multiplies by e^{-i omega t}; its kernel is I(t)(-x, -y), i.e.
  // 2 Re[(c/tau) A(x) B(y)] with the factors below.
  auto along_x = [&](double x) {
    return std::polar(1.0, -x * x / (4.0 * tau)) * fresnel_tail(-sgn * x / std::sqrt(tau));
  };
  auto along_y = [&](double y) { return std::polar(1.0, -y * y / (4.0 * tau)); };

  const AxisConvolver conv_x(g.nx(), g.lx(), refinement(g.lx(), g.dx(), tau), along_x);
  const AxisConvolver conv_y(g.ny(), g.ly(), refinement(g.ly(), g.dy(), tau), along_y);

  auto data = inverse_transform_complex(u);
  for (auto& v : data) v = v.real();
  std::vector<cplx> line(g.nx());
  for (std::size_t iy = 0; iy < g.ny(); ++iy) {
    for (std::size_t ix = 0; ix < g.nx(); ++ix) line[ix] = data[g.index(ix, iy)];
    conv_x.apply(line);
    for (std::size_t ix = 0; ix < g.nx(); ++ix) data[g.index(ix, iy)] = line[ix];
  }
  line.resize(g.ny());
  for (std::size_t ix = 0; ix < g.nx(); ++ix) {
    std::copy_n(data.begin() + g.index(ix, 0), g.ny(), line.begin());
    conv_y.apply(line);
    std::copy_n(line.begin(), g.ny(), data.begin() + g.index(ix, 0));
  }

  const cplx scale = kKernelC / tau / pi;  // 2 Re[...] / (2 pi)
  std::vector<double> out(g.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = (scale * data[k]).real();
  return transform(g, out, u.time + t);
}

}  // namespace bo2d
