#include "bo2d/multiplier.hpp"

#include <cmath>
#include <sstream>

#include "bo2d/errors.hpp"

namespace bo2d {

void EquationParams::validate() const {
  std::ostringstream os;
  if (p < 1) os << "p must be a positive integer (got " << p << "); ";
  if (!(s > 2.0)) os << "s must exceed 2 (got " << s << "); ";
  if (!std::isfinite(alpha)) os << "alpha must be finite; ";
  if (!std::isfinite(gamma)) os << "gamma must be finite; ";
  if (!os.str().empty()) throw InvalidArgument(os.str());
}

double dispersion_symbol(double xi, double eta, double alpha, double gamma) {
  if (xi == 0.0) return 0.0;
  const double sgn = xi > 0.0 ? 1.0 : -1.0;
  return sgn * (xi * xi + alpha * eta * eta) - gamma * eta * eta / xi;
}

double dispersion_symbol(double xi, double eta, const EquationParams& params) {
  return dispersion_symbol(xi, eta, params.alpha, params.gamma);
}

namespace {

template <class F>
std::vector<cplx> tabulate(const Grid2D& g, F&& f) {
  std::vector<cplx> out(g.size());
  for (std::size_t ix = 0; ix < g.nx(); ++ix)
    for (std::size_t iy = 0; iy < g.ny(); ++iy) out[g.index(ix, iy)] = f(ix, iy);
  return out;
}

struct Evaluator {
  const Grid2D& g;

  std::vector<cplx> operator()(symbols::HilbertX) const {
    return tabulate(g, [&](std::size_t ix, std::size_t) -> cplx {
      const long k = g.kx(ix);
      if (k == 0 || g.is_nyquist_x(ix)) return 0.0;
      return {0.0, k > 0 ? -1.0 : 1.0};
    });
  }

  std::vector<cplx> operator()(symbols::InvDx) const {
    return tabulate(g, [&](std::size_t ix, std::size_t) -> cplx {
      if (g.kx(ix) == 0 || g.is_nyquist_x(ix)) return 0.0;
      return {0.0, -1.0 / g.xi(ix)};
    });
  }

  std::vector<cplx> operator()(symbols::DerivX) const {
    return tabulate(g, [&](std::size_t ix, std::size_t) -> cplx {
      if (g.is_nyquist_x(ix)) return 0.0;
      return {0.0, g.xi(ix)};
    });
  }

  std::vector<cplx> operator()(symbols::DerivY) const {
    return tabulate(g, [&](std::size_t, std::size_t iy) -> cplx {
      if (g.is_nyquist_y(iy)) return 0.0;
      return {0.0, g.eta(iy)};
    });
  }

  std::vector<cplx> operator()(symbols::LambdaS m) const {
    return tabulate(g, [&](std::size_t ix, std::size_t iy) -> cplx {
      const double r2 = g.xi(ix) * g.xi(ix) + g.eta(iy) * g.eta(iy);
      return std::pow(1.0 + r2, 0.5 * m.s);
    });
  }

  std::vector<cplx> operator()(symbols::HomogeneousS m) const {
    return tabulate(g, [&](std::size_t ix, std::size_t iy) -> cplx {
      const double r2 = g.xi(ix) * g.xi(ix) + g.eta(iy) * g.eta(iy);
      return r2 == 0.0 ? 0.0 : std::pow(r2, 0.5 * m.s);
    });
  }

  std::vector<cplx> operator()(symbols::Dispersion m) const {
    return tabulate(g, [&](std::size_t ix, std::size_t iy) -> cplx {
      if (g.is_nyquist_x(ix)) return 1.0;
      const double w = dispersion_symbol(g.xi(ix), g.eta(iy), m.alpha, m.gamma);
      return std::polar(1.0, -w * m.t);
    });
  }

  std::vector<cplx> operator()(const symbols::Custom& m) const {
    require_same_grid(m.grid, g);
    if (m.values.size() != g.size())
      throw GridMismatch("custom multiplier table does not match the grid size");
    return m.values;
  }
};

bool hermitian(const std::vector<cplx>& m, const Grid2D& g) {
  for (std::size_t ix = 0; ix < g.nx(); ++ix)
    for (std::size_t iy = 0; iy < g.ny(); ++iy) {
      const cplx a = m[g.index(ix, iy)];
      const cplx b = m[g.index((g.nx() - ix) % g.nx(), (g.ny() - iy) % g.ny())];
      if (std::abs(a - std::conj(b)) > 1e-14 * (1.0 + std::abs(a))) return false;
    }
  return true;
}

}  // namespace

std::vector<cplx> evaluate(const MultiplierSymbol& m, const Grid2D& grid) {
  return std::visit(Evaluator{grid}, m);
}

SpectralField apply_multiplier(const SpectralField& u, const MultiplierSymbol& m) {
  const auto values = evaluate(m, u.grid);
  SpectralField out(u.grid, u.time, u.real);
  for (std::size_t k = 0; k < values.size(); ++k) out.coeffs[k] = values[k] * u.coeffs[k];
  if (u.real && std::holds_alternative<symbols::Custom>(m)) out.real = hermitian(values, u.grid);
  return out;
}

SpectralField hilbert_x(const SpectralField& u) { return apply_multiplier(u, symbols::HilbertX{}); }
SpectralField inv_dx(const SpectralField& u) { return apply_multiplier(u, symbols::InvDx{}); }
SpectralField deriv_x(const SpectralField& u) { return apply_multiplier(u, symbols::DerivX{}); }
SpectralField deriv_y(const SpectralField& u) { return apply_multiplier(u, symbols::DerivY{}); }
SpectralField lambda_s(const SpectralField& u, double s) {
  return apply_multiplier(u, symbols::LambdaS{s});
}

}  // namespace bo2d
