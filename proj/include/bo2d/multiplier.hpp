#pragma once

#include <variant>
#include <vector>

#include "bo2d/params.hpp"
#include "bo2d/spectral_field.hpp"

namespace bo2d {

namespace symbols {

/// -i sgn(xi). Zero on the xi = 0 column and on the Nyquist column.
struct HilbertX {};
/// 1 / (i xi). Zero on the xi = 0 column and on the Nyquist column.
struct InvDx {};
/// i xi, zero on the Nyquist column.
struct DerivX {};
/// i eta, zero on the Nyquist row.
struct DerivY {};
/// (1 + xi^2 + eta^2)^{s/2}.
struct LambdaS {
  double s;
};
/// (xi^2 + eta^2)^{s/2}, zero at the origin.
struct HomogeneousS {
  double s;
};
/// Linear group e^{-i omega(xi, eta) t}; omega is the dispersion relation.
struct Dispersion {
  double t;
  double alpha;
  double gamma;
};
/// Tabulated per-mode values in grid storage order.
struct Custom {
  Grid2D grid;
  std::vector<cplx> values;
};

}  // namespace symbols

using MultiplierSymbol =
    std::variant<symbols::HilbertX, symbols::InvDx, symbols::DerivX, symbols::DerivY,
                 symbols::LambdaS, symbols::HomogeneousS, symbols::Dispersion, symbols::Custom>;

/// omega(xi, eta) = sgn(xi)(xi^2 + alpha eta^2) - gamma eta^2 / xi, and 0 at xi = 0.
double dispersion_symbol(double xi, double eta, double alpha, double gamma);
double dispersion_symbol(double xi, double eta, const EquationParams& params);

/// Symbol values on every mode of the grid, in storage order.
std::vector<cplx> evaluate(const MultiplierSymbol& m, const Grid2D& grid);

/// Pointwise coefficient product. The reality flag survives whenever the
/// symbol satisfies m(-k) = conj(m(k)), which holds for every built-in kind.
SpectralField apply_multiplier(const SpectralField& u, const MultiplierSymbol& m);

SpectralField hilbert_x(const SpectralField& u);
SpectralField inv_dx(const SpectralField& u);
SpectralField deriv_x(const SpectralField& u);
SpectralField deriv_y(const SpectralField& u);
SpectralField lambda_s(const SpectralField& u, double s);

}  // namespace bo2d
