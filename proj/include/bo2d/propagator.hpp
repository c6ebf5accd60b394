#pragma once

#include <complex>

#include "bo2d/params.hpp"
#include "bo2d/spectral_field.hpp"

namespace bo2d {

/// Linear group: every coefficient is multiplied by e^{-i omega t}, with
/// omega = dispersion_symbol(xi, eta, params), and the time tag advances by t.
///
/// In the forward-transform convention used here (kernel e^{-i<x,xi>},
/// Hilbert symbol -i sgn xi) this is the solution operator of
/// u_t + H u_xx + alpha H u_yy - gamma d_x^{-1} u_yy = 0. Written in the
/// e^{+i<x,xi>} forward convention the same operator carries
/// e^{+i sgn(xi)(xi^2 + eta^2) t}.
///
/// Throws XsViolation when gamma != 0 and u has a non-zero x-mean.
SpectralField propagate(const SpectralField& u, double t, const EquationParams& params);

/// F(a) = integral_a^infinity e^{i s^2 / 4} ds.
///
/// Power series for |a| <= 4.5, a continued fraction for the complementary
/// error function up to 200, and its asymptotic series beyond. Negative
/// arguments use F(-a) = 2 F(0) - F(a). Absolute accuracy 1e-10 for
/// |a| <= 1e4; larger arguments saturate to the asymptotic series.
std::complex<double> fresnel_tail(double a);

/// Inverse Fourier transform (unitary, e^{+i<x,xi>}) of
/// e^{i sgn(xi)(xi^2 + eta^2) t}:
///
///   I(t)(x, y) = (c/t) e^{-i(x^2+y^2)/4t} F(x/sqrt t)
///              + (conj(c)/t) e^{+i(x^2+y^2)/4t} conj(F(x/sqrt t)),
///   c = (1 + i) / (4 sqrt(2 pi)).
///
/// The two summands are complex conjugates, so the value is real. Negative
/// t uses I(t)(x, y) = I(-t)(-x, -y). Throws InvalidArgument at t = 0.
std::complex<double> kernel_I(double t, double x, double y);

/// Same linear group as propagate (alpha = 1, gamma = 0 only), computed as
/// (1/2pi) times the convolution of the samples with the explicit kernel.
///
/// The kernel is separable, so the convolution runs as two passes of 1D
/// periodic convolutions. Each pass interpolates the data onto a line
/// refined until the kernel's chirp is resolved over the whole period, and
/// the kernel is tapered smoothly to zero between half and full domain
/// width so that its periodic images do not overlap. A warning is issued
/// when more than 1e-6 of the data's mass lies outside the half-domain.
///
/// Throws InvalidArgument ("kernel unavailable") for alpha != 1 or
/// gamma != 0, and for complex input.
SpectralField propagate_via_kernel(const SpectralField& u, double t, const EquationParams& params);

/// Fraction of the L2 mass with |x| > Lx/2 or |y| > Ly/2.
double outside_half_domain_fraction(const SpectralField& u);

}  // namespace bo2d
