#include <cmath>
#include <complex>
#include <numbers>

#include "bo2d/propagator.hpp"

namespace bo2d {

namespace {

using cd = std::complex<double>;

constexpr double kSeriesLimit = 4.5;
constexpr double kAsymptoticLimit = 200.0;

// F(0) = sqrt(pi) e^{i pi/4}
cd tail_at_zero() { return std::sqrt(std::numbers::pi) * std::polar(1.0, std::numbers::pi / 4); }

// integral_0^a e^{i s^2/4} ds = sum_n (i/4)^n a^{2n+1} / (n! (2n+1))
cd head_series(double a) {
  const cd q = cd{0.0, 0.25} * a * a;
  cd term = a;  // (i a^2/4)^n a / n!
  cd sum = term;
  for (int n = 1; n < 200; ++n) {
    term *= q / static_cast<double>(n);
    const cd add = term / static_cast<double>(2 * n + 1);
    sum += add;
    if (std::abs(add) < 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

// F(a) = a e^{i a^2/4} / f with the even continued fraction of erfc:
//   f = (2z^2 + 1) - 1*2 / ((2z^2 + 5) - 3*4 / ((2z^2 + 9) - ...)),
//   2 z^2 = -i a^2 / 2.   Modified Lentz evaluation.
cd tail_continued_fraction(double a) {
  const cd two_z2{0.0, -0.5 * a * a};
  constexpr double tiny = 1e-300;
  cd f = two_z2 + 1.0;
  cd c = f, d = 0.0;
  for (int j = 1; j < 5000; ++j) {
    const double aj = -static_cast<double>((2 * j - 1) * (2 * j));
    const cd bj = two_z2 + static_cast<double>(1 + 4 * j);
    d = bj + aj * d;
    if (std::abs(d) == 0.0) d = tiny;
    c = bj + aj / c;
    if (std::abs(c) == 0.0) c = tiny;
    d = 1.0 / d;
    const cd delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return a * std::polar(1.0, 0.25 * a * a) / f;
}

// F(a) ~ (2i/a) e^{i a^2/4} sum_n (2n-1)!! / (i a^2/2)^n
cd tail_asymptotic(double a) {
  const cd x = 1.0 / cd{0.0, 0.5 * a * a};
  cd term = 1.0, sum = 1.0;
  for (int n = 1; n < 30; ++n) {
    const cd next = term * x * static_cast<double>(2 * n - 1);
    if (std::abs(next) >= std::abs(term)) break;
    term = next;
    sum += term;
    if (std::abs(term) < 1e-18) break;
  }
  return cd{0.0, 2.0 / a} * std::polar(1.0, 0.25 * a * a) * sum;
}

cd tail_nonnegative(double a) {
  if (a <= kSeriesLimit) return tail_at_zero() - head_series(a);
  if (a <= kAsymptoticLimit) return tail_continued_fraction(a);
  return tail_asymptotic(a);
}

}  // namespace

std::complex<double> fresnel_tail(double a) {
  if (a >= 0.0) return tail_nonnegative(a);
  return 2.0 * tail_at_zero() - tail_nonnegative(-a);
}

}  // namespace bo2d
