#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "bo2d/evolution.hpp"
#include "bo2d/params.hpp"
#include "bo2d/spectral_field.hpp"

namespace bo2d {

/// ||Lambda^s u||_{L2}, computed spectrally.
double hs_norm(const SpectralField& u, double s);

/// Relative mass of the xi = 0 column above which the X^s norm is undefined.
inline constexpr double kXsMeanTolerance = 1e-10;

/// ||u||_{H^s} + ||d_x^{-1} u||_{H^s}; empty when the xi = 0 column carries
/// more than kXsMeanTolerance of the L2 norm.
std::optional<double> xs_norm(const SpectralField& u, double s);

/// (cell_area * sum |u|^p)^{1/p} on the grid; p = infinity gives the grid max.
double lp_norm(const SpectralField& u, double p);
double linf_norm(const SpectralField& u);

/// |u|_inf + |u_x|_inf + |u_y|_inf.
double w1inf_norm(const SpectralField& u);

/// ||(1 + x^2 + y^2)^{theta/2} u||_{L2} with the weight truncated to the domain.
double weighted_l2(const SpectralField& u, double theta);

/// |u_x|_inf |u|_inf^{p-1}.
double gronwall_integrand(const SpectralField& u, int p);

/// ||Lambda^1 u||_{L1}.
double l1_sobolev(const SpectralField& u);
/// |u|_{L1} + ||grad u|_{R^2}|_{L1}.
double l1_gradient(const SpectralField& u);

struct NormRequests {
  std::vector<double> lp;
  double theta = 1.0;
  /// Also evaluate the L1-type functionals of the small-data hypothesis.
  bool l1 = false;
};

struct NormReport {
  double time = 0.0;
  double s = 0.0;
  double l2 = 0.0;
  double hs = 0.0;
  std::optional<double> xs;
  double linf = 0.0;
  double w1inf = 0.0;
  std::map<double, double> lp;
  double theta = 0.0;
  double weighted = 0.0;
  double gronwall_integrand = 0.0;
  std::optional<double> l1_sobolev;
  std::optional<double> l1_gradient;
};

NormReport norms(const SpectralField& u, const EquationParams& params, const NormRequests& requests = {});

struct DecayFit {
  std::pair<double, double> window;
  double exponent = 0.0;
  double amplitude = 0.0;
  double r_squared = 0.0;
  std::size_t samples = 0;
};

/// Least-squares fit of log value = log amplitude + exponent log t over the
/// samples with t in the closed window. Needs at least 8 samples there, all
/// with t > 0 and value > 0; throws InvalidArgument otherwise.
DecayFit fit_decay(const std::vector<std::pair<double, double>>& series, std::pair<double, double> window);

/// J(t) = (1 + t) integral_0^t dtau / ((1 + t - tau)(1 + tau)^{p-1}),
/// by adaptive Gauss-Kronrod on geometrically graded panels.
double j_integral(double t, int p);

struct GronwallEnvelope {
  std::vector<double> times;
  std::vector<double> envelope;
  std::vector<double> measured;
  double c = 0.0;
};

/// ||phi||_s exp(c integral_0^t integrand) by cumulative trapezoid over the
/// trajectory's gronwall_integrand samples, next to the measured ||u(t)||_s.
GronwallEnvelope gronwall_envelope(const Trajectory& traj, double c);

/// Smallest c >= 0 for which the envelope covers the measured norm at every
/// snapshot with time <= t_cal.
double calibrate_gronwall(const Trajectory& traj, double t_cal);

/// Fraction of the L2 mass in the outer `strip` fraction of the domain:
/// |x| > (1 - strip) Lx or |y| > (1 - strip) Ly.
double boundary_strip_fraction(const SpectralField& u, double strip = 0.1);

/// Largest snapshot time up to which every snapshot keeps its boundary-strip
/// fraction below `threshold` (the window before wrap-around). Returns the
/// first snapshot time when even that one fails.
double valid_window_end(const std::vector<SpectralField>& snapshots, double threshold = 1e-4,
                        double strip = 0.1);

/// Calibration of ||w u(t)|| <= e^{Bt} (||w phi||^2 + t A M(t)^2)^{1/2},
/// M(t) = max_{tau <= t} ||u(tau)||_{X^s}.
struct WeightedBound {
  double a = 0.0;
  double b = 0.0;
  double evaluate(double t, double w0, double m) const;
};

/// Smallest B with A = 0, and smallest A with B = 0, each making the bound
/// hold on all samples with 0 < t <= t_cal. `times`, `weighted` and
/// `xs_running_max` are parallel arrays starting at t = 0.
std::pair<WeightedBound, WeightedBound> calibrate_weighted_bound(const std::vector<double>& times,
                                                                 const std::vector<double>& weighted,
                                                                 const std::vector<double>& xs_running_max,
                                                                 double t_cal);

}  // namespace bo2d
