#include "bo2d/diagnostics.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <sstream>

#include "bo2d/errors.hpp"
#include "bo2d/multiplier.hpp"

namespace bo2d {

namespace {

double grid_max(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

double hs_norm(const SpectralField& u, double s) { return l2_norm(lambda_s(u, s)); }

std::optional<double> xs_norm(const SpectralField& u, double s) {
  const double total = l2_norm(u);
  if (x_mean_norm(u) > kXsMeanTolerance * total) return std::nullopt;
  return hs_norm(u, s) + hs_norm(inv_dx(u), s);
}

double lp_norm(const SpectralField& u, double p) {
  if (!(p >= 1.0)) throw InvalidArgument("Lebesgue exponent must be at least 1");
  const auto v = inverse_transform(u);
  if (std::isinf(p)) return grid_max(v);
  const double peak = grid_max(v);
  if (peak == 0.0) return 0.0;
  double sum = 0.0;
  for (double x : v) sum += std::pow(std::abs(x) / peak, p);
  return peak * std::pow(sum * u.grid.cell_area(), 1.0 / p);
}

double linf_norm(const SpectralField& u) { return grid_max(inverse_transform(u)); }

double w1inf_norm(const SpectralField& u) {
  return linf_norm(u) + linf_norm(deriv_x(u)) + linf_norm(deriv_y(u));
}

double weighted_l2(const SpectralField& u, double theta) {
  if (theta == 0.0) return l2_norm(u);
  const auto& g = u.grid;
  const auto v = inverse_transform(u);
  double sum = 0.0;
  for (std::size_t ix = 0; ix < g.nx(); ++ix)
    for (std::size_t iy = 0; iy < g.ny(); ++iy) {
      const double w = std::pow(1.0 + g.x(ix) * g.x(ix) + g.y(iy) * g.y(iy), theta);
      const double a = v[g.index(ix, iy)];
      sum += w * a * a;
    }
  return std::sqrt(sum * g.cell_area());
}

double gronwall_integrand(const SpectralField& u, int p) {
  return linf_norm(deriv_x(u)) * std::pow(linf_norm(u), p - 1);
}

double l1_sobolev(const SpectralField& u) { return lp_norm(lambda_s(u, 1.0), 1.0); }

double l1_gradient(const SpectralField& u) {
  const auto v = inverse_transform(u);
  const auto vx = inverse_transform(deriv_x(u));
  const auto vy = inverse_transform(deriv_y(u));
  double sum = 0.0;
  for (std::size_t k = 0; k < v.size(); ++k) sum += std::abs(v[k]) + std::hypot(vx[k], vy[k]);
  return sum * u.grid.cell_area();
}

NormReport norms(const SpectralField& u, const EquationParams& params, const NormRequests& requests) {
  NormReport r;
  r.time = u.time;
  r.s = params.s;
  r.l2 = l2_norm(u);
  r.hs = hs_norm(u, params.s);
  r.xs = xs_norm(u, params.s);
  r.linf = linf_norm(u);
  r.w1inf = w1inf_norm(u);
  for (double p : requests.lp) r.lp[p] = lp_norm(u, p);
  r.theta = requests.theta;
  r.weighted = weighted_l2(u, requests.theta);
  r.gronwall_integrand = gronwall_integrand(u, params.p);
  if (requests.l1) {
    r.l1_sobolev = l1_sobolev(u);
    r.l1_gradient = l1_gradient(u);
  }
  return r;
}

DecayFit fit_decay(const std::vector<std::pair<double, double>>& series, std::pair<double, double> window) {
  if (!(window.first < window.second)) throw InvalidArgument("decay window must satisfy t_min < t_max");
  std::vector<std::pair<double, double>> pts;
  for (auto [t, v] : series) {
    if (t < window.first || t > window.second) continue;
    if (!(t > 0.0)) throw InvalidArgument("decay fit needs positive times");
    if (!(v > 0.0)) {
      std::ostringstream os;
      os << "decay fit needs positive values (got " << v << " at t = " << t << ")";
      throw InvalidArgument(os.str());
    }
    pts.emplace_back(std::log(t), std::log(v));
  }
  if (pts.size() < 8) {
    std::ostringstream os;
    os << "decay fit needs at least 8 samples in the window (got " << pts.size() << ")";
    throw InvalidArgument(os.str());
  }
  const double n = double(pts.size());
  double mx = 0.0, my = 0.0;
  for (auto [x, y] : pts) {
    mx += x;
    my += y;
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (auto [x, y] : pts) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
    syy += (y - my) * (y - my);
  }
  DecayFit fit;
  fit.window = window;
  fit.samples = pts.size();
  fit.exponent = sxx > 0.0 ? sxy / sxx : 0.0;
  fit.amplitude = std::exp(my - fit.exponent * mx);
  double ss_res = 0.0;
  for (auto [x, y] : pts) {
    const double e = y - (my + fit.exponent * (x - mx));
    ss_res += e * e;
  }
  // round-off level spread counts as a perfect (constant) fit
  const double floor = 1e-24 * n * std::max(1.0, my * my);
  fit.r_squared = syy > floor ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
  return fit;
}

double j_integral(double t, int p) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw InvalidArgument("J(t) needs finite t >= 0");
  if (p < 1) throw InvalidArgument("J(t) needs p >= 1");
  if (t == 0.0) return 0.0;
  auto f = [t, p](double tau) { return 1.0 / ((1.0 + t - tau) * std::pow(1.0 + tau, p - 1)); };
  // Panels graded geometrically toward both ends, where the factors vary
  // on unit scale.
  std::vector<double> cuts{0.0};
  const double mid = 0.5 * t;
  for (double d = 1.0; d < mid; d *= 2.0) cuts.push_back(d);
  cuts.push_back(mid);
  const std::size_t left = cuts.size();
  for (std::size_t j = left - 1; j-- > 0;) cuts.push_back(t - cuts[j]);
  using boost::math::quadrature::gauss_kronrod;
  double sum = 0.0;
  for (std::size_t j = 0; j + 1 < cuts.size(); ++j)
    sum += gauss_kronrod<double, 31>::integrate(f, cuts[j], cuts[j + 1], 15, 1e-15);
  return (1.0 + t) * sum;
}

GronwallEnvelope gronwall_envelope(const Trajectory& traj, double c) {
  GronwallEnvelope out;
  out.c = c;
  const auto& d = traj.diagnostics;
  if (d.empty()) return out;
  const double phi_s = d.front().hs;
  double integral = 0.0;
  for (std::size_t j = 0; j < d.size(); ++j) {
    if (j > 0) integral += 0.5 * (d[j].time - d[j - 1].time) * (d[j].gronwall_integrand + d[j - 1].gronwall_integrand);
    out.times.push_back(d[j].time);
    out.envelope.push_back(phi_s * std::exp(c * integral));
    out.measured.push_back(d[j].hs);
  }
  return out;
}

double calibrate_gronwall(const Trajectory& traj, double t_cal) {
  const auto base = gronwall_envelope(traj, 1.0);
  const double phi_s = base.envelope.empty() ? 0.0 : base.envelope.front();
  double c = 0.0;
  for (std::size_t j = 1; j < base.times.size() && base.times[j] <= t_cal; ++j) {
    const double integral = std::log(base.envelope[j] / phi_s);
    if (base.measured[j] > phi_s && integral > 0.0)
      c = std::max(c, std::log(base.measured[j] / phi_s) / integral);
  }
  return c;
}

double boundary_strip_fraction(const SpectralField& u, double strip) {
  const auto& g = u.grid;
  const auto v = inverse_transform(u);
  const double xcut = (1.0 - strip) * g.lx(), ycut = (1.0 - strip) * g.ly();
  double outer = 0.0, total = 0.0;
  for (std::size_t ix = 0; ix < g.nx(); ++ix)
    for (std::size_t iy = 0; iy < g.ny(); ++iy) {
      const double m = v[g.index(ix, iy)] * v[g.index(ix, iy)];
      total += m;
      if (std::abs(g.x(ix)) > xcut || std::abs(g.y(iy)) > ycut) outer += m;
    }
  return total > 0.0 ? outer / total : 0.0;
}

double valid_window_end(const std::vector<SpectralField>& snapshots, double threshold, double strip) {
  if (snapshots.empty()) throw InvalidArgument("valid_window_end needs snapshots");
  double end = snapshots.front().time;
  for (const auto& s : snapshots) {
    if (boundary_strip_fraction(s, strip) >= threshold) break;
    end = s.time;
  }
  return end;
}

double WeightedBound::evaluate(double t, double w0, double m) const {
  return std::exp(b * t) * std::sqrt(w0 * w0 + t * a * m * m);
}

std::pair<WeightedBound, WeightedBound> calibrate_weighted_bound(const std::vector<double>& times,
                                                                 const std::vector<double>& weighted,
                                                                 const std::vector<double>& xs_running_max,
                                                                 double t_cal) {
  if (times.empty() || times.size() != weighted.size() || times.size() != xs_running_max.size())
    throw InvalidArgument("weighted-bound calibration needs parallel, non-empty series");
  const double w0 = weighted.front();
  WeightedBound growth, forcing;
  for (std::size_t j = 1; j < times.size() && times[j] <= t_cal; ++j) {
    const double t = times[j];
    if (t <= 0.0) continue;
    if (weighted[j] > w0 && w0 > 0.0) growth.b = std::max(growth.b, std::log(weighted[j] / w0) / t);
    const double m = xs_running_max[j];
    if (weighted[j] > w0 && m > 0.0)
      forcing.a = std::max(forcing.a, (weighted[j] * weighted[j] - w0 * w0) / (t * m * m));
  }
  return {growth, forcing};
}

}  // namespace bo2d
