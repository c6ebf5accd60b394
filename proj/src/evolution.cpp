#include "bo2d/evolution.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <optional>
#include <sstream>

#include "bo2d/dealias.hpp"
#include "bo2d/errors.hpp"
#include "bo2d/log.hpp"
#include "bo2d/multiplier.hpp"

namespace bo2d {

namespace {

// e^{-i omega t} tabulated once for repeated application.
class LinearFlow {
 public:
  LinearFlow(const Grid2D& g, double t, const EquationParams& params)
      : phase_(evaluate(symbols::Dispersion{t, params.alpha, params.gamma}, g)) {}

  void apply(SpectralField& u) const {
    for (std::size_t k = 0; k < phase_.size(); ++k) u.coeffs[k] *= phase_[k];
  }
  SpectralField operator()(SpectralField u) const {
    apply(u);
    return u;
  }

 private:
  std::vector<cplx> phase_;
};

// y = x + a z, coefficientwise.
SpectralField axpy(SpectralField x, double a, const SpectralField& z) {
  for (std::size_t k = 0; k < x.coeffs.size(); ++k) x.coeffs[k] += a * z.coeffs[k];
  return x;
}

double sup_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::isfinite(x) ? std::max(m, std::abs(x)) : HUGE_VAL;
  return m;
}

double physical_sup(const SpectralField& u) { return sup_abs(inverse_transform(u)); }

[[noreturn]] void throw_blow_up(double t, double sup) {
  std::ostringstream os;
  os.precision(6);
  os << "blow-up detected at t = " << t << " (|u|_inf = " << sup << ")";
  throw BlowUp(os.str(), t);
}

SpectralField rhs(const SpectralField& u, int p, Nonlinearity form, double t) {
  double sup = 0.0;
  SpectralField out(u.grid, u.time, u.real);
  switch (form) {
    case Nonlinearity::conservative:
      out = nonlinear_rhs(u, p, &sup);
      break;
    case Nonlinearity::convective:
      out = nonlinear_rhs_convective(u, p);
      sup = all_finite(out) ? 0.0 : HUGE_VAL;
      break;
    case Nonlinearity::none:
      sup = all_finite(u) ? 0.0 : HUGE_VAL;
      break;
  }
  if (!(sup <= kBlowUpThreshold)) throw_blow_up(t, sup);
  return out;
}

void require_xs_data(const SpectralField& u, const EquationParams& params) {
  if (params.gamma != 0.0 && x_mean_norm(u) > 1e-12 * l2_norm(u))
    throw XsViolation("X^s violation: gamma != 0 requires zero x-mean data");
}

// Integrating-factor RK4 with the half-step flow precomputed.
SpectralField rk4(const SpectralField& u, double h, const LinearFlow& half, const EquationParams& params,
                  Nonlinearity form) {
  const int p = params.p;
  const double t0 = u.time;
  const SpectralField a = rhs(u, p, form, t0);
  const SpectralField eu = half(u);
  const SpectralField ua = half(axpy(u, 0.5 * h, a));
  const SpectralField b = rhs(ua, p, form, t0 + 0.5 * h);
  const SpectralField ub = axpy(eu, 0.5 * h, b);
  const SpectralField c = rhs(ub, p, form, t0 + 0.5 * h);
  const SpectralField eeu = half(eu);
  const SpectralField ec = half(c);
  const SpectralField uc = axpy(eeu, h, ec);
  const SpectralField d = rhs(uc, p, form, t0 + h);

  // E_h u + h/6 (E_h a + 2 E_{h/2}(b + c) + d)
  SpectralField acc = half(half(a));
  SpectralField bc = half(b + c);
  for (std::size_t k = 0; k < acc.coeffs.size(); ++k)
    acc.coeffs[k] += 2.0 * bc.coeffs[k] + d.coeffs[k];
  SpectralField out = axpy(eeu, h / 6.0, acc);
  out.time = t0 + h;
  out.real = u.real;
  if (!all_finite(out)) throw_blow_up(t0 + h, HUGE_VAL);
  return out;
}

}  // namespace

void SolveSchedule::validate() const {
  std::ostringstream os;
  if (!(dt > 0.0) || !std::isfinite(dt)) os << "dt must be positive (got " << dt << ")";
  else if (!(t_end > 0.0) || !std::isfinite(t_end)) os << "t_end must be positive (got " << t_end << ")";
  else if (snapshot_stride < 1) os << "snapshot_stride must be at least 1 (got " << snapshot_stride << ")";
  else if (!(cfl_guard > 0.0 && cfl_guard <= 1.0)) os << "cfl_guard must lie in (0, 1] (got " << cfl_guard << ")";
  else return;
  throw InvalidArgument(os.str());
}

SpectralField nonlinear_rhs(const SpectralField& u, int p, double* max_abs) {
  if (p < 1) throw InvalidArgument("p must be at least 1");
  SpectralField out = deriv_x(dealias_power(u, p + 1, p + 1, max_abs));
  out *= -1.0 / double(p + 1);
  out.time = u.time;
  return out;
}

SpectralField nonlinear_rhs_convective(const SpectralField& u, int p) {
  if (p < 1) throw InvalidArgument("p must be at least 1");
  std::vector<SpectralField> factors(std::size_t(p), u);
  factors.push_back(deriv_x(u));
  SpectralField out = dealias_product(factors, p + 1);
  out *= -1.0;
  out.time = u.time;
  return out;
}

double stability_bound(const Grid2D& grid, int p, double sup_norm) {
  const double scale = double(p + 1) * std::pow(sup_norm, p) * grid.xi_max();
  return scale > 0.0 ? 1.0 / scale : HUGE_VAL;
}

SpectralField step(const SpectralField& u, double dt, const EquationParams& params, Nonlinearity form) {
  params.validate();
  if (!std::isfinite(dt)) throw InvalidArgument("step size must be finite");
  require_xs_data(u, params);
  if (dt == 0.0) return u;
  return rk4(u, dt, LinearFlow(u.grid, 0.5 * dt, params), params, form);
}

SnapshotDiagnostics snapshot_diagnostics(const SpectralField& u, const EquationParams& params) {
  SnapshotDiagnostics d;
  d.time = u.time;
  d.l2 = l2_norm(u);
  d.hs = l2_norm(lambda_s(u, params.s));
  const double s0 = physical_sup(u);
  const double sx = physical_sup(deriv_x(u));
  const double sy = physical_sup(deriv_y(u));
  d.w1inf = s0 + sx + sy;
  d.gronwall_integrand = sx * std::pow(s0, params.p - 1);
  d.x_mean = x_mean_norm(u);
  return d;
}

Trajectory evolve(const SpectralField& phi, const EquationParams& params, const SolveSchedule& schedule,
                  Nonlinearity form) {
  params.validate();
  schedule.validate();
  if (!phi.real) throw InvalidArgument("evolve needs real initial data");

  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };

  Trajectory traj;
  traj.params = params;
  traj.schedule = schedule;
  traj.form = form;

  SpectralField u = phi;
  u.time = 0.0;
  if (params.gamma != 0.0) {
    const double removed = x_mean_norm(u);
    if (removed > 0.0) {
      std::ostringstream os;
      os << "gamma = " << params.gamma << ": initial data projected onto zero x-mean (removed "
         << removed / l2_norm(u) << " of the L2 norm)";
      warn(os.str());
      u = project_zero_x_mean(std::move(u));
    }
  }

  auto record = [&](const SpectralField& v) {
    traj.snapshots.push_back(v);
    auto d = snapshot_diagnostics(v, params);
    d.wall_time = elapsed();
    traj.diagnostics.push_back(d);
  };
  record(u);

  const bool nonlinear = form != Nonlinearity::none;
  double sup = physical_sup(u);
  if (!(sup <= kBlowUpThreshold)) {
    traj.blew_up = true;
    traj.blow_up_time = 0.0;
    traj.blow_up_message = "blow-up detected at t = 0 (initial data)";
    return traj;
  }
  if (nonlinear) {
    const double bound = schedule.cfl_guard * stability_bound(u.grid, params.p, sup);
    if (schedule.dt > bound) {
      std::ostringstream os;
      os << "schedule violation: dt = " << schedule.dt << " exceeds cfl_guard * stability bound = " << bound;
      throw InvalidArgument(os.str());
    }
  }

  const auto steps = std::size_t(std::max(1.0, std::ceil(schedule.t_end / schedule.dt - 1e-9)));
  const LinearFlow full_half(u.grid, 0.5 * schedule.dt, params);
  for (std::size_t k = 1; k <= steps; ++k) {
    const double t1 = k == steps ? schedule.t_end : double(k) * schedule.dt;
    const double h = t1 - u.time;
    try {
      std::size_t sub = 1;
      if (nonlinear && k > 1) {
        sup = physical_sup(u);
        if (!(sup <= kBlowUpThreshold)) throw_blow_up(u.time, sup);
        const double bound = schedule.cfl_guard * stability_bound(u.grid, params.p, sup);
        if (h > bound) sub = std::size_t(std::ceil(h / bound));
      }
      const double hs = h / double(sub);
      const bool regular = sub == 1 && std::abs(hs - schedule.dt) <= 1e-14 * schedule.dt;
      std::optional<LinearFlow> local;
      if (!regular) local.emplace(u.grid, 0.5 * hs, params);
      for (std::size_t j = 0; j < sub; ++j) u = rk4(u, hs, local ? *local : full_half, params, form);
    } catch (const BlowUp& e) {
      traj.blew_up = true;
      traj.blow_up_time = e.time();
      traj.blow_up_message = e.what();
      return traj;
    }
    u.time = t1;
    if (k % std::size_t(schedule.snapshot_stride) == 0 || k == steps) record(u);
  }
  return traj;
}

double duhamel_residual(const Trajectory& traj, const EquationParams& params) {
  const auto& snaps = traj.snapshots;
  const std::size_t n = snaps.size();
  if (n < 5) {
    std::ostringstream os;
    os << "duhamel_residual needs at least 5 snapshots (got " << n << ")";
    throw InvalidArgument(os.str());
  }
  const double t_final = snaps.back().time;
  auto integrand = [&](std::size_t j) {
    SpectralField f = rhs(snaps[j], params.p, traj.form, snaps[j].time);
    LinearFlow(f.grid, t_final - snaps[j].time, params).apply(f);
    return f;
  };

  SpectralField rhs_total = LinearFlow(snaps[0].grid, t_final - snaps[0].time, params)(snaps[0]);
  if (traj.form != Nonlinearity::none) {
    std::vector<SpectralField> f;
    f.reserve(n);
    for (std::size_t j = 0; j < n; ++j) f.push_back(integrand(j));
    const std::size_t intervals = n - 1;
    // Simpson on pairs; with an odd count the last three intervals take a
    // cubic through their four samples (the 3/8 rule on uniform spacing)
    const std::size_t paired = intervals % 2 == 0 ? intervals : intervals - 3;
    for (std::size_t j = 0; j + 2 <= paired; j += 2) {
      const double h0 = snaps[j + 1].time - snaps[j].time;
      const double h1 = snaps[j + 2].time - snaps[j + 1].time;
      const double w = (h0 + h1) / 6.0;
      rhs_total = axpy(std::move(rhs_total), w * (2.0 - h1 / h0), f[j]);
      rhs_total = axpy(std::move(rhs_total), w * (h0 + h1) * (h0 + h1) / (h0 * h1), f[j + 1]);
      rhs_total = axpy(std::move(rhs_total), w * (2.0 - h0 / h1), f[j + 2]);
    }
    if (paired != intervals) {
      const std::size_t first = n - 4;
      double t[4], w[4] = {0.0, 0.0, 0.0, 0.0};
      for (int i = 0; i < 4; ++i) t[i] = snaps[first + std::size_t(i)].time;
      // 2-point Gauss per interval is exact for the cubic
      for (int seg = 0; seg < 3; ++seg) {
        const double half = 0.5 * (t[seg + 1] - t[seg]), mid = 0.5 * (t[seg + 1] + t[seg]);
        for (double z : {-1.0 / std::sqrt(3.0), 1.0 / std::sqrt(3.0)}) {
          const double tau = mid + half * z;
          for (int i = 0; i < 4; ++i) {
            double l = 1.0;
            for (int m = 0; m < 4; ++m)
              if (m != i) l *= (tau - t[m]) / (t[i] - t[m]);
            w[i] += half * l;
          }
        }
      }
      for (int i = 0; i < 4; ++i) rhs_total = axpy(std::move(rhs_total), w[i], f[first + std::size_t(i)]);
    }
  }
  SpectralField last = snaps.back();
  rhs_total.time = last.time;
  const double scale = l2_norm(last);
  last -= rhs_total;
  return scale > 0.0 ? l2_norm(last) / scale : l2_norm(last);
}

}  // namespace bo2d
