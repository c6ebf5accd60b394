#include "bo2d/scattering.hpp"

#include <sstream>

#include "bo2d/diagnostics.hpp"
#include "bo2d/errors.hpp"
#include "bo2d/propagator.hpp"

namespace bo2d {

SpectralField pullback(const SpectralField& u, double t, const EquationParams& params) {
  return propagate(u, -t, params);
}

ScatteringResult scattering_state(const Trajectory& traj, const EquationParams& params, std::optional<double> r,
                                  double t_max) {
  const double order = r.value_or(params.s - 1.0);
  if (!(order >= params.s - 1.0 && order < params.s)) {
    std::ostringstream os;
    os << "scattering norm index r must lie in [s - 1, s) (got r = " << order << ", s = " << params.s << ")";
    throw InvalidArgument(os.str());
  }

  ScatterRecord rec;
  rec.r = order;
  for (const auto& snap : traj.snapshots) {
    if (snap.time > t_max) break;
    rec.times.push_back(snap.time);
    rec.profiles.push_back(pullback(snap, snap.time, params));
  }
  if (rec.profiles.size() < 3) {
    std::ostringstream os;
    os << "scattering needs at least 3 snapshots in the window (got " << rec.profiles.size() << ")";
    throw InvalidArgument(os.str());
  }
  for (std::size_t k = 0; k + 1 < rec.profiles.size(); ++k)
    rec.cauchy_increments.push_back(hs_norm(rec.profiles[k + 1] - rec.profiles[k], order));

  ScatteringResult out{rec.profiles.back(), {}};
  out.phi_plus.time = 0.0;
  for (std::size_t k = 0; k < rec.profiles.size(); ++k) {
    const auto& snap = traj.snapshots[k];
    rec.distance_to_free.push_back(hs_norm(snap - propagate(out.phi_plus, snap.time, params), order));
  }

  const double floor = kScatterNoiseFloor * hs_norm(out.phi_plus, order);
  const std::size_t n = rec.cauchy_increments.size();
  const double last = rec.cauchy_increments[n - 1], before = rec.cauchy_increments[n - 2];
  const bool settled = last <= floor || last < before;
  if (!settled) {
    std::ostringstream os;
    os.precision(6);
    os << "no scattering detected: the last Cauchy increment " << last << " does not drop below the previous "
       << before;
    throw NoScattering(os.str());
  }
  out.record = std::move(rec);
  return out;
}

SpectralField time_reflect(const SpectralField& u) {
  SpectralField v = reflect(u);
  v.time = -u.time;
  return v;
}

}  // namespace bo2d
