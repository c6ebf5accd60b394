#pragma once

#include <limits>
#include <optional>
#include <vector>

#include "bo2d/evolution.hpp"
#include "bo2d/params.hpp"
#include "bo2d/spectral_field.hpp"

namespace bo2d {

/// Inverse linear flow: the profile e^{tA} u = propagate(u, -t).
SpectralField pullback(const SpectralField& u, double t, const EquationParams& params);

struct ScatterRecord {
  std::vector<double> times;
  /// pullback(u(t_k), t_k) for every snapshot.
  std::vector<SpectralField> profiles;
  /// ||profile_{k+1} - profile_k||_{H^r}; one fewer than profiles.
  std::vector<double> cauchy_increments;
  /// ||u(t_k) - propagate(phi_plus, t_k)||_{H^r}.
  std::vector<double> distance_to_free;
  double r = 0.0;
};

struct ScatteringResult {
  SpectralField phi_plus;
  ScatterRecord record;
};

/// Increments at or below this fraction of ||phi_plus||_{H^r} count as zero.
inline constexpr double kScatterNoiseFloor = 1e-12;

/// Pulls back every snapshot with time <= t_max and takes the last profile
/// as phi_plus. r defaults to s - 1 and must lie in [s - 1, s).
///
/// Throws NoScattering unless the last increment is below the previous one
/// (or both are at the noise floor), and InvalidArgument for fewer than
/// three usable snapshots or r out of range.
ScatteringResult scattering_state(const Trajectory& traj, const EquationParams& params,
                                  std::optional<double> r = std::nullopt,
                                  double t_max = std::numeric_limits<double>::infinity());

/// The symmetry (t, x, y) -> (-t, -x, -y): the field is reflected and its
/// time tag negated. Applying it to data, evolving and scattering forward,
/// then applying it again to the state gives the negative-time state.
SpectralField time_reflect(const SpectralField& u);

}  // namespace bo2d
