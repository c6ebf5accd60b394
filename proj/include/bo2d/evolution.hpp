#pragma once

#include <limits>
#include <string>
#include <vector>

#include "bo2d/params.hpp"
#include "bo2d/spectral_field.hpp"

namespace bo2d {

/// Fixed-step schedule. dt is the requested step; the last step is
/// shortened to land on t_end. A snapshot is kept every `snapshot_stride`
/// steps, plus the initial and final states.
struct SolveSchedule {
  double dt = 0.01;
  double t_end = 1.0;
  int snapshot_stride = 1;
  double cfl_guard = 0.5;

  /// Throws InvalidArgument on non-positive dt or t_end, stride < 1, or
  /// cfl_guard outside (0, 1].
  void validate() const;
  bool operator==(const SolveSchedule&) const = default;
};

enum class Nonlinearity {
  /// -d_x(u^{p+1}) / (p + 1); conserves the discrete L2 norm.
  conservative,
  /// -u^p u_x; agrees with the conservative form up to dealiasing error.
  convective,
  /// Linear flow only.
  none,
};

struct SnapshotDiagnostics {
  double time = 0.0;
  double l2 = 0.0;
  double hs = 0.0;
  /// |u|_inf + |u_x|_inf + |u_y|_inf on the grid.
  double w1inf = 0.0;
  /// |u_x|_inf |u|_inf^{p-1}.
  double gronwall_integrand = 0.0;
  double x_mean = 0.0;
  /// Seconds since the start of the solve.
  double wall_time = 0.0;
};

struct Trajectory {
  EquationParams params;
  SolveSchedule schedule;
  std::vector<SpectralField> snapshots;
  std::vector<SnapshotDiagnostics> diagnostics;
  Nonlinearity form = Nonlinearity::conservative;
  bool blew_up = false;
  double blow_up_time = std::numeric_limits<double>::quiet_NaN();
  std::string blow_up_message;
};


/// Threshold on |u|_inf beyond which a state counts as blown up.
inline constexpr double kBlowUpThreshold = 1e6;

/// -d_x(u^{p+1}) / (p + 1), dealiased for degree p + 1. The xi = 0 column
/// of the result is exactly zero. `max_abs`, when given, receives |u|_inf
/// measured on the padded grid.
SpectralField nonlinear_rhs(const SpectralField& u, int p, double* max_abs = nullptr);

/// -u^p u_x, dealiased for degree p + 1.
SpectralField nonlinear_rhs_convective(const SpectralField& u, int p);

/// 1 / ((p + 1) |u|_inf^p xi_max); infinite for sup_norm = 0.
double stability_bound(const Grid2D& grid, int p, double sup_norm);

/// One integrating-factor RK4 step: classical RK4 applied to
/// v = e^{+i omega t} u, so the linear flow is exact. Throws BlowUp when
/// the state or any stage is non-finite or exceeds kBlowUpThreshold.
SpectralField step(const SpectralField& u, double dt, const EquationParams& params,
                   Nonlinearity form = Nonlinearity::conservative);

/// Integrates from phi to schedule.t_end.
///
/// With gamma != 0 the data is projected onto zero x-mean first, with a
/// warning. Throws InvalidArgument when dt exceeds cfl_guard times the
/// stability bound of the initial data; later steps whose bound shrinks are
/// split into equal sub-steps. Blow-up ends the run early: the trajectory
/// keeps what was computed and carries the flag and time.
Trajectory evolve(const SpectralField& phi, const EquationParams& params,
                  const SolveSchedule& schedule, Nonlinearity form = Nonlinearity::conservative);

/// Relative L2 residual of the Duhamel identity at the last snapshot:
///
///   u(T) - e^{-TA} u(0) - integral_0^T e^{-(T - tau)A} N(u(tau)) dtau,
///
/// divided by |u(T)|, with the time integral taken by composite Simpson
/// over the snapshots (a cubic rule on the last three intervals when the
/// interval count is odd). N is the nonlinearity the trajectory was run with.
/// Throws InvalidArgument for fewer than 5 snapshots.
double duhamel_residual(const Trajectory& traj, const EquationParams& params);

/// Per-snapshot diagnostics of a state.
SnapshotDiagnostics snapshot_diagnostics(const SpectralField& u, const EquationParams& params);

}  // namespace bo2d
