#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "bo2d/evolution.hpp"
#include "bo2d/inequality.hpp"
#include "bo2d/params.hpp"

namespace bo2d {

enum class InitKind { gaussian, dx_gaussian, random_smooth, file };
enum class Experiment { evolve, kernel_check, decay, commutators, jbound, scatter };

std::string to_string(InitKind kind);
std::string to_string(Experiment kind);

struct GridSpec {
  std::size_t nx = 256;
  std::size_t ny = 256;
  double lx = 62.83185307179586;  // 20 pi
  double ly = 62.83185307179586;
  bool operator==(const GridSpec&) const = default;
};

/// Initial data. gaussian is amplitude e^{-r^2 / 2 width^2}, dx_gaussian its
/// x-derivative, random_smooth an amplitude-scaled random_smooth_field.
struct InitSpec {
  InitKind kind = InitKind::gaussian;
  double amplitude = 1.0;
  double width = 1.0;
  std::uint64_t seed = 0;
  double decay_rate = 4.0;
  std::string path;
  bool operator==(const InitSpec&) const = default;
};

struct RunConfig {
  GridSpec grid;
  EquationParams params;
  /// Empty dt means automatic: cfl_guard times the stability bound of the
  /// initial data, capped at t_end / 10.
  std::optional<double> dt;
  double t_end = 1.0;
  int snapshot_stride = 1;
  double cfl_guard = 0.5;
  InitSpec init;
  std::string out = "out";
  Experiment experiment = Experiment::evolve;

  /// Weight exponent for the weighted norm column.
  double theta = 1.0;
  /// kernel_check time.
  double kernel_t = 1.0;
  /// decay: exponent and the sampled time range.
  double decay_theta = 1.0;
  double decay_t_min = 5.0;
  double decay_t_max = 40.0;
  int decay_samples = 36;
  /// commutators.
  InequalityKind kind = InequalityKind::kato;
  int seeds = 50;
  /// jbound.
  int jbound_p = 3;
  double t_max = 1e4;
  /// scatter norm index; empty means s - 1.
  std::optional<double> r;

  bool operator==(const RunConfig&) const = default;
};

/// Parses key = value lines ('#' starts a comment). Every problem is
/// collected and reported together in one ConfigError, one per line, each
/// naming its key. Unknown and duplicate keys are errors.
RunConfig parse_config_text(const std::string& text);
/// Reads the file (IoError when unreadable) and parses it.
RunConfig parse_config(const std::string& path);

/// Throws ConfigError listing every violated constraint.
void validate(const RunConfig& config);

/// Canonical key = value text; parse_config_text(serialize(c)) == c.
std::string serialize(const RunConfig& config);

/// 64-bit FNV-1a of the canonical serialization.
std::uint64_t config_hash(const RunConfig& config);

/// Resolved step: the explicit dt, or the automatic choice for `sup_norm`.
double resolve_dt(const RunConfig& config, double sup_norm);

Grid2D make_grid(const GridSpec& spec);
SolveSchedule make_schedule(const RunConfig& config, double dt);

}  // namespace bo2d
