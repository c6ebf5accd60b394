#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "bo2d/config.hpp"
#include "bo2d/spectral_field.hpp"

namespace bo2d {

/// Process exit codes, one per failure class.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitBlowUp = 3;
inline constexpr int kExitIo = 4;

/// Initial data described by config.init on config.grid.
SpectralField make_initial_data(const RunConfig& config);

/// Runs config.experiment, writing its artifacts and a manifest into
/// config.out. Library errors propagate as exceptions; a blow-up during
/// evolve or scatter is reported and mapped to kExitBlowUp after the
/// partial outputs are written.
int run_experiment(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Command-line entry point: subcommands evolve, kernel-check, decay,
/// commutators, jbound and scatter, each taking --config and --out.
/// Every error is caught and mapped to an exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bo2d
