#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bo2d/spectral_field.hpp"

namespace bo2d {

/// Real field whose Fourier coefficient at (xi, eta) has physical magnitude
/// (1 + xi^2 + eta^2)^{-decay_rate/2} and a phase hashed from (seed, kx, ky).
/// The same seed therefore gives the same function, truncated differently,
/// on grids of different resolution over one domain. Nyquist lines are zero.
/// Throws InvalidArgument unless decay_rate > 1.
SpectralField random_smooth_field(std::uint64_t seed, const Grid2D& grid, double decay_rate);

/// 1D analogue on n points over [-half_length, half_length).
std::vector<double> random_smooth_line(std::uint64_t seed, std::size_t n, double half_length, double decay_rate);

struct RatioSample {
  std::uint64_t seed = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  /// lhs / rhs, and 0 when both vanish.
  double ratio = 0.0;
};

RatioSample make_sample(double lhs, double rhs, std::uint64_t seed = 0);

/// ||Lambda^{-s~} [Lambda^{s~+t~+1}, M_f] Lambda^{-t~} g||_{L2} against
/// ||grad f||_{H^{s-1}} ||g||_{L2}. Requires |s~|, |t~| <= s - 1.
RatioSample kato_commutator_ratio(const SpectralField& f, const SpectralField& g, double s_tilde,
                                  double t_tilde, double s);

/// |[Lambda^s, M_f] g|_p against |grad f|_inf |Lambda^{s-1} g|_p + |Lambda^s f|_p |g|_inf.
RatioSample kato_ponce_ratio(const SpectralField& f, const SpectralField& g, double s, double p = 2.0);

/// |Lambda^s (f g)|_p against |f|_inf |Lambda^s g|_p + |Lambda^s f|_p |g|_inf.
RatioSample leibniz_ratio(const SpectralField& f, const SpectralField& g, double s, double p = 2.0);

/// ||[H, A] f'||_{L2} against |A'|_inf ||f||_{L2} on a periodic line of
/// half-length `half_length`; a and f are samples of equal even length.
RatioSample calderon_ratio(std::span<const double> a, std::span<const double> f, double half_length);

struct ProductVariant {
  /// Use the right-hand side exactly as printed, ||g||_{[s]} ||g||_A, instead
  /// of the symmetric ||g||_{[s]} ||h||_A.
  bool literal = false;
  /// ||.||_{[s]} from |xi|^s (zero mode removed); otherwise (1 + |xi|^2)^{s/2}.
  bool homogeneous = true;
};

/// ||g h||_{[s]} against ||g||_A ||h||_{[s]} + ||g||_{[s]} ||h||_A (or ||g||_A
/// in the literal reading). ||.||_A is the l1 norm of the Fourier amplitudes.
RatioSample product_ratio(const SpectralField& g, const SpectralField& h, double s,
                          ProductVariant variant = {});

/// ||g d_x h||_{H^s} against ||g||_{H^s} ||h||_{H^s} + ||g||_{H^{s0}} ||h||_{H^{s+1}}.
RatioSample product_dx_ratio(const SpectralField& g, const SpectralField& h, double s, double s0);

/// l1 norm of the Fourier amplitudes (an upper bound for the grid max).
double wiener_norm(const SpectralField& u);

enum class InequalityKind { kato, kato_ponce, leibniz, calderon, product_A, product_dx };

std::string to_string(InequalityKind kind);
/// Throws InvalidArgument for an unknown name.
InequalityKind inequality_kind_from_string(const std::string& name);

struct RatioStudy {
  InequalityKind kind = InequalityKind::kato;
  double s = 3.0;
  double s_tilde = 0.0;
  double t_tilde = 0.0;
  double p = 2.0;
  double s0 = 1.5;
  ProductVariant variant;
  /// Spectral decay of the random inputs; 0 picks s + 3.
  double decay_rate = 0.0;
  /// Points per axis of the coarse grid (the fine grid doubles it). 0 picks
  /// 128 in 2D and 4096 on the line.
  std::size_t n = 0;
  /// Half-length of the periodic domain on every axis.
  double half_length = 3.141592653589793;
};

struct RatioReport {
  RatioStudy study;
  std::vector<RatioSample> samples;
  std::vector<RatioSample> refined;
  double max_ratio = 0.0;
  double refined_max_ratio = 0.0;
  /// refined_max_ratio / max_ratio (1 when both vanish).
  double refinement_ratio = 1.0;
};

/// One sample per seed at resolution n and 2n, same functions on both.
/// Seeds run concurrently; the report does not depend on scheduling.
RatioReport run_ratio_study(const RatioStudy& study, const std::vector<std::uint64_t>& seeds);

}  // namespace bo2d
