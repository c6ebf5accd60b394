#pragma once

namespace bo2d {

/// Instance of
///   (u_t + u^p u_x + H u_xx + alpha H u_yy)_x - gamma u_yy = 0
/// together with the working regularity index s used by diagnostics.
struct EquationParams {
  int p = 1;
  double alpha = 1.0;
  double gamma = 0.0;
  double s = 3.0;

  /// Throws InvalidArgument unless p >= 1 and s > 2.
  void validate() const;

  bool operator==(const EquationParams&) const = default;
};

}  // namespace bo2d
