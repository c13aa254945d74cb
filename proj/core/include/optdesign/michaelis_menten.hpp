#ifndef OPTDESIGN_MICHAELIS_MENTEN_HPP
#define OPTDESIGN_MICHAELIS_MENTEN_HPP

#include "optdesign/design.hpp"

namespace optdesign {

/// Nominal parameters and design-space configuration for E[v] = V x / (K + x).
///
/// The design space is [eps K, b K]; with eps_absolute it is [eps, b K].
struct MMParams {
  double V = 43.73;
  double K = 227.27;
  double b = 5.0;
  double eps = 0.0;
  bool eps_absolute = false;

  /// Throws InvalidArgument unless V, K, b > 0, eps >= 0 and the space is non-empty.
  void validate() const;

  double lower() const noexcept { return eps_absolute ? eps : eps * K; }
  double upper() const noexcept { return b * K; }
  DesignSpace space() const;
};

/// Gradient of V x / (K + x) with respect to (V, K):
/// (x / (K + x), -V x / (K + x)^2).
Vec2 mm_regressor(const MMParams& params, double x);

/// Model over params.space() using mm_regressor at the nominal (V, K), with
/// reporting unit K.
Model mm_model(const MMParams& params);

/// Lower support point (b / (2 + b)) K of the unconstrained D-optimal design.
double mm_d_lower_point(const MMParams& params) noexcept;

struct MmDOptimal {
  Design design;
  bool optimizer_fallback = false;  // lower D-point excluded by eps; searched numerically
};

/// {(b/(2+b)) K: 1/2, b K: 1/2} when that point lies in the space, otherwise
/// the numerically optimized D-optimal design (flagged).
MmDOptimal mm_d_optimal(const MMParams& params);

}  // namespace optdesign

#endif  // OPTDESIGN_MICHAELIS_MENTEN_HPP
