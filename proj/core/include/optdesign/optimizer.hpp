#ifndef OPTDESIGN_OPTIMIZER_HPP
#define OPTDESIGN_OPTIMIZER_HPP

// Numerical design search for any criterion: grid enumeration of support
// pairs, coordinate-descent polish of support points with nested weight
// optimization, and an equivalence-theorem certificate for convex criteria.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "optdesign/criteria.hpp"
#include "optdesign/design.hpp"

namespace optdesign {

inline constexpr std::uint64_t kDefaultSeed = 42;

struct OptimizeRequest {
  OptimizeRequest(Model model_, CriterionSpec criterion_)
      : model(std::move(model_)), criterion(criterion_) {}

  Model model;
  CriterionSpec criterion;
  int n_support = 2;          // 2..4
  int grid_resolution = 200;  // >= 100
  double weight_tolerance = 1e-8;
  std::uint64_t seed = kDefaultSeed;

  /// Non-convex criteria only: report a best-found design whose lowest point
  /// carries weight >= 1 - 1e-3 as the one-point degenerate limit.
  bool compat_singular_limit = false;

  /// Throws InvalidArgument on out-of-range settings.
  void validate() const;
};

struct OptimizeResult {
  Design design;
  double criterion_value = 0.0;
  /// Present for convex criteria with a non-singular result.
  std::optional<DerivativeReport> derivative_report;
  /// Certified by the equivalence theorem. Always false for non-convex
  /// criteria, whose results are best-found.
  bool converged = false;
  /// Compatibility mode replaced the result by its degenerate one-point limit.
  bool collapsed = false;
  int iterations = 0;
};

/// Optimal weights on a fixed support for the criterion, summing to 1.
/// Two points: coarse scan plus golden-section on the mass at the second
/// point. Three or four: pairwise mass-exchange coordinate descent.
///
/// Throws InvalidArgument for an invalid support and OptimizationFailure when
/// every weighting gives an infinite criterion value.
std::vector<double> optimize_weights(const Model& model, std::span<const double> support,
                                     const CriterionSpec& criterion, double tolerance = 1e-8);

/// Throws OptimizationFailure when no design with a finite criterion value is found.
OptimizeResult optimize_design(const OptimizeRequest& request);

/// Design minimizing c^T M^- c. Throws OptimizationFailure if c is not
/// estimable on any candidate.
OptimizeResult c_optimal(const Model& model, const Vec2& c, int grid_resolution = 200,
                         std::uint64_t seed = kDefaultSeed);

}  // namespace optdesign

#endif  // OPTDESIGN_OPTIMIZER_HPP
