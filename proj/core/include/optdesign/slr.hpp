#ifndef OPTDESIGN_SLR_HPP
#define OPTDESIGN_SLR_HPP

// Closed-form D-, R- and r^2-optimal designs for simple linear regression on
// [a, b], with their cross-efficiencies and estimator correlations.
//
// Two-point designs here are written {a: 1 - p, b: p}; p is always the mass
// at the upper endpoint b.

#include <optional>
#include <span>
#include <vector>

#include "optdesign/design.hpp"

namespace optdesign {

class SlrInterval {
 public:
  SlrInterval(double a, double b);

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }

  /// sqrt(a^4 + 14 a^2 b^2 + b^4)
  double big_a() const noexcept { return big_a_; }

  /// A - b^2, evaluated without cancellation.
  double a_minus_b2() const noexcept;

  /// Both endpoints away from zero: |a|, |b| > 1e-12 (b - a). The general
  /// closed forms apply only then.
  bool general() const noexcept;
  bool a_is_zero() const noexcept;
  bool b_is_zero() const noexcept;

  DesignSpace space() const { return DesignSpace(a_, b_); }

 private:
  double a_;
  double b_;
  double big_a_;
};

/// {a: 1/2, b: 1/2}
Design d_optimal_slr(const SlrInterval& iv);

/// Mass of the R-optimal design at b: 4a^2/(5a^2 + A - b^2), 1/3 if a = 0, 2/3 if b = 0.
double p_r(const SlrInterval& iv);

/// {a: 1 - p_R, b: p_R}
Design r_optimal_slr(const SlrInterval& iv);

struct R2Optimal {
  Design design;
  double p;     // mass at b
  bool unique;  // false for a < 0 < b, where every mean-zero design is optimal
};

/// Same-sign interval: {a: |b|/(|a|+|b|), b: |a|/(|a|+|b|)}.
/// Mixed sign: the mean-zero endpoint design {a: b/(b-a), b: -a/(b-a)}.
/// Throws InvalidArgument when a or b is zero (the optimum collapses to a
/// one-point design at zero where the slope is not estimable).
R2Optimal r2_optimal_slr(const SlrInterval& iv);

double eff_d_of_r(const SlrInterval& iv);
/// 0 when a or b is zero.
double eff_d_of_r2(const SlrInterval& iv);
double eff_r_of_d(const SlrInterval& iv);
/// 0 when a or b is zero.
double eff_r_of_r2(const SlrInterval& iv);

double corr_d(const SlrInterval& iv);

struct LimitedValue {
  double value;
  bool is_limit;  // value is the a -> 0 (or b -> 0) limit of the closed form
};

LimitedValue corr_r(const SlrInterval& iv);

/// 0 for a < 0 < b, -2 sqrt(ab)/(a+b) for same-sign intervals. Throws
/// InvalidArgument when a or b is zero.
double corr_r2(const SlrInterval& iv);

struct SlrTableRow {
  double a = 0.0;
  double p_r = 0.0;
  std::optional<double> p_r2;
  double eff_d_r = 0.0;
  double eff_d_r2 = 0.0;
  double eff_r_d = 0.0;
  double eff_r_r2 = 0.0;
  double corr_d = 0.0;
  double corr_r = 0.0;
  std::optional<double> corr_r2;
};

/// One row per a in a_values over [a, b]. Throws InvalidArgument unless every a < b.
std::vector<SlrTableRow> table_slr(std::span<const double> a_values, double b);

}  // namespace optdesign

#endif  // OPTDESIGN_SLR_HPP
