#ifndef OPTDESIGN_CRITERIA_HPP
#define OPTDESIGN_CRITERIA_HPP

// Optimality criteria on 2x2 information matrices, efficiencies, the signed
// estimator correlation, and directional derivatives for equivalence checks.
//
// All criteria are in minimization form. Criteria that need M^-1 return
// +infinity for a singular M, except phi_r2() and correlation(), which throw
// because the correlation of an inestimable pair has no value.

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "optdesign/design.hpp"

namespace optdesign {

enum class CriterionKind { D, R, R2, C, SA, EM, CPB, Compound };

std::string_view to_string(CriterionKind kind) noexcept;

/// Accepts the canonical names (D, R, R2, C, SA, EM, CPB, COMPOUND) case
/// insensitively, plus "r^2" and "C_PB".
std::optional<CriterionKind> parse_criterion_kind(std::string_view text);

/// Which criterion to evaluate, with its parameters.
class CriterionSpec {
 public:
  static CriterionSpec d() { return CriterionSpec(CriterionKind::D); }
  static CriterionSpec r() { return CriterionSpec(CriterionKind::R); }
  static CriterionSpec r2() { return CriterionSpec(CriterionKind::R2); }
  static CriterionSpec em() { return CriterionSpec(CriterionKind::EM); }
  static CriterionSpec pritchard() { return CriterionSpec(CriterionKind::CPB); }
  /// c must be nonzero.
  static CriterionSpec c(const Vec2& c);
  /// ref1, ref2: optimal c1- and c2-criterion values, both > 0.
  static CriterionSpec sa(double ref1, double ref2);
  /// lambda in [0, 1]; d_star, r_star: optimal D and R values, both > 0.
  static CriterionSpec compound(double lambda, double d_star, double r_star);

  CriterionKind kind() const noexcept { return kind_; }
  const Vec2& c_vector() const noexcept { return c_; }
  double ref1() const noexcept { return ref1_; }
  double ref2() const noexcept { return ref2_; }
  double lambda() const noexcept { return lambda_; }
  double d_star() const noexcept { return d_star_; }
  double r_star() const noexcept { return r_star_; }

  /// Convex in M, so the equivalence theorem certifies optima.
  bool convex() const noexcept;

  std::string_view name() const noexcept { return to_string(kind_); }

  friend bool operator==(const CriterionSpec&, const CriterionSpec&) = default;

 private:
  explicit CriterionSpec(CriterionKind kind) : kind_(kind) {}

  CriterionKind kind_;
  Vec2 c_{0.0, 0.0};
  double ref1_ = 1.0;
  double ref2_ = 1.0;
  double lambda_ = 0.0;
  double d_star_ = 1.0;
  double r_star_ = 1.0;
};

/// |M^-1|^(1/2)
double phi_d(const InfoMatrix& m) noexcept;

/// ({M^-1}_11 {M^-1}_22)^(1/2)
double phi_r(const InfoMatrix& m) noexcept;

/// Squared correlation {M^-1}_12^2 / ({M^-1}_11 {M^-1}_22). Throws SingularDesign.
double phi_r2(const InfoMatrix& m);

/// Signed correlation of the two estimators. Throws SingularDesign.
double correlation(const InfoMatrix& m);

/// c^T M^- c. For singular M the pseudo-inverse is used when c is estimable
/// (lies in the column space of M); otherwise +infinity.
double phi_c(const InfoMatrix& m, const Vec2& c) noexcept;

/// phi_c(M, e1)/ref1 + phi_c(M, e2)/ref2. Throws InvalidArgument unless both refs > 0.
double phi_sa(const InfoMatrix& m, double ref1, double ref2);

/// Condition number lambda_max / lambda_min.
double phi_em(const InfoMatrix& m) noexcept;

/// Pritchard-Bacon correlation size: sqrt(sum_{i != j} r_ij^2 / (p (p - 1))) for a
/// p x p correlation matrix given row-major. Throws InvalidArgument when the
/// matrix is not a symmetric correlation matrix with p >= 2.
double phi_c_pritchard(std::span<const double> corr, std::size_t p);

/// (1 - lambda)/Eff_D + lambda/Eff_R.
double phi_compound(const InfoMatrix& m, double lambda, double phi_d_star, double phi_r_star);

/// Dispatches on the spec. Singular M gives +infinity for every kind except C,
/// which follows phi_c().
double evaluate(const CriterionSpec& spec, const InfoMatrix& m) noexcept;

inline double evaluate(const CriterionSpec& spec, const Model& model, const Design& design) {
  return evaluate(spec, fim(model, design));
}

enum class EfficiencyKind { D, R };

/// Phi[M(optimal)] / Phi[M(design)]. Throws SingularDesign if either design is singular.
double efficiency(EfficiencyKind kind, const Design& design, const Design& optimal,
                  const Model& model);

/// Directional derivative of Phi_D at xi toward the one-point design at x:
/// (Phi_D / 2) (2 - f^T M^-1 f). Nonnegative everywhere iff xi is D-optimal.
double dd_d(const Model& model, const Design& design, double x);

/// Directional derivative of Phi_R at xi toward the one-point design at x.
double dd_r(const Model& model, const Design& design, double x);

/// Directional derivative of any convex criterion (D, R, C, SA, COMPOUND).
/// Throws InvalidArgument for non-convex kinds and SingularDesign for singular xi.
double directional_derivative(const CriterionSpec& spec, const Model& model,
                              const Design& design, double x);

struct DerivativeReport {
  std::vector<double> x_grid;
  std::vector<double> dd_values;
  double min_dd = 0.0;
  double argmin_x = 0.0;
};

/// Evaluates the directional derivative on `grid_points` equispaced points of
/// the design space plus every support point.
DerivativeReport derivative_report(const CriterionSpec& spec, const Model& model,
                                   const Design& design, std::size_t grid_points = 1000);

/// min_dd >= -1e-6 * max(1, criterion_value)
bool certifies(const DerivativeReport& report, double criterion_value) noexcept;

struct EfficiencyEntry {
  std::string label;
  double phi_d = 0.0;
  double phi_r = 0.0;
  double eff_d = 0.0;
  double eff_r = 0.0;
  std::optional<double> correlation;  // empty for singular designs
};

struct EfficiencyReport {
  double phi_d_star = 0.0;
  double phi_r_star = 0.0;
  std::vector<EfficiencyEntry> entries;
};

/// Criterion values, D/R efficiencies and correlation of each labelled design
/// against the given D- and R-optimal designs.
EfficiencyReport efficiency_report(const Model& model,
                                   std::span<const std::pair<std::string, Design>> designs,
                                   const Design& d_optimal, const Design& r_optimal);

}  // namespace optdesign

#endif  // OPTDESIGN_CRITERIA_HPP
