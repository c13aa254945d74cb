#ifndef OPTDESIGN_DESIGN_HPP
#define OPTDESIGN_DESIGN_HPP

// Core data model: approximate designs as discrete probability measures on an
// interval, two-parameter regression models, and their information matrices.

#include <array>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace optdesign {

/// Number of model parameters. Every model in this library has two.
inline constexpr std::size_t kParams = 2;

using Vec2 = std::array<double, kParams>;

/// Closed interval [lo, hi] with lo < hi.
class DesignSpace {
 public:
  DesignSpace(double lo, double hi);

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  double width() const noexcept { return hi_ - lo_; }
  bool contains(double x) const noexcept;

  /// Two support points closer than this are the same point.
  double merge_tolerance() const noexcept;

  friend bool operator==(const DesignSpace&, const DesignSpace&) = default;

 private:
  double lo_;
  double hi_;
};

struct SupportPoint {
  double x;
  double w;

  friend bool operator==(const SupportPoint&, const SupportPoint&) = default;
};

/// Approximate design: support points sorted ascending, weights summing to 1,
/// no two points within the space's merge tolerance. Construct through
/// make_design().
class Design {
 public:
  const std::vector<SupportPoint>& points() const noexcept { return points_; }
  const DesignSpace& space() const noexcept { return space_; }
  std::size_t size() const noexcept { return points_.size(); }

  const SupportPoint& lowest() const noexcept { return points_.front(); }
  const SupportPoint& highest() const noexcept { return points_.back(); }

  friend bool operator==(const Design&, const Design&) = default;

 private:
  friend Design make_design(std::span<const SupportPoint>, const DesignSpace&);
  Design(std::vector<SupportPoint> points, DesignSpace space)
      : points_(std::move(points)), space_(space) {}

  std::vector<SupportPoint> points_;
  DesignSpace space_;
};

/// Normalizes weights to sum 1, sorts by x, merges near-duplicates (adding
/// their weights) and drops exactly-zero weights.
///
/// Throws InvalidArgument on empty input, negative or non-finite weights,
/// all-zero weights, or a point outside `space`.
Design make_design(std::span<const SupportPoint> pairs, const DesignSpace& space);
Design make_design(std::initializer_list<SupportPoint> pairs, const DesignSpace& space);

/// All mass on x.
Design one_point_design(double x, const DesignSpace& space);

/// (1 - alpha) * first + alpha * second as measures. Both must share a space.
Design mix(const Design& first, const Design& second, double alpha);

/// Symmetric 2x2 information matrix [[m11, m12], [m12, m22]].
struct InfoMatrix {
  double m11 = 0.0;
  double m12 = 0.0;
  double m22 = 0.0;

  double det() const noexcept { return m11 * m22 - m12 * m12; }
  double trace() const noexcept { return m11 + m22; }

  /// det <= 1e-12 * max(1, m11 * m22).
  bool singular() const noexcept;

  /// f f^T
  static InfoMatrix outer(const Vec2& f) noexcept;

  InfoMatrix& operator+=(const InfoMatrix& o) noexcept;
  friend InfoMatrix operator+(InfoMatrix a, const InfoMatrix& b) noexcept { return a += b; }
  friend InfoMatrix operator*(double s, const InfoMatrix& m) noexcept {
    return {s * m.m11, s * m.m12, s * m.m22};
  }
  friend bool operator==(const InfoMatrix&, const InfoMatrix&) = default;
};

/// Entries of M^-1 (the covariance up to sigma^2/n) plus det(M).
struct CovQuantities {
  double v1 = 0.0;     // {M^-1}_11
  double v2 = 0.0;     // {M^-1}_22
  double cov12 = 0.0;  // {M^-1}_12
  double det_m = 0.0;
  bool singular = false;  // v1, v2, cov12 are NaN when set

  /// u^T M^-1 w
  double quad(const Vec2& u, const Vec2& w) const noexcept;
  /// M^-1 u
  Vec2 apply(const Vec2& u) const noexcept;
};

CovQuantities cov_quantities(const InfoMatrix& m) noexcept;

using Regressor = std::function<Vec2(double)>;

/// Two-parameter regression model. For nonlinear models the regressor is the
/// gradient of the mean response at the nominal parameters.
class Model {
 public:
  Model(std::string name, DesignSpace space, Regressor regressor,
        std::vector<double> nominal_params = {},
        std::array<std::string, kParams> param_names = {"theta1", "theta2"},
        double unit = 1.0);

  const std::string& name() const noexcept { return name_; }
  const DesignSpace& space() const noexcept { return space_; }
  const std::vector<double>& nominal_params() const noexcept { return nominal_; }
  const std::array<std::string, kParams>& param_names() const noexcept { return param_names_; }

  /// Natural scale of x used when reporting support points (K for
  /// Michaelis-Menten, 1 otherwise).
  double unit() const noexcept { return unit_; }

  /// f(x); throws InvalidArgument if the regressor is not finite at x.
  Vec2 regressor(double x) const;

 private:
  std::string name_;
  DesignSpace space_;
  Regressor regressor_;
  std::vector<double> nominal_;
  std::array<std::string, kParams> param_names_;
  double unit_;
};

/// M(xi) = sum_i w_i f(x_i) f(x_i)^T
InfoMatrix fim(const Model& model, const Design& design);

/// Simple linear regression y = theta1 + theta2 x, f(x) = (1, x).
Model slr_model(const DesignSpace& space);

}  // namespace optdesign

#endif  // OPTDESIGN_DESIGN_HPP
