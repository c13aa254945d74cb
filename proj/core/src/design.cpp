#include "optdesign/design.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "optdesign/errors.hpp"

namespace optdesign {

DesignSpace::DesignSpace(double lo, double hi) : lo_(lo), hi_(hi) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    std::ostringstream msg;
    msg << "design space needs finite lo < hi, got [" << lo << ", " << hi << "]";
    throw InvalidArgument(msg.str());
  }
}

bool DesignSpace::contains(double x) const noexcept {
  return x >= lo_ && x <= hi_;
}

double DesignSpace::merge_tolerance() const noexcept {
  return 1e-9 * std::max(1.0, width());
}

Design make_design(std::span<const SupportPoint> pairs, const DesignSpace& space) {
  if (pairs.empty()) {
    throw InvalidArgument("design needs at least one support point");
  }
  double total = 0.0;
  for (const auto& p : pairs) {
    if (!std::isfinite(p.x) || !std::isfinite(p.w) || p.w < 0.0) {
      throw InvalidArgument("design weights must be finite and nonnegative");
    }
    if (!space.contains(p.x)) {
      std::ostringstream msg;
      msg << "support point " << p.x << " outside design space [" << space.lo() << ", "
          << space.hi() << "]";
      throw InvalidArgument(msg.str());
    }
    total += p.w;
  }
  if (!(total > 0.0)) {
    throw InvalidArgument("design weights are all zero");
  }

  std::vector<SupportPoint> sorted;
  sorted.reserve(pairs.size());
  for (const auto& p : pairs) {
    if (p.w > 0.0) sorted.push_back({p.x, p.w / total});
  }
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const SupportPoint& a, const SupportPoint& b) { return a.x < b.x; });

  // A cluster keeps the x of its first (lowest) member.
  const double tol = space.merge_tolerance();
  std::vector<SupportPoint> merged;
  merged.reserve(sorted.size());
  for (const auto& p : sorted) {
    if (!merged.empty() && p.x - merged.back().x <= tol) {
      merged.back().w += p.w;
    } else {
      merged.push_back(p);
    }
  }

  // Renormalize so the stored weights sum to 1 to rounding.
  double sum = 0.0;
  for (const auto& p : merged) sum += p.w;
  for (auto& p : merged) p.w /= sum;

  return Design(std::move(merged), space);
}

Design make_design(std::initializer_list<SupportPoint> pairs, const DesignSpace& space) {
  return make_design(std::span<const SupportPoint>(pairs.begin(), pairs.size()), space);
}

Design one_point_design(double x, const DesignSpace& space) {
  return make_design({SupportPoint{x, 1.0}}, space);
}

Design mix(const Design& first, const Design& second, double alpha) {
  if (!(first.space() == second.space())) {
    throw InvalidArgument("mix: designs live on different design spaces");
  }
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw InvalidArgument("mix: alpha must lie in [0, 1]");
  }
  std::vector<SupportPoint> pts;
  pts.reserve(first.size() + second.size());
  for (const auto& p : first.points()) pts.push_back({p.x, (1.0 - alpha) * p.w});
  for (const auto& p : second.points()) pts.push_back({p.x, alpha * p.w});
  return make_design(pts, first.space());
}

bool InfoMatrix::singular() const noexcept {
  const double d = det();
  if (!std::isfinite(d)) return true;
  return d <= 1e-12 * std::max(1.0, m11 * m22);
}

InfoMatrix InfoMatrix::outer(const Vec2& f) noexcept {
  return {f[0] * f[0], f[0] * f[1], f[1] * f[1]};
}

InfoMatrix& InfoMatrix::operator+=(const InfoMatrix& o) noexcept {
  m11 += o.m11;
  m12 += o.m12;
  m22 += o.m22;
  return *this;
}

double CovQuantities::quad(const Vec2& u, const Vec2& w) const noexcept {
  return u[0] * (v1 * w[0] + cov12 * w[1]) + u[1] * (cov12 * w[0] + v2 * w[1]);
}

Vec2 CovQuantities::apply(const Vec2& u) const noexcept {
  return {v1 * u[0] + cov12 * u[1], cov12 * u[0] + v2 * u[1]};
}

CovQuantities cov_quantities(const InfoMatrix& m) noexcept {
  CovQuantities q;
  q.det_m = m.det();
  if (m.singular()) {
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    q.v1 = q.v2 = q.cov12 = nan;
    q.singular = true;
    return q;
  }
  q.v1 = m.m22 / q.det_m;
  q.v2 = m.m11 / q.det_m;
  q.cov12 = -m.m12 / q.det_m;
  return q;
}

Model::Model(std::string name, DesignSpace space, Regressor regressor,
             std::vector<double> nominal_params, std::array<std::string, kParams> param_names,
             double unit)
    : name_(std::move(name)),
      space_(space),
      regressor_(std::move(regressor)),
      nominal_(std::move(nominal_params)),
      param_names_(std::move(param_names)),
      unit_(unit) {
  if (!regressor_) throw InvalidArgument("model needs a regressor");
  if (!(unit_ > 0.0) || !std::isfinite(unit_)) throw InvalidArgument("model unit must be positive");
}

Vec2 Model::regressor(double x) const {
  const Vec2 f = regressor_(x);
  if (!std::isfinite(f[0]) || !std::isfinite(f[1])) {
    std::ostringstream msg;
    msg << name_ << ": regressor is not finite at x = " << x;
    throw InvalidArgument(msg.str());
  }
  return f;
}

InfoMatrix fim(const Model& model, const Design& design) {
  InfoMatrix m;
  for (const auto& p : design.points()) {
    m += p.w * InfoMatrix::outer(model.regressor(p.x));
  }
  return m;
}

Model slr_model(const DesignSpace& space) {
  return Model("slr", space, [](double x) { return Vec2{1.0, x}; }, {}, {"intercept", "slope"});
}

}  // namespace optdesign
