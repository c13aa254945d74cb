#include "optdesign/slr.hpp"

#include <cmath>
#include <sstream>

#include "optdesign/errors.hpp"

namespace optdesign {

namespace {

// Moments of the endpoint design {a: 1 - p, b: p}.
struct EndpointMoments {
  double mean;
  double mean_sq;
  double var;  // S_x^2 = det M
};

EndpointMoments endpoint_moments(const SlrInterval& iv, double p) {
  const double a = iv.a();
  const double b = iv.b();
  const double d = b - a;
  return {(1.0 - p) * a + p * b, (1.0 - p) * a * a + p * b * b, p * (1.0 - p) * d * d};
}

double endpoint_phi_r(const SlrInterval& iv, double p) {
  const EndpointMoments m = endpoint_moments(iv, p);
  return std::sqrt(m.mean_sq) / m.var;
}

double sgn(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

}  // namespace

SlrInterval::SlrInterval(double a, double b) : a_(a), b_(b) {
  if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
    std::ostringstream msg;
    msg << "SLR interval needs finite a < b, got [" << a << ", " << b << "]";
    throw InvalidArgument(msg.str());
  }
  const double a2 = a * a;
  const double b2 = b * b;
  big_a_ = std::sqrt(a2 * a2 + 14.0 * a2 * b2 + b2 * b2);
}

double SlrInterval::a_minus_b2() const noexcept {
  // (A^2 - b^4) / (A + b^2)
  const double a2 = a_ * a_;
  const double b2 = b_ * b_;
  return a2 * (a2 + 14.0 * b2) / (big_a_ + b2);
}

bool SlrInterval::general() const noexcept {
  const double tol = 1e-12 * (b_ - a_);
  return std::abs(a_) > tol && std::abs(b_) > tol;
}

bool SlrInterval::a_is_zero() const noexcept {
  return std::abs(a_) <= 1e-12 * (b_ - a_);
}

bool SlrInterval::b_is_zero() const noexcept {
  return std::abs(b_) <= 1e-12 * (b_ - a_);
}

Design d_optimal_slr(const SlrInterval& iv) {
  return make_design({{iv.a(), 0.5}, {iv.b(), 0.5}}, iv.space());
}

double p_r(const SlrInterval& iv) {
  if (iv.a_is_zero()) return 1.0 / 3.0;
  if (iv.b_is_zero()) return 2.0 / 3.0;
  const double a2 = iv.a() * iv.a();
  return 4.0 * a2 / (5.0 * a2 + iv.a_minus_b2());
}

Design r_optimal_slr(const SlrInterval& iv) {
  const double p = p_r(iv);
  return make_design({{iv.a(), 1.0 - p}, {iv.b(), p}}, iv.space());
}

R2Optimal r2_optimal_slr(const SlrInterval& iv) {
  if (!iv.general()) {
    throw InvalidArgument(
        "r^2-optimal SLR design is degenerate when an endpoint is zero (slope not estimable)");
  }
  const double a = iv.a();
  const double b = iv.b();
  if (a < 0.0 && b > 0.0) {
    const double p = -a / (b - a);
    return {make_design({{a, 1.0 - p}, {b, p}}, iv.space()), p, false};
  }
  const double p = std::abs(a) / (std::abs(a) + std::abs(b));
  return {make_design({{a, 1.0 - p}, {b, p}}, iv.space()), p, true};
}

double eff_d_of_r(const SlrInterval& iv) {
  if (!iv.general()) {
    const double p = p_r(iv);
    return 2.0 * std::sqrt(p * (1.0 - p));
  }
  const double a2 = iv.a() * iv.a();
  const double amb = iv.a_minus_b2();
  return 4.0 * std::abs(iv.a()) * std::sqrt(a2 + amb) / (5.0 * a2 + amb);
}

double eff_d_of_r2(const SlrInterval& iv) {
  if (!iv.general()) return 0.0;
  const double a = std::abs(iv.a());
  const double b = std::abs(iv.b());
  return 2.0 * std::sqrt(a * b) / (a + b);
}

double eff_r_of_d(const SlrInterval& iv) {
  if (!iv.general()) {
    return endpoint_phi_r(iv, p_r(iv)) / endpoint_phi_r(iv, 0.5);
  }
  const double a2 = iv.a() * iv.a();
  const double b2 = iv.b() * iv.b();
  const double big_a = iv.big_a();
  const double inner = 34.0 - a2 / b2 + (a2 + 13.0 * b2) * big_a / (b2 * (a2 + b2)) +
                       iv.a_minus_b2() / a2;
  return std::sqrt(inner) / 8.0;
}

double eff_r_of_r2(const SlrInterval& iv) {
  if (!iv.general()) return 0.0;
  const double a = iv.a();
  const double b = iv.b();
  const double a2 = a * a;
  const double b2 = b * b;
  const double big_a = iv.big_a();
  const double abs_a = std::abs(a);
  const double abs_b = std::abs(b);
  // 3a^4 - b^4 + 14a^2b^2 + A(b^2 + 3a^2), with -b^4 + A b^2 = b^2 (A - b^2).
  const double inner = 3.0 * a2 * a2 + 14.0 * a2 * b2 + b2 * iv.a_minus_b2() + 3.0 * a2 * big_a;
  const double num = (big_a + 5.0 * b2 - a2) * std::sqrt(abs_b / abs_a * inner);
  const double den = 8.0 * std::sqrt(2.0) * b2 * (abs_a + abs_b) * (abs_a + abs_b);
  return num / den;
}

double corr_d(const SlrInterval& iv) {
  const double a = iv.a();
  const double b = iv.b();
  return -(a + b) / std::sqrt(2.0 * (a * a + b * b));
}

LimitedValue corr_r(const SlrInterval& iv) {
  if (!iv.general()) {
    // The special-case design attains the limit value exactly.
    const EndpointMoments m = endpoint_moments(iv, p_r(iv));
    return {-m.mean / std::sqrt(m.mean_sq), true};
  }
  const double a = iv.a();
  const double b = iv.b();
  const double a2 = a * a;
  const double b2 = b * b;
  const double big_a = iv.big_a();
  const double amb = iv.a_minus_b2();
  const double num = std::abs(b) * (a2 + 4.0 * a * b + amb) * (-5.0 * a2 - amb);
  const double poly = a2 * a2 * a2 - 33.0 * a2 * a2 * b2 - 33.0 * a2 * b2 * b2 + b2 * b2 * b2;
  const double den = sgn(a) * (a2 + amb) * std::sqrt(2.0 * big_a * big_a * big_a - 2.0 * poly);
  return {num / den, false};
}

double corr_r2(const SlrInterval& iv) {
  if (!iv.general()) {
    throw InvalidArgument("r^2-optimal SLR correlation is undefined when an endpoint is zero");
  }
  const double a = iv.a();
  const double b = iv.b();
  if (a < 0.0 && b > 0.0) return 0.0;
  return -2.0 * std::sqrt(a * b) / (a + b);
}

std::vector<SlrTableRow> table_slr(std::span<const double> a_values, double b) {
  std::vector<SlrTableRow> rows;
  rows.reserve(a_values.size());
  for (double a : a_values) {
    if (!(a < b)) {
      std::ostringstream msg;
      msg << "table_slr: a = " << a << " is not below b = " << b;
      throw InvalidArgument(msg.str());
    }
    const SlrInterval iv(a, b);
    SlrTableRow row;
    row.a = a;
    row.p_r = p_r(iv);
    row.eff_d_r = eff_d_of_r(iv);
    row.eff_d_r2 = eff_d_of_r2(iv);
    row.eff_r_d = eff_r_of_d(iv);
    row.eff_r_r2 = eff_r_of_r2(iv);
    row.corr_d = corr_d(iv);
    row.corr_r = corr_r(iv).value;
    if (iv.general()) {
      row.p_r2 = r2_optimal_slr(iv).p;
      row.corr_r2 = corr_r2(iv);
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace optdesign
