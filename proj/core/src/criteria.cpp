#include "optdesign/criteria.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <string>

#include "optdesign/errors.hpp"

namespace optdesign {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string upper(std::string_view s) {
  std::string out(s);
  for (auto& ch : out) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  return out;
}

// Unit eigenvector of the largest eigenvalue of a symmetric 2x2 matrix.
Vec2 principal_axis(const InfoMatrix& m, double lambda_max) {
  Vec2 u1{m.m12, lambda_max - m.m11};
  Vec2 u2{lambda_max - m.m22, m.m12};
  const double n1 = std::hypot(u1[0], u1[1]);
  const double n2 = std::hypot(u2[0], u2[1]);
  if (n1 == 0.0 && n2 == 0.0) return {1.0, 0.0};
  if (n1 >= n2) return {u1[0] / n1, u1[1] / n1};
  return {u2[0] / n2, u2[1] / n2};
}

double lambda_max(const InfoMatrix& m) {
  const double half_gap = 0.5 * (m.m11 - m.m22);
  return 0.5 * m.trace() + std::hypot(half_gap, m.m12);
}

CovQuantities require_nonsingular(const InfoMatrix& m, const char* what) {
  CovQuantities q = cov_quantities(m);
  if (q.singular) {
    throw SingularDesign(std::string(what) + ": information matrix is singular");
  }
  return q;
}

}  // namespace

std::string_view to_string(CriterionKind kind) noexcept {
  switch (kind) {
    case CriterionKind::D: return "D";
    case CriterionKind::R: return "R";
    case CriterionKind::R2: return "R2";
    case CriterionKind::C: return "C";
    case CriterionKind::SA: return "SA";
    case CriterionKind::EM: return "EM";
    case CriterionKind::CPB: return "CPB";
    case CriterionKind::Compound: return "COMPOUND";
  }
  return "?";
}

std::optional<CriterionKind> parse_criterion_kind(std::string_view text) {
  const std::string s = upper(text);
  if (s == "D") return CriterionKind::D;
  if (s == "R") return CriterionKind::R;
  if (s == "R2" || s == "R^2") return CriterionKind::R2;
  if (s == "C") return CriterionKind::C;
  if (s == "SA") return CriterionKind::SA;
  if (s == "EM") return CriterionKind::EM;
  if (s == "CPB" || s == "C_PB") return CriterionKind::CPB;
  if (s == "COMPOUND") return CriterionKind::Compound;
  return std::nullopt;
}

CriterionSpec CriterionSpec::c(const Vec2& c) {
  if (!std::isfinite(c[0]) || !std::isfinite(c[1]) || (c[0] == 0.0 && c[1] == 0.0)) {
    throw InvalidArgument("c-criterion needs a finite nonzero vector c");
  }
  CriterionSpec spec(CriterionKind::C);
  spec.c_ = c;
  return spec;
}

CriterionSpec CriterionSpec::sa(double ref1, double ref2) {
  if (!(ref1 > 0.0) || !(ref2 > 0.0) || !std::isfinite(ref1) || !std::isfinite(ref2)) {
    throw InvalidArgument("SA-criterion references must be finite and positive");
  }
  CriterionSpec spec(CriterionKind::SA);
  spec.ref1_ = ref1;
  spec.ref2_ = ref2;
  return spec;
}

CriterionSpec CriterionSpec::compound(double lambda, double d_star, double r_star) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw InvalidArgument("compound criterion needs lambda in [0, 1]");
  }
  if (!(d_star > 0.0) || !(r_star > 0.0) || !std::isfinite(d_star) || !std::isfinite(r_star)) {
    throw InvalidArgument("compound criterion references must be finite and positive");
  }
  CriterionSpec spec(CriterionKind::Compound);
  spec.lambda_ = lambda;
  spec.d_star_ = d_star;
  spec.r_star_ = r_star;
  return spec;
}

bool CriterionSpec::convex() const noexcept {
  switch (kind_) {
    case CriterionKind::D:
    case CriterionKind::R:
    case CriterionKind::C:
    case CriterionKind::SA:
    case CriterionKind::Compound:
      return true;
    case CriterionKind::R2:
    case CriterionKind::EM:
    case CriterionKind::CPB:
      return false;
  }
  return false;
}

double phi_d(const InfoMatrix& m) noexcept {
  if (m.singular()) return kInf;
  return 1.0 / std::sqrt(m.det());
}

double phi_r(const InfoMatrix& m) noexcept {
  if (m.singular()) return kInf;
  // sqrt(v1 v2) with v1 = m22/det, v2 = m11/det
  return std::sqrt(m.m11 * m.m22) / m.det();
}

double phi_r2(const InfoMatrix& m) {
  require_nonsingular(m, "phi_r2");
  return (m.m12 * m.m12) / (m.m11 * m.m22);
}

double correlation(const InfoMatrix& m) {
  require_nonsingular(m, "correlation");
  // cov12 / sqrt(v1 v2) = -m12 / sqrt(m11 m22)
  return -m.m12 / std::sqrt(m.m11 * m.m22);
}

double phi_c(const InfoMatrix& m, const Vec2& c) noexcept {
  const CovQuantities q = cov_quantities(m);
  if (!q.singular) return q.quad(c, c);

  // Rank <= 1: M = lmax u u^T, pseudo-inverse u u^T / lmax.
  const double lmax = lambda_max(m);
  if (!(lmax > 0.0)) return kInf;
  const Vec2 u = principal_axis(m, lmax);
  const double along = u[0] * c[0] + u[1] * c[1];
  const double cn = std::hypot(c[0], c[1]);
  const double off = std::hypot(c[0] - along * u[0], c[1] - along * u[1]);
  if (off > 1e-8 * cn) return kInf;
  return along * along / lmax;
}

double phi_sa(const InfoMatrix& m, double ref1, double ref2) {
  if (!(ref1 > 0.0) || !(ref2 > 0.0)) {
    throw InvalidArgument("phi_sa: references must be positive");
  }
  return phi_c(m, {1.0, 0.0}) / ref1 + phi_c(m, {0.0, 1.0}) / ref2;
}

double phi_em(const InfoMatrix& m) noexcept {
  if (m.singular()) return kInf;
  const double lmax = lambda_max(m);
  const double lmin = m.det() / lmax;
  return lmax / lmin;
}

double phi_c_pritchard(std::span<const double> corr, std::size_t p) {
  if (p < 2 || corr.size() != p * p) {
    throw InvalidArgument("phi_c_pritchard: need a p x p matrix with p >= 2");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      const double r = corr[i * p + j];
      if (!std::isfinite(r) || r < -1.0 || r > 1.0) {
        throw InvalidArgument("phi_c_pritchard: correlations must lie in [-1, 1]");
      }
      if (i == j) {
        if (std::abs(r - 1.0) > 1e-12) {
          throw InvalidArgument("phi_c_pritchard: diagonal entries must be 1");
        }
        continue;
      }
      if (std::abs(r - corr[j * p + i]) > 1e-12) {
        throw InvalidArgument("phi_c_pritchard: matrix is not symmetric");
      }
      sum += r * r;
    }
  }
  return std::sqrt(sum / static_cast<double>(p * (p - 1)));
}

double phi_compound(const InfoMatrix& m, double lambda, double phi_d_star, double phi_r_star) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw InvalidArgument("phi_compound: lambda must lie in [0, 1]");
  }
  if (!(phi_d_star > 0.0) || !(phi_r_star > 0.0)) {
    throw InvalidArgument("phi_compound: references must be positive");
  }
  if (m.singular()) return kInf;
  return (1.0 - lambda) * phi_d(m) / phi_d_star + lambda * phi_r(m) / phi_r_star;
}

double evaluate(const CriterionSpec& spec, const InfoMatrix& m) noexcept {
  switch (spec.kind()) {
    case CriterionKind::D: return phi_d(m);
    case CriterionKind::R: return phi_r(m);
    case CriterionKind::R2:
      if (m.singular()) return kInf;
      return (m.m12 * m.m12) / (m.m11 * m.m22);
    case CriterionKind::C: return phi_c(m, spec.c_vector());
    case CriterionKind::SA:
      return phi_c(m, {1.0, 0.0}) / spec.ref1() + phi_c(m, {0.0, 1.0}) / spec.ref2();
    case CriterionKind::EM: return phi_em(m);
    case CriterionKind::CPB:
      if (m.singular()) return kInf;
      return std::abs(m.m12) / std::sqrt(m.m11 * m.m22);
    case CriterionKind::Compound:
      if (m.singular()) return kInf;
      return (1.0 - spec.lambda()) * phi_d(m) / spec.d_star() +
             spec.lambda() * phi_r(m) / spec.r_star();
  }
  return kInf;
}

double efficiency(EfficiencyKind kind, const Design& design, const Design& optimal,
                  const Model& model) {
  const InfoMatrix m = fim(model, design);
  const InfoMatrix m_star = fim(model, optimal);
  if (m.singular() || m_star.singular()) {
    throw SingularDesign("efficiency: design or reference design is singular");
  }
  if (kind == EfficiencyKind::D) return phi_d(m_star) / phi_d(m);
  return phi_r(m_star) / phi_r(m);
}

double dd_d(const Model& model, const Design& design, double x) {
  const InfoMatrix m = fim(model, design);
  const CovQuantities q = require_nonsingular(m, "dd_d");
  const Vec2 f = model.regressor(x);
  return 0.5 * phi_d(m) * (static_cast<double>(kParams) - q.quad(f, f));
}

double dd_r(const Model& model, const Design& design, double x) {
  const InfoMatrix m = fim(model, design);
  const CovQuantities q = require_nonsingular(m, "dd_r");
  const Vec2 h = q.apply(model.regressor(x));
  // d(v1 v2) toward f f^T, from dM^-1 = M^-1 - h h^T.
  const double d_sq = 2.0 * q.v1 * q.v2 - q.v2 * h[0] * h[0] - q.v1 * h[1] * h[1];
  return d_sq / (2.0 * std::sqrt(q.v1 * q.v2));
}

double directional_derivative(const CriterionSpec& spec, const Model& model,
                              const Design& design, double x) {
  switch (spec.kind()) {
    case CriterionKind::D: return dd_d(model, design, x);
    case CriterionKind::R: return dd_r(model, design, x);
    case CriterionKind::C:
    case CriterionKind::SA: {
      const CovQuantities q = require_nonsingular(fim(model, design), "directional_derivative");
      const Vec2 h = q.apply(model.regressor(x));
      if (spec.kind() == CriterionKind::C) {
        const Vec2& c = spec.c_vector();
        const double hc = h[0] * c[0] + h[1] * c[1];
        return q.quad(c, c) - hc * hc;
      }
      return (q.v1 - h[0] * h[0]) / spec.ref1() + (q.v2 - h[1] * h[1]) / spec.ref2();
    }
    case CriterionKind::Compound:
      return (1.0 - spec.lambda()) * dd_d(model, design, x) / spec.d_star() +
             spec.lambda() * dd_r(model, design, x) / spec.r_star();
    case CriterionKind::R2:
    case CriterionKind::EM:
    case CriterionKind::CPB:
      break;
  }
  throw InvalidArgument(std::string("no equivalence theorem for non-convex criterion ") +
                        std::string(spec.name()));
}

DerivativeReport derivative_report(const CriterionSpec& spec, const Model& model,
                                   const Design& design, std::size_t grid_points) {
  if (!spec.convex()) {
    throw InvalidArgument(std::string("no equivalence theorem for non-convex criterion ") +
                          std::string(spec.name()));
  }
  if (grid_points < 2) throw InvalidArgument("derivative_report: need at least 2 grid points");

  const DesignSpace& space = model.space();
  DerivativeReport report;
  report.x_grid.reserve(grid_points + design.size());
  for (std::size_t k = 0; k < grid_points; ++k) {
    const double t = static_cast<double>(k) / static_cast<double>(grid_points - 1);
    report.x_grid.push_back(k + 1 == grid_points ? space.hi() : space.lo() + t * space.width());
  }
  for (const auto& p : design.points()) report.x_grid.push_back(p.x);
  std::sort(report.x_grid.begin(), report.x_grid.end());
  report.x_grid.erase(std::unique(report.x_grid.begin(), report.x_grid.end()),
                      report.x_grid.end());

  report.dd_values.reserve(report.x_grid.size());
  report.min_dd = kInf;
  for (double x : report.x_grid) {
    const double dd = directional_derivative(spec, model, design, x);
    report.dd_values.push_back(dd);
    if (dd < report.min_dd) {
      report.min_dd = dd;
      report.argmin_x = x;
    }
  }
  return report;
}

bool certifies(const DerivativeReport& report, double criterion_value) noexcept {
  return report.min_dd >= -1e-6 * std::max(1.0, criterion_value);
}

EfficiencyReport efficiency_report(const Model& model,
                                   std::span<const std::pair<std::string, Design>> designs,
                                   const Design& d_optimal, const Design& r_optimal) {
  const InfoMatrix md = fim(model, d_optimal);
  const InfoMatrix mr = fim(model, r_optimal);
  if (md.singular() || mr.singular()) {
    throw SingularDesign("efficiency_report: reference designs must be non-singular");
  }
  EfficiencyReport report;
  report.phi_d_star = phi_d(md);
  report.phi_r_star = phi_r(mr);
  for (const auto& [label, design] : designs) {
    const InfoMatrix m = fim(model, design);
    EfficiencyEntry e;
    e.label = label;
    e.phi_d = phi_d(m);
    e.phi_r = phi_r(m);
    e.eff_d = report.phi_d_star / e.phi_d;  // 0 when singular
    e.eff_r = report.phi_r_star / e.phi_r;
    if (!m.singular()) e.correlation = correlation(m);
    report.entries.push_back(std::move(e));
  }
  return report;
}

}  // namespace optdesign
