#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"
#include "optdesign/criteria.hpp"
#include "optdesign/errors.hpp"
#include "optdesign/michaelis_menten.hpp"
#include "optdesign/slr.hpp"
#include "oracles.hpp"

using namespace optdesign;

namespace {

const InfoMatrix kIdentity{1.0, 0.0, 1.0};
const InfoMatrix kHalf{1.0, 0.5, 0.5};
const InfoMatrix kRankOne{1.0, 1.0, 1.0};
constexpr double kInf = std::numeric_limits<double>::infinity();

Model random_model(oracle::Rng& rng, int t) {
  if (t % 2 == 0) {
    const auto [a, b] = oracle::random_interval(rng);
    return slr_model(DesignSpace(a, b));
  }
  MMParams p;
  p.eps = rng.uniform(0.02, 1.0);
  p.b = rng.uniform(2.0, 8.0);
  return mm_model(p);
}

}  // namespace

TEST_CASE("criterion names parse case-insensitively") {
  CHECK(parse_criterion_kind("d") == CriterionKind::D);
  CHECK(parse_criterion_kind("r^2") == CriterionKind::R2);
  CHECK(parse_criterion_kind("c_pb") == CriterionKind::CPB);
  CHECK(parse_criterion_kind("Compound") == CriterionKind::Compound);
  CHECK_FALSE(parse_criterion_kind("Q").has_value());
  for (auto k : {CriterionKind::D, CriterionKind::R, CriterionKind::R2, CriterionKind::C,
                 CriterionKind::SA, CriterionKind::EM, CriterionKind::CPB,
                 CriterionKind::Compound}) {
    CHECK(parse_criterion_kind(to_string(k)) == k);
  }
}

TEST_CASE("criterion specs validate parameters") {
  CHECK_THROWS_AS(CriterionSpec::c({0.0, 0.0}), InvalidArgument);
  CHECK_THROWS_AS(CriterionSpec::sa(0.0, 1.0), InvalidArgument);
  CHECK_THROWS_AS(CriterionSpec::compound(1.5, 1.0, 1.0), InvalidArgument);
  CHECK_THROWS_AS(CriterionSpec::compound(0.5, -1.0, 1.0), InvalidArgument);
  CHECK(CriterionSpec::d().convex());
  CHECK(CriterionSpec::sa(1.0, 1.0).convex());
  CHECK_FALSE(CriterionSpec::r2().convex());
  CHECK_FALSE(CriterionSpec::em().convex());
}

TEST_CASE("phi_d, phi_r and r2 on fixed matrices") {
  CHECK(phi_d(kIdentity) == 1.0);
  CHECK(phi_d(kHalf) == doctest::Approx(2.0));
  CHECK(phi_d(kRankOne) == kInf);

  CHECK(phi_r(kIdentity) == 1.0);
  CHECK(phi_r(kHalf) == doctest::Approx(std::sqrt(8.0)));
  CHECK(phi_r(InfoMatrix{2.0, 0.0, 0.5}) == doctest::Approx(1.0));

  CHECK(phi_r2(kIdentity) == 0.0);
  CHECK(phi_r2(kHalf) == doctest::Approx(0.5));
  CHECK_THROWS_AS(phi_r2(kRankOne), SingularDesign);
  CHECK_THROWS_AS(correlation(kRankOne), SingularDesign);
}

TEST_CASE("correlation of D-optimal simple linear regression designs") {
  auto corr_of = [](double a, double b) {
    const Model m = slr_model(DesignSpace(a, b));
    return correlation(fim(m, d_optimal_slr(SlrInterval(a, b))));
  };
  CHECK(corr_of(1.0, 5.0) == doctest::Approx(-0.832).epsilon(1e-3));
  CHECK(corr_of(-3.0, 3.0) == doctest::Approx(0.0));
  CHECK(corr_of(0.0, 1.0) == doctest::Approx(-1.0 / std::sqrt(2.0)));

  const Model m = slr_model(DesignSpace(1.0, 5.0));
  const InfoMatrix info = fim(m, make_design({{1.0, 5.0 / 6.0}, {5.0, 1.0 / 6.0}}, m.space()));
  CHECK(phi_r2(info) == doctest::Approx(0.745 * 0.745).epsilon(2e-3));
}

TEST_CASE("phi_c with inverse and pseudo-inverse") {
  CHECK(phi_c(kIdentity, {1.0, 0.0}) == doctest::Approx(1.0));
  CHECK(phi_c(kHalf, {0.0, 1.0}) == doctest::Approx(4.0));
  CHECK(phi_c(kRankOne, {1.0, -1.0}) == kInf);
  // M = f f^T with f = (1, 1): c = (1, 1) is estimable, c^T M^+ c = 1.
  CHECK(phi_c(kRankOne, {1.0, 1.0}) == doctest::Approx(1.0));
  CHECK(phi_c(InfoMatrix{1.0, 0.0, 0.0}, {1.0, 0.0}) == doctest::Approx(1.0));
  CHECK(phi_c(InfoMatrix{1.0, 0.0, 0.0}, {0.0, 1.0}) == kInf);
}

TEST_CASE("phi_sa, phi_em and the Pritchard measure") {
  CHECK(phi_sa(kIdentity, 1.0, 1.0) == doctest::Approx(2.0));
  CHECK_THROWS_AS(phi_sa(kIdentity, 0.0, 1.0), InvalidArgument);

  CHECK(phi_em(kIdentity) == doctest::Approx(1.0));
  CHECK(phi_em(InfoMatrix{2.0, 0.0, 0.5}) == doctest::Approx(4.0));
  CHECK(phi_em(kRankOne) == kInf);

  const std::vector<double> two{1.0, -0.832, -0.832, 1.0};
  CHECK(phi_c_pritchard(two, 2) == doctest::Approx(0.832));
  const std::vector<double> none{1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0};
  CHECK(phi_c_pritchard(none, 3) == 0.0);
  const std::vector<double> half{1.0, 0.5, 0.5, 0.5, 1.0, 0.5, 0.5, 0.5, 1.0};
  CHECK(phi_c_pritchard(half, 3) == doctest::Approx(0.5));
  const std::vector<double> asym{1.0, 0.5, 0.4, 1.0};
  CHECK_THROWS_AS(phi_c_pritchard(asym, 2), InvalidArgument);
  CHECK_THROWS_AS(phi_c_pritchard(std::vector<double>{1.0}, 1), InvalidArgument);
}

TEST_CASE("compound criterion at the pure optima") {
  const SlrInterval iv(1.0, 5.0);
  const Model m = slr_model(iv.space());
  const InfoMatrix md = fim(m, d_optimal_slr(iv));
  const InfoMatrix mr = fim(m, r_optimal_slr(iv));
  const double d_star = phi_d(md);
  const double r_star = phi_r(mr);
  CHECK(phi_compound(md, 0.0, d_star, r_star) == doctest::Approx(1.0));
  CHECK(phi_compound(mr, 1.0, d_star, r_star) == doctest::Approx(1.0));
  CHECK(phi_compound(md, 0.5, d_star, r_star) == doctest::Approx(1.035).epsilon(1e-3));
  CHECK(evaluate(CriterionSpec::compound(0.5, d_star, r_star), md) ==
        doctest::Approx(phi_compound(md, 0.5, d_star, r_star)));
}

TEST_CASE("evaluate returns +inf for singular matrices") {
  for (const CriterionSpec& s : {CriterionSpec::d(), CriterionSpec::r(), CriterionSpec::r2(),
                                 CriterionSpec::em(), CriterionSpec::pritchard(),
                                 CriterionSpec::sa(1.0, 1.0),
                                 CriterionSpec::compound(0.5, 1.0, 1.0)}) {
    CHECK(evaluate(s, kRankOne) == kInf);
  }
  CHECK(evaluate(CriterionSpec::c({1.0, 1.0}), kRankOne) == doctest::Approx(1.0));
}

TEST_CASE("R criterion identity holds on random designs") {
  oracle::Rng rng(21);
  for (int t = 0; t < 400; ++t) {
    const Model model = random_model(rng, t);
    const Design d = make_design(oracle::random_points(rng, model.space(), 2 + rng.index(3)),
                                 model.space());
    const InfoMatrix m = fim(model, d);
    if (m.singular()) continue;
    const double pr = phi_r(m);
    const double pd = phi_d(m);
    CHECK(oracle::rel_close(pr * pr, pd * pd / (1.0 - phi_r2(m)), 1e-10));
    CHECK(oracle::rel_close(pd, oracle::phi_d(m), 1e-12));
    CHECK(oracle::rel_close(pr, oracle::phi_r(m), 1e-12));
  }
}

TEST_CASE("squared R criterion is midpoint convex") {
  oracle::Rng rng(5);
  for (int t = 0; t < 400; ++t) {
    const Model model = random_model(rng, t);
    const Design a = make_design(oracle::random_points(rng, model.space(), 2), model.space());
    const Design b = make_design(oracle::random_points(rng, model.space(), 2), model.space());
    const InfoMatrix ma = fim(model, a);
    const InfoMatrix mb = fim(model, b);
    const InfoMatrix mid = 0.5 * ma + 0.5 * mb;
    const double lhs = std::pow(phi_r(mid), 2);
    const double rhs = 0.5 * std::pow(phi_r(ma), 2) + 0.5 * std::pow(phi_r(mb), 2);
    CHECK(lhs <= rhs + 1e-10 * std::max(1.0, rhs));
  }
}

TEST_CASE("directional derivatives match finite differences") {
  oracle::Rng rng(99);
  for (int t = 0; t < 40; ++t) {
    const Model model = random_model(rng, t);
    const Design d = make_design(oracle::random_points(rng, model.space(), 2 + rng.index(2)),
                                 model.space());
    const InfoMatrix m = fim(model, d);
    if (m.singular()) continue;
    const double x = rng.uniform(model.space().lo(), model.space().hi());
    const Vec2 f = model.regressor(x);

    const double fd_d = oracle::fd_directional_central(oracle::phi_d, m, f);
    const double fd_r = oracle::fd_directional_central(oracle::phi_r, m, f);
    const double scale_d = std::max(std::abs(fd_d), 1e-3 * phi_d(m));
    const double scale_r = std::max(std::abs(fd_r), 1e-3 * phi_r(m));
    CHECK(std::abs(dd_d(model, d, x) - fd_d) <= 1e-4 * scale_d);
    CHECK(std::abs(dd_r(model, d, x) - fd_r) <= 1e-4 * scale_r);

    const Vec2 c{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    auto phi_cc = [&](const InfoMatrix& mm) {
      const auto q = oracle::inverse(mm);
      return c[0] * c[0] * q.v1 + 2 * c[0] * c[1] * q.c12 + c[1] * c[1] * q.v2;
    };
    const double fd_c = oracle::fd_directional_central(phi_cc, m, f);
    const double dd_c = directional_derivative(CriterionSpec::c(c), model, d, x);
    CHECK(std::abs(dd_c - fd_c) <= 1e-4 * std::max(std::abs(fd_c), 1e-3 * phi_cc(m)));

    const double lam = rng.uniform(0.0, 1.0);
    auto phi_l = [&](const InfoMatrix& mm) {
      return (1 - lam) * oracle::phi_d(mm) / 2.0 + lam * oracle::phi_r(mm) / 3.0;
    };
    const double fd_l = oracle::fd_directional_central(phi_l, m, f);
    const double dd_l = directional_derivative(CriterionSpec::compound(lam, 2.0, 3.0), model, d, x);
    CHECK(std::abs(dd_l - fd_l) <= 1e-4 * std::max(std::abs(fd_l), 1e-3 * phi_l(m)));

    auto phi_s = [&](const InfoMatrix& mm) {
      const auto q = oracle::inverse(mm);
      return q.v1 / 2.0 + q.v2 / 5.0;
    };
    const double fd_s = oracle::fd_directional_central(phi_s, m, f);
    const double dd_s = directional_derivative(CriterionSpec::sa(2.0, 5.0), model, d, x);
    CHECK(std::abs(dd_s - fd_s) <= 1e-4 * std::max(std::abs(fd_s), 1e-3 * phi_s(m)));
  }
}

TEST_CASE("equivalence theorem at closed-form optima") {
  const SlrInterval sym(-1.0, 1.0);
  const Model ms = slr_model(sym.space());
  const Design xd = d_optimal_slr(sym);
  CHECK(dd_d(ms, xd, -1.0) == doctest::Approx(0.0).scale(1.0));
  CHECK(dd_d(ms, xd, 1.0) == doctest::Approx(0.0).scale(1.0));
  CHECK(dd_d(ms, xd, 0.0) == doctest::Approx(0.5));
  CHECK(dd_r(ms, r_optimal_slr(sym), 0.0) > 0.0);

  const SlrInterval iv(1.0, 5.0);
  const Model m = slr_model(iv.space());
  const Design xr = r_optimal_slr(iv);
  CHECK(std::abs(dd_r(m, xr, 1.0)) < 1e-6);
  CHECK(std::abs(dd_r(m, xr, 5.0)) < 1e-6);

  const DerivativeReport rep = derivative_report(CriterionSpec::r(), m, xr, 1000);
  CHECK(rep.x_grid.size() == rep.dd_values.size());
  CHECK(rep.x_grid.size() >= 1000);
  CHECK(certifies(rep, phi_r(fim(m, xr))));

  const Design bad = make_design({{1.0, 0.9}, {5.0, 0.1}}, iv.space());
  const DerivativeReport rb = derivative_report(CriterionSpec::d(), m, bad, 1000);
  CHECK_FALSE(certifies(rb, phi_d(fim(m, bad))));
  CHECK(rb.argmin_x == doctest::Approx(5.0));

  CHECK_THROWS_AS(derivative_report(CriterionSpec::r2(), m, xr), InvalidArgument);
  CHECK_THROWS_AS(dd_d(m, one_point_design(2.0, iv.space()), 3.0), SingularDesign);
}

TEST_CASE("efficiencies and efficiency report") {
  const SlrInterval iv(1.0, 5.0);
  const Model m = slr_model(iv.space());
  const Design xd = d_optimal_slr(iv);
  const Design xr = r_optimal_slr(iv);
  CHECK(efficiency(EfficiencyKind::D, xr, xd, m) == doctest::Approx(0.958).epsilon(1e-3));
  CHECK(efficiency(EfficiencyKind::R, xd, xr, m) == doctest::Approx(0.934).epsilon(1e-3));
  CHECK(efficiency(EfficiencyKind::D, xd, xd, m) == doctest::Approx(1.0));
  CHECK(efficiency(EfficiencyKind::R, xd, xr, m) ==
        doctest::Approx(eff_r_of_d(iv)).epsilon(1e-9));
  CHECK_THROWS_AS(efficiency(EfficiencyKind::D, one_point_design(1.0, iv.space()), xd, m),
                  SingularDesign);

  const std::vector<std::pair<std::string, Design>> designs{
      {"d", xd}, {"r", xr}, {"point", one_point_design(2.0, iv.space())}};
  const EfficiencyReport rep = efficiency_report(m, designs, xd, xr);
  REQUIRE(rep.entries.size() == 3);
  CHECK(rep.entries[0].eff_d == doctest::Approx(1.0));
  CHECK(rep.entries[1].eff_r == doctest::Approx(1.0));
  CHECK(rep.entries[0].correlation.value() == doctest::Approx(-0.832).epsilon(1e-3));
  CHECK_FALSE(rep.entries[2].correlation.has_value());
  CHECK(rep.entries[2].eff_d == 0.0);
}
