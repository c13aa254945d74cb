#include <array>
#include <cmath>

#include "doctest.h"
#include "optdesign/errors.hpp"
#include "optdesign/michaelis_menten.hpp"
#include "optdesign/mm_tables.hpp"
#include "optdesign/optimizer.hpp"
#include "optdesign/slr.hpp"
#include "oracles.hpp"

using namespace optdesign;

namespace {

Model mm_at(double eps) {
  MMParams p;
  p.eps = eps;
  return mm_model(p);
}

double best_random(const Model& m, const CriterionSpec& spec, int k, std::uint64_t seed) {
  oracle::Rng rng(seed);
  double best = std::numeric_limits<double>::infinity();
  for (int t = 0; t < 10000; ++t) {
    const Design d = make_design(oracle::random_points(rng, m.space(), k), m.space());
    best = std::min(best, evaluate(spec, m, d));
  }
  return best;
}

}  // namespace

TEST_CASE("request validation") {
  OptimizeRequest req(slr_model(DesignSpace(1.0, 5.0)), CriterionSpec::d());
  req.n_support = 5;
  CHECK_THROWS_AS(optimize_design(req), InvalidArgument);
  req.n_support = 2;
  req.grid_resolution = 50;
  CHECK_THROWS_AS(optimize_design(req), InvalidArgument);
  req.grid_resolution = 200;
  req.weight_tolerance = 0.0;
  CHECK_THROWS_AS(optimize_design(req), InvalidArgument);
}

TEST_CASE("weight optimization on fixed supports") {
  const Model slr = slr_model(DesignSpace(1.0, 5.0));
  const std::array<double, 2> ends{1.0, 5.0};
  const auto wr = optimize_weights(slr, ends, CriterionSpec::r());
  CHECK(wr[1] == doctest::Approx(0.356).epsilon(1e-3));
  CHECK(std::abs(wr[1] - p_r(SlrInterval(1.0, 5.0))) < 1e-4);
  const auto wd = optimize_weights(slr, ends, CriterionSpec::d());
  CHECK(wd[0] == doctest::Approx(0.5).epsilon(1e-7));

  const Model mm = mm_at(0.0);
  const std::array<double, 2> sup{0.55 * 227.27, 5.0 * 227.27};
  const auto wm = optimize_weights(mm, sup, CriterionSpec::r());
  CHECK(wm[0] == doctest::Approx(0.54).epsilon(0.02));

  const std::array<double, 3> three{1.0, 3.0, 5.0};
  const auto w3 = optimize_weights(slr, three, CriterionSpec::d());
  CHECK(w3[0] == doctest::Approx(0.5).epsilon(1e-5));
  CHECK(w3[1] == doctest::Approx(0.0).scale(1.0).epsilon(1e-5));
  CHECK(w3[2] == doctest::Approx(0.5).epsilon(1e-5));

  CHECK_THROWS_AS(optimize_weights(slr, std::array<double, 1>{2.0}, CriterionSpec::d()),
                  OptimizationFailure);
  CHECK_THROWS_AS(optimize_weights(slr, std::array<double, 2>{2.0, 2.0}, CriterionSpec::d()),
                  InvalidArgument);
  CHECK_THROWS_AS(optimize_weights(slr, std::array<double, 2>{0.0, 2.0}, CriterionSpec::d()),
                  InvalidArgument);
}

TEST_CASE("numerical optimum matches the closed forms on simple linear regression") {
  const SlrInterval iv(1.0, 5.0);
  const Model m = slr_model(iv.space());
  for (const auto& [spec, closed] :
       {std::pair{CriterionSpec::d(), d_optimal_slr(iv)}, std::pair{CriterionSpec::r(), r_optimal_slr(iv)}}) {
    const OptimizeResult res = optimize_design(OptimizeRequest(m, spec));
    CHECK(res.converged);
    REQUIRE(res.derivative_report.has_value());
    REQUIRE(res.design.size() == 2);
    for (std::size_t i = 0; i < 2; ++i) {
      CHECK(std::abs(res.design.points()[i].x - closed.points()[i].x) < 1e-6);
      CHECK(std::abs(res.design.points()[i].w - closed.points()[i].w) < 1e-6);
    }
  }
  const OptimizeResult r2 = optimize_design(OptimizeRequest(m, CriterionSpec::r2()));
  CHECK_FALSE(r2.converged);
  CHECK_FALSE(r2.derivative_report.has_value());
  CHECK(r2.criterion_value <= phi_r2(fim(m, r2_optimal_slr(iv).design)) + 1e-8);
}

TEST_CASE("c-optimal designs") {
  const Model m = slr_model(DesignSpace(-1.0, 1.0));
  const OptimizeResult slope = c_optimal(m, {0.0, 1.0});
  REQUIRE(slope.design.size() == 2);
  CHECK(slope.design.lowest().x == doctest::Approx(-1.0));
  CHECK(slope.design.highest().x == doctest::Approx(1.0));
  CHECK(slope.design.lowest().w == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(slope.criterion_value == doctest::Approx(1.0).epsilon(1e-8));

  const OptimizeResult intercept = c_optimal(m, {1.0, 0.0});
  CHECK(intercept.criterion_value == doctest::Approx(1.0).epsilon(1e-8));
  const auto brute = oracle::brute_two_point(
      [](double x) { return Vec2{1.0, x}; }, m.space(),
      [](const InfoMatrix& mm) { return oracle::inverse(mm).v1; }, 81, 39);
  CHECK(intercept.criterion_value <= brute.value + 1e-8);

  const Model mm = mm_at(0.5);
  const OptimizeResult c1 = c_optimal(mm, {1.0, 0.0});
  const OptimizeResult c2 = c_optimal(mm, {0.0, 1.0});
  CHECK(c1.converged);
  CHECK(c2.converged);
  const InfoMatrix m1 = fim(mm, c1.design);
  CHECK(phi_c(m1, {1.0, 0.0}) / c1.criterion_value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(phi_sa(m1, c1.criterion_value, c2.criterion_value) > 1.0);
}

TEST_CASE("optimum dominates random designs") {
  const Model mm = mm_at(0.5);
  const double ref1 = c_optimal(mm, {1.0, 0.0}).criterion_value;
  const double ref2 = c_optimal(mm, {0.0, 1.0}).criterion_value;
  const std::array specs{CriterionSpec::d(), CriterionSpec::r(), CriterionSpec::sa(ref1, ref2),
                         CriterionSpec::r2(), CriterionSpec::em()};
  for (const CriterionSpec& spec : specs) {
    INFO("criterion " << spec.name());
    const OptimizeResult res = optimize_design(OptimizeRequest(mm, spec));
    CHECK(res.criterion_value <= best_random(mm, spec, 2, 77) * (1.0 + 1e-8));
    if (spec.convex()) {
      CHECK(res.converged);
      CHECK(res.derivative_report->min_dd >= -1e-6 * std::max(1.0, res.criterion_value));
    }
  }
  const Model slr = slr_model(DesignSpace(-2.0, 3.0));
  for (const CriterionSpec& spec : {CriterionSpec::d(), CriterionSpec::r(), CriterionSpec::em()}) {
    const OptimizeResult res = optimize_design(OptimizeRequest(slr, spec));
    CHECK(res.criterion_value <= best_random(slr, spec, 2, 78) * (1.0 + 1e-8));
  }
}

TEST_CASE("three- and four-point searches") {
  const Model mm = mm_at(0.05);
  for (int k : {3, 4}) {
    OptimizeRequest req(mm, CriterionSpec::r());
    req.n_support = k;
    const OptimizeResult res = optimize_design(req);
    CHECK(res.converged);
    CHECK(res.criterion_value <= best_random(mm, CriterionSpec::r(), k, 5) * (1.0 + 1e-8));
    const double two = optimize_design(OptimizeRequest(mm, CriterionSpec::r())).criterion_value;
    CHECK(res.criterion_value == doctest::Approx(two).epsilon(1e-7));
  }
}

TEST_CASE("optimization is deterministic and self-efficient") {
  const Model mm = mm_at(0.5);
  for (const CriterionSpec& spec : {CriterionSpec::r(), CriterionSpec::em()}) {
    OptimizeRequest req(mm, spec);
    req.seed = 1234;
    const OptimizeResult a = optimize_design(req);
    const OptimizeResult b = optimize_design(req);
    CHECK(a.design == b.design);
    CHECK(a.criterion_value == b.criterion_value);
    CHECK(a.iterations == b.iterations);
    CHECK(evaluate(spec, mm, a.design) / a.criterion_value == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("non-convex optima on the Michaelis-Menten model") {
  const OptimizeResult em = optimize_design(OptimizeRequest(mm_at(0.5), CriterionSpec::em()));
  CHECK(em.design.lowest().x / 227.27 == doctest::Approx(0.5));
  CHECK(em.design.lowest().w == doctest::Approx(0.86).epsilon(0.01));
  CHECK_FALSE(em.converged);

  OptimizeRequest compat(mm_at(0.0), CriterionSpec::em());
  compat.compat_singular_limit = true;
  const OptimizeResult collapsed = optimize_design(compat);
  CHECK(collapsed.collapsed);
  CHECK(collapsed.design.size() == 1);
  CHECK(collapsed.design.lowest().x / 227.27 < 0.005);

  OptimizeRequest plain(mm_at(0.0), CriterionSpec::em());
  CHECK_FALSE(optimize_design(plain).collapsed);
}

TEST_CASE("MM table rows") {
  const std::array<double, 3> eps{0.05, 0.5, 1.0};
  const MmTables t = mm_tables(MMParams{}, eps, mm_table_criteria());
  REQUIRE(t.designs.size() == 15);
  REQUIRE(t.efficiencies.size() == 15);

  auto row = [&](double e, CriterionKind k) {
    for (std::size_t i = 0; i < t.designs.size(); ++i) {
      if (t.designs[i].eps == e && t.designs[i].criterion == k) return i;
    }
    FAIL("row not found");
    return std::size_t{0};
  };

  for (CriterionKind k : mm_table_criteria()) {
    CHECK(t.designs[row(1.0, k)].a == doctest::Approx(1.0).epsilon(1e-6));
  }
  const MmEfficiencyRow& d05 = t.efficiencies[row(0.5, CriterionKind::D)];
  CHECK(*d05.eff_d == doctest::Approx(1.0));
  CHECK(std::labs(std::lround(*d05.eff_sa * 100) - 99) <= 2);
  CHECK(std::labs(std::lround(*d05.eff_r * 100) - 99) <= 2);
  CHECK(std::abs(*d05.r2 - 0.69) <= 0.005);

  const MmEfficiencyRow& em005 = t.efficiencies[row(0.05, CriterionKind::EM)];
  const Model m005 = mm_model(MMParams{.eps = 0.05});
  const double em_phi_d = oracle::phi_d(fim(m005, t.designs[row(0.05, CriterionKind::EM)].design));
  const double d_phi_d = oracle::phi_d(fim(m005, t.designs[row(0.05, CriterionKind::D)].design));
  CHECK(*em005.eff_d == doctest::Approx(d_phi_d / em_phi_d).epsilon(1e-9));
  CHECK(std::abs(*em005.r2 - 0.66) <= 0.005);

  for (const MmEfficiencyRow& e : t.efficiencies) {
    for (const auto& v : {e.eff_d, e.eff_sa, e.eff_r, e.eff_em, e.eff_r2}) {
      REQUIRE(v.has_value());
      CHECK(*v <= 1.0 + 1e-6);
      CHECK(*v >= 0.0);
    }
  }
  const std::array<CriterionKind, 1> bad{CriterionKind::C};
  CHECK_THROWS_AS(mm_tables(MMParams{}, eps, bad), InvalidArgument);
}

TEST_CASE("singular optima leave empty table cells in compatibility mode") {
  const std::array<double, 1> eps{0.0};
  MmTableOptions o;
  o.compat = true;
  const MmTables t = mm_tables(MMParams{}, eps, mm_table_criteria(), o);
  const MmEfficiencyRow& em = t.efficiencies[3];
  CHECK(em.criterion == CriterionKind::EM);
  CHECK_FALSE(em.eff_d.has_value());
  CHECK_FALSE(em.r2.has_value());
  CHECK(t.designs[3].collapsed);
  CHECK(t.designs[3].p == 1.0);
  const MmEfficiencyRow& d = t.efficiencies[0];
  CHECK(d.eff_d.has_value());
  CHECK_FALSE(d.eff_em.has_value());
}
