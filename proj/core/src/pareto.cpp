#include "optdesign/pareto.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "optdesign/errors.hpp"

namespace optdesign {

namespace {

constexpr double kTieTol = 1e-12;

double uniform01(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace

std::vector<Design> sample_two_point_designs(const Model& model, std::size_t n,
                                             std::uint64_t seed, SamplingLaw law) {
  if (n == 0) throw InvalidArgument("sample_two_point_designs: n must be at least 1");
  const DesignSpace& space = model.space();
  std::mt19937_64 rng(seed);
  std::vector<Design> out;
  out.reserve(n);
  while (out.size() < n) {
    double x1 = space.lo() + uniform01(rng) * space.width();
    double x2 = space.hi();
    if (law == SamplingLaw::uniform_pair) x2 = space.lo() + uniform01(rng) * space.width();
    const double w = uniform01(rng);
    if (std::abs(x1 - x2) <= space.merge_tolerance()) continue;
    Design d = make_design({{x1, w}, {x2, 1.0 - w}}, space);
    if (d.size() != 2 || fim(model, d).singular()) continue;
    out.push_back(std::move(d));
  }
  return out;
}

std::vector<FrontPoint> evaluate_front_points(const Model& model, std::span<const Design> designs,
                                              double phi_d_star, double phi_r_star) {
  std::vector<FrontPoint> out;
  out.reserve(designs.size());
  for (const Design& d : designs) {
    const InfoMatrix m = fim(model, d);
    if (m.singular()) throw SingularDesign("evaluate_front_points: singular design");
    out.push_back({d, phi_d_star / phi_d(m), phi_r_star / phi_r(m), phi_r2(m), false});
  }
  return out;
}

bool dominates(const FrontPoint& a, const FrontPoint& b) noexcept {
  const bool no_worse = a.eff_d >= b.eff_d - kTieTol && a.eff_r >= b.eff_r - kTieTol;
  const bool better = a.eff_d > b.eff_d + kTieTol || a.eff_r > b.eff_r + kTieTol;
  return no_worse && better;
}

std::vector<FrontPoint> pareto_front(std::span<const FrontPoint> points) {
  if (points.empty()) throw InvalidArgument("pareto_front: empty input");
  for (const FrontPoint& p : points) {
    if (!std::isfinite(p.eff_d) || !std::isfinite(p.eff_r)) {
      throw InvalidArgument("pareto_front: non-finite objective");
    }
  }
  std::vector<FrontPoint> front;
  for (const FrontPoint& candidate : points) {
    const bool dominated = std::any_of(points.begin(), points.end(), [&](const FrontPoint& other) {
      return dominates(other, candidate);
    });
    if (!dominated) {
      front.push_back(candidate);
      front.back().dominated = false;
    }
  }
  std::stable_sort(front.begin(), front.end(), [](const FrontPoint& a, const FrontPoint& b) {
    if (a.eff_d != b.eff_d) return a.eff_d > b.eff_d;
    return a.eff_r < b.eff_r;
  });
  return front;
}

std::vector<CompoundRow> compound_sweep(const Model& model, std::span<const double> lambdas,
                                        double phi_d_star, double phi_r_star,
                                        int grid_resolution, std::uint64_t seed) {
  std::vector<CompoundRow> rows;
  rows.reserve(lambdas.size());
  for (double lambda : lambdas) {
    OptimizeRequest req(model, CriterionSpec::compound(lambda, phi_d_star, phi_r_star));
    req.grid_resolution = grid_resolution;
    req.seed = seed;
    OptimizeResult res = optimize_design(req);
    const InfoMatrix m = fim(model, res.design);
    rows.push_back({lambda, res.design, res.criterion_value, phi_d_star / phi_d(m),
                    phi_r_star / phi_r(m), correlation(m), res.converged});
  }
  return rows;
}

std::vector<SweepRow> criterion_sweep(const Model& model, double a_fixed,
                                      std::span<const double> p_grid) {
  const DesignSpace& space = model.space();
  const double x = a_fixed * model.unit();
  if (!space.contains(x) || !(space.hi() - x > space.merge_tolerance())) {
    throw InvalidArgument("criterion_sweep: a_fixed must lie in the space below its upper end");
  }
  std::vector<SweepRow> rows;
  rows.reserve(p_grid.size());
  for (double p : p_grid) {
    if (!(p > 0.0 && p < 1.0)) {
      throw InvalidArgument("criterion_sweep: every p must lie in (0, 1)");
    }
    const InfoMatrix m = fim(model, make_design({{x, p}, {space.hi(), 1.0 - p}}, space));
    rows.push_back({p, phi_d(m), phi_r(m), phi_r2(m), correlation(m)});
  }
  return rows;
}

std::optional<std::pair<std::size_t, std::size_t>> find_tradeoff_pair(
    std::span<const SweepRow> rows) {
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows.size(); ++j) {
      if (rows[i].phi_d < rows[j].phi_d && rows[i].phi_r > rows[j].phi_r) {
        return std::pair{i, j};
      }
    }
  }
  return std::nullopt;
}

}  // namespace optdesign
