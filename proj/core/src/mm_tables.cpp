#include "optdesign/mm_tables.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "optdesign/errors.hpp"

namespace optdesign {

namespace {

constexpr std::array kTableCriteria{CriterionKind::D, CriterionKind::SA, CriterionKind::R,
                                    CriterionKind::EM, CriterionKind::R2};

struct Optimum {
  Design design;
  bool collapsed = false;
  bool certified = false;
};

std::optional<double> ratio(double best, double value) {
  if (!std::isfinite(best) || !std::isfinite(value) || !(value > 0.0)) return std::nullopt;
  return best / value;
}

std::optional<double> r2_of(const InfoMatrix& m) {
  if (m.singular()) return std::nullopt;
  return phi_r2(m);
}

}  // namespace

std::span<const CriterionKind> mm_table_criteria() noexcept { return kTableCriteria; }

MmTables mm_tables(const MMParams& params, std::span<const double> eps_list,
                   std::span<const CriterionKind> criteria, const MmTableOptions& options) {
  for (CriterionKind kind : criteria) {
    if (std::find(kTableCriteria.begin(), kTableCriteria.end(), kind) == kTableCriteria.end()) {
      throw InvalidArgument("mm_tables: unsupported criterion " + std::string(to_string(kind)));
    }
  }

  MmTables tables;
  for (double eps : eps_list) {
    MMParams p = params;
    p.eps = eps;
    const Model model = mm_model(p);

    const double ref1 = c_optimal(model, {1.0, 0.0}, options.grid_resolution, options.seed)
                            .criterion_value;
    const double ref2 = c_optimal(model, {0.0, 1.0}, options.grid_resolution, options.seed)
                            .criterion_value;
    const std::array specs{CriterionSpec::d(), CriterionSpec::sa(ref1, ref2), CriterionSpec::r(),
                           CriterionSpec::em(), CriterionSpec::r2()};

    std::vector<Optimum> optima;
    for (std::size_t k = 0; k < specs.size(); ++k) {
      if (specs[k].kind() == CriterionKind::D) {
        MmDOptimal d = mm_d_optimal(p);
        optima.push_back({d.design, false, true});
        continue;
      }
      OptimizeRequest req(model, specs[k]);
      req.grid_resolution = options.grid_resolution;
      req.seed = options.seed;
      req.compat_singular_limit = options.compat;
      OptimizeResult res = optimize_design(req);
      optima.push_back({std::move(res.design), res.collapsed, res.converged});
    }

    std::array<double, kTableCriteria.size()> best{};
    for (std::size_t k = 0; k < specs.size(); ++k) {
      best[k] = evaluate(specs[k], model, optima[k].design);
    }
    const std::optional<double> r2_best = r2_of(fim(model, optima[4].design));

    for (CriterionKind kind : criteria) {
      const auto k = static_cast<std::size_t>(
          std::find(kTableCriteria.begin(), kTableCriteria.end(), kind) - kTableCriteria.begin());
      const Optimum& opt = optima[k];

      tables.designs.push_back({eps, kind, opt.design.lowest().x / p.K, opt.design.lowest().w,
                                opt.collapsed, opt.certified, opt.design});

      const InfoMatrix m = fim(model, opt.design);
      MmEfficiencyRow erow;
      erow.eps = eps;
      erow.criterion = kind;
      erow.eff_d = ratio(best[0], evaluate(specs[0], m));
      erow.eff_sa = ratio(best[1], evaluate(specs[1], m));
      erow.eff_r = ratio(best[2], evaluate(specs[2], m));
      erow.eff_em = ratio(best[3], evaluate(specs[3], m));
      erow.r2 = r2_of(m);
      if (erow.r2 && r2_best) {
        erow.eff_r2 = *erow.r2 > 0.0 ? std::sqrt(*r2_best / *erow.r2) : 1.0;
      }
      tables.efficiencies.push_back(erow);
    }
  }
  return tables;
}

}  // namespace optdesign
