#ifndef OPTDESIGN_MM_TABLES_HPP
#define OPTDESIGN_MM_TABLES_HPP

// Optimal Michaelis-Menten designs per criterion and lower bound eps, with
// their cross-efficiencies and squared correlations.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "optdesign/criteria.hpp"
#include "optdesign/michaelis_menten.hpp"
#include "optdesign/optimizer.hpp"

namespace optdesign {

/// Criteria in table order: D, SA, R, EM, R2.
std::span<const CriterionKind> mm_table_criteria() noexcept;

struct MmDesignRow {
  double eps = 0.0;
  CriterionKind criterion = CriterionKind::D;
  double a = 0.0;  // lowest support point in K-units
  double p = 0.0;  // mass at the lowest support point
  bool collapsed = false;
  bool certified = false;
  Design design;
};

/// Empty cells: the design or the reference optimum is singular.
struct MmEfficiencyRow {
  double eps = 0.0;
  CriterionKind criterion = CriterionKind::D;
  std::optional<double> eff_d;
  std::optional<double> eff_sa;
  std::optional<double> eff_r;
  std::optional<double> eff_em;
  std::optional<double> eff_r2;  // sqrt(r2* / r2)
  std::optional<double> r2;
};

struct MmTables {
  std::vector<MmDesignRow> designs;
  std::vector<MmEfficiencyRow> efficiencies;
};

struct MmTableOptions {
  int grid_resolution = 200;
  std::uint64_t seed = kDefaultSeed;
  /// Report near-one-point EM and r2 optima as their degenerate limit.
  bool compat = false;
};

/// One design row and one efficiency row per (eps, criterion), eps-major.
/// The SA references are the c-optimal values for (1, 0) and (0, 1) at each
/// eps. Throws InvalidArgument for criteria outside mm_table_criteria() or an
/// invalid eps.
MmTables mm_tables(const MMParams& params, std::span<const double> eps_list,
                   std::span<const CriterionKind> criteria, const MmTableOptions& options = {});

}  // namespace optdesign

#endif  // OPTDESIGN_MM_TABLES_HPP
