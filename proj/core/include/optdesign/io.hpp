#ifndef OPTDESIGN_IO_HPP
#define OPTDESIGN_IO_HPP

// JSON and CSV serialization of designs, results and tables, plus atomic
// file output. Numbers in CSV use '.' decimals regardless of locale.

#include <filesystem>
#include <span>
#include <string>
#include <string_view>

#include "optdesign/criteria.hpp"
#include "optdesign/design.hpp"
#include "optdesign/mm_tables.hpp"
#include "optdesign/optimizer.hpp"
#include "optdesign/pareto.hpp"
#include "optdesign/slr.hpp"

namespace optdesign {

/// printf("%.*f"), with negative zero printed without its sign.
std::string format_fixed(double value, int decimals);

/// {"points": [{"x": .., "w": ..}, ...], "space": {"lo": .., "hi": ..}}
std::string design_to_json(const Design& design);

/// Accepts design_to_json output or any object with a "design" member of that
/// shape (e.g. an optimize result). Without "space", `fallback` is used.
/// Throws InvalidArgument on malformed input.
Design design_from_json(std::string_view text, const DesignSpace* fallback = nullptr);

std::string result_to_json(const OptimizeResult& result, const Model& model,
                           const CriterionSpec& criterion);

std::string derivative_report_to_json(const DerivativeReport& report,
                                      const CriterionSpec& criterion, double criterion_value,
                                      bool certified);

std::string efficiency_report_to_json(const EfficiencyReport& report);

std::string slr_table_csv(std::span<const SlrTableRow> rows);
std::string mm_designs_csv(std::span<const MmDesignRow> rows);
std::string mm_efficiencies_csv(std::span<const MmEfficiencyRow> rows);

/// Columns eff_d, eff_r, p, a, r2 with p the mass at the upper point and a the
/// lower point in units of `unit`.
std::string front_csv(std::span<const FrontPoint> points, double unit);
std::string sweep_csv(std::span<const SweepRow> rows);
std::string compound_sweep_csv(std::span<const CompoundRow> rows, double unit);
std::string derivative_report_csv(const DerivativeReport& report);

/// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace optdesign

#endif  // OPTDESIGN_IO_HPP
