#ifndef OPTDESIGN_PARETO_HPP
#define OPTDESIGN_PARETO_HPP

// D/R trade-off analysis: Pareto fronts of sampled two-point designs,
// compound-criterion sweeps and fixed-support weight sweeps.

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "optdesign/criteria.hpp"
#include "optdesign/design.hpp"
#include "optdesign/optimizer.hpp"

namespace optdesign {

struct FrontPoint {
  Design design;
  double eff_d = 0.0;
  double eff_r = 0.0;
  double r2 = 0.0;
  bool dominated = false;
};

enum class SamplingLaw {
  /// Both points uniform on the space, weight of the first uniform on (0, 1).
  uniform_pair,
  /// Upper point at the top of the space, lower point uniform, weight uniform.
  anchored_upper,
};

/// n non-singular two-point designs, deterministic in seed. Singular draws
/// are redrawn.
std::vector<Design> sample_two_point_designs(const Model& model, std::size_t n,
                                             std::uint64_t seed = kDefaultSeed,
                                             SamplingLaw law = SamplingLaw::anchored_upper);

/// Eff_D = phi_d_star / Phi_D, Eff_R = phi_r_star / Phi_R and r^2 of each design.
std::vector<FrontPoint> evaluate_front_points(const Model& model, std::span<const Design> designs,
                                              double phi_d_star, double phi_r_star);

/// True when a is at least as efficient as b in both objectives and strictly
/// better in one, with a 1e-12 tie tolerance.
bool dominates(const FrontPoint& a, const FrontPoint& b) noexcept;

/// Non-dominated subset (maximizing eff_d and eff_r), sorted by eff_d
/// descending. Ties are kept. Throws InvalidArgument on empty input or
/// non-finite objectives.
std::vector<FrontPoint> pareto_front(std::span<const FrontPoint> points);

struct CompoundRow {
  double lambda = 0.0;
  Design design;
  double value = 0.0;
  double eff_d = 0.0;
  double eff_r = 0.0;
  double correlation = 0.0;
  bool converged = false;
};

/// Compound-optimal design for each lambda.
std::vector<CompoundRow> compound_sweep(const Model& model, std::span<const double> lambdas,
                                        double phi_d_star, double phi_r_star,
                                        int grid_resolution = 200,
                                        std::uint64_t seed = kDefaultSeed);

struct SweepRow {
  double p = 0.0;
  double phi_d = 0.0;
  double phi_r = 0.0;
  double phi_r2 = 0.0;
  double corr = 0.0;
};

/// Criterion values of {a_fixed * unit: p, hi: 1 - p} for each p, where unit
/// is the model's reporting unit. Throws InvalidArgument unless every p lies in
/// (0, 1) and a_fixed * unit lies in the space below hi.
std::vector<SweepRow> criterion_sweep(const Model& model, double a_fixed,
                                      std::span<const double> p_grid);

/// Indices (i, j) with phi_d[i] < phi_d[j] and phi_r[i] > phi_r[j], i.e. two
/// rows neither of which dominates the other; the first such pair found.
std::optional<std::pair<std::size_t, std::size_t>> find_tradeoff_pair(
    std::span<const SweepRow> rows);

}  // namespace optdesign

#endif  // OPTDESIGN_PARETO_HPP
