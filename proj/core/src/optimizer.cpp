#include "optdesign/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <random>
#include <sstream>

#include "optdesign/errors.hpp"

namespace optdesign {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kGolden = 0.6180339887498949;
constexpr int kWeightScan = 32;
constexpr std::size_t kTopPairs = 32;
constexpr int kRandomStarts = 16;
constexpr int kMaxMoves = 200000;

double uniform01(std::mt19937_64& rng) {
  // (0, 1), independent of the standard library's distribution algorithms
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

template <class F>
std::pair<double, double> golden_section(F&& f, double lo, double hi, double tol) {
  double c = hi - kGolden * (hi - lo);
  double d = lo + kGolden * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  while (hi - lo > tol) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - kGolden * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + kGolden * (hi - lo);
      fd = f(d);
    }
  }
  return fc < fd ? std::pair{c, fc} : std::pair{d, fd};
}

class WeightSearch {
 public:
  WeightSearch(const CriterionSpec& spec, double tol) : spec_(spec), tol_(tol) {}

  double value(std::span<const Vec2> fs, std::span<const double> w) const {
    InfoMatrix m;
    for (std::size_t i = 0; i < fs.size(); ++i) m += w[i] * InfoMatrix::outer(fs[i]);
    return evaluate(spec_, m);
  }

  // Optimal weights into w; returns the criterion value (+inf if none finite).
  double solve(std::span<const Vec2> fs, std::vector<double>& w) const {
    w.assign(fs.size(), 0.0);
    if (fs.size() == 1) {
      w[0] = 1.0;
      return value(fs, w);
    }
    if (fs.size() == 2) return solve_pair(fs[0], fs[1], w);
    return solve_simplex(fs, w);
  }

 private:
  double solve_pair(const Vec2& f0, const Vec2& f1, std::vector<double>& w) const {
    const InfoMatrix a = InfoMatrix::outer(f0);
    const InfoMatrix b = InfoMatrix::outer(f1);
    auto at = [&](double p) { return evaluate(spec_, (1.0 - p) * a + p * b); };

    int best_k = 0;
    double best_v = kInf;
    for (int k = 0; k <= kWeightScan; ++k) {
      const double v = at(static_cast<double>(k) / kWeightScan);
      if (v < best_v) {
        best_v = v;
        best_k = k;
      }
    }
    if (!std::isfinite(best_v)) return kInf;

    double best_p = static_cast<double>(best_k) / kWeightScan;
    const double lo = static_cast<double>(std::max(best_k - 1, 0)) / kWeightScan;
    const double hi = static_cast<double>(std::min(best_k + 1, kWeightScan)) / kWeightScan;
    const auto [p, v] = golden_section(at, lo, hi, tol_);
    if (v < best_v) {
      best_p = p;
      best_v = v;
    }
    w[0] = 1.0 - best_p;
    w[1] = best_p;
    return best_v;
  }

  double solve_simplex(std::span<const Vec2> fs, std::vector<double>& w) const {
    const std::size_t k = fs.size();
    std::fill(w.begin(), w.end(), 1.0 / static_cast<double>(k));
    double current = value(fs, w);
    std::vector<double> trial(w);
    for (int sweep = 0; sweep < 500; ++sweep) {
      const double start = current;
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
          // Move mass t from point i to point j.
          const double wi = w[i];
          const double wj = w[j];
          auto at = [&](double t) {
            trial = w;
            trial[i] = wi - t;
            trial[j] = wj + t;
            return value(fs, trial);
          };
          const auto [t, v] = golden_section(at, -wj, wi, tol_);
          double t_best = t;
          double v_best = v;
          for (double edge : {-wj, wi}) {
            const double ve = at(edge);
            if (ve < v_best) {
              v_best = ve;
              t_best = edge;
            }
          }
          if (v_best < current) {
            w[i] = wi - t_best;
            w[j] = wj + t_best;
            current = v_best;
          }
        }
      }
      if (!(start - current > tol_ * std::max(1.0, std::abs(current)))) break;
    }
    return current;
  }

  const CriterionSpec& spec_;
  double tol_;
};

struct Candidate {
  std::vector<double> x;
  std::vector<double> w;
  double value = kInf;
  std::optional<Design> design;
};

bool lexicographically_less(const Design& a, const Design& b) {
  const auto& pa = a.points();
  const auto& pb = b.points();
  return std::lexicographical_compare(
      pa.begin(), pa.end(), pb.begin(), pb.end(),
      [](const SupportPoint& l, const SupportPoint& r) {
        return l.x < r.x || (l.x == r.x && l.w < r.w);
      });
}

class SupportSearch {
 public:
  explicit SupportSearch(const OptimizeRequest& req)
      : req_(req),
        space_(req.model.space()),
        weights_(req.criterion, req.weight_tolerance),
        rng_(req.seed) {}

  OptimizeResult run() {
    const int res = req_.grid_resolution;
    grid_.resize(static_cast<std::size_t>(res));
    grid_f_.resize(grid_.size());
    for (int k = 0; k < res; ++k) {
      const double t = static_cast<double>(k) / (res - 1);
      grid_[k] = (k == res - 1) ? space_.hi() : space_.lo() + t * space_.width();
      grid_f_[k] = req_.model.regressor(grid_[k]);
    }

    std::vector<std::vector<double>> starts = pair_starts();
    if (!req_.criterion.convex()) {
      for (int s = 0; s < kRandomStarts; ++s) {
        std::vector<double> x(static_cast<std::size_t>(req_.n_support));
        for (auto& xi : x) xi = space_.lo() + uniform01(rng_) * space_.width();
        starts.push_back(std::move(x));
      }
    }

    std::vector<Candidate> refined;
    refined.reserve(starts.size());
    for (auto& x : starts) {
      Candidate c = polish(std::move(x));
      if (!std::isfinite(c.value)) continue;
      std::vector<SupportPoint> pts;
      for (std::size_t i = 0; i < c.x.size(); ++i) pts.push_back({c.x[i], c.w[i]});
      c.design = make_design(pts, space_);
      c.value = evaluate(req_.criterion, fim(req_.model, *c.design));
      if (std::isfinite(c.value)) refined.push_back(std::move(c));
    }
    if (refined.empty()) {
      throw OptimizationFailure("optimize_design: no design with a finite " +
                                std::string(req_.criterion.name()) + " value found");
    }

    const auto best = std::min_element(
        refined.begin(), refined.end(), [](const Candidate& a, const Candidate& b) {
          if (a.value != b.value) return a.value < b.value;
          return lexicographically_less(*a.design, *b.design);
        });

    OptimizeResult result{*best->design, best->value, std::nullopt, false, false, moves_};
    if (req_.criterion.convex()) {
      if (!fim(req_.model, result.design).singular()) {
        result.derivative_report =
            derivative_report(req_.criterion, req_.model, result.design, 1000);
        result.converged = certifies(*result.derivative_report, result.criterion_value);
      }
    } else if (req_.compat_singular_limit && result.design.lowest().w >= 1.0 - 1e-3) {
      result.design = one_point_design(result.design.lowest().x, space_);
      result.collapsed = true;
    }
    return result;
  }

 private:
  std::vector<std::vector<double>> pair_starts() {
    struct Scored {
      double value;
      std::size_t i;
      std::size_t j;
    };
    std::vector<Scored> scored;
    scored.reserve(grid_.size() * (grid_.size() - 1) / 2);
    std::vector<double> w;
    std::array<Vec2, 2> fs{};
    for (std::size_t i = 0; i < grid_.size(); ++i) {
      for (std::size_t j = i + 1; j < grid_.size(); ++j) {
        fs = {grid_f_[i], grid_f_[j]};
        const double v = weights_.solve(fs, w);
        if (std::isfinite(v)) scored.push_back({v, i, j});
      }
    }
    const std::size_t keep = std::min(kTopPairs, scored.size());
    std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(keep),
                      scored.end(), [](const Scored& a, const Scored& b) {
                        if (a.value != b.value) return a.value < b.value;
                        return std::tie(a.i, a.j) < std::tie(b.i, b.j);
                      });

    std::vector<std::vector<double>> starts;
    const std::size_t extra = static_cast<std::size_t>(req_.n_support) - 2;
    for (std::size_t s = 0; s < keep; ++s) {
      std::vector<double> x{grid_[scored[s].i], grid_[scored[s].j]};
      for (std::size_t e = 0; e < extra; ++e) {
        const auto k = static_cast<std::size_t>(uniform01(rng_) * static_cast<double>(grid_.size()));
        x.push_back(grid_[std::min(k, grid_.size() - 1)]);
      }
      starts.push_back(std::move(x));
    }
    return starts;
  }

  double solve_at(const std::vector<double>& x, std::vector<double>& w) const {
    std::vector<Vec2> fs;
    fs.reserve(x.size());
    for (double xi : x) fs.push_back(req_.model.regressor(xi));
    return weights_.solve(fs, w);
  }

  Candidate polish(std::vector<double> x) {
    Candidate c;
    c.x = std::move(x);
    c.value = solve_at(c.x, c.w);
    if (!std::isfinite(c.value)) return c;

    const double min_step = 1e-8 * space_.width();
    double step = space_.width() / (req_.grid_resolution - 1);
    std::vector<double> trial_w;
    int moves = 0;
    while (step >= min_step && moves < kMaxMoves) {
      bool improved = false;
      for (std::size_t i = 0; i < c.x.size() && !improved; ++i) {
        for (double dir : {1.0, -1.0}) {
          double xt = std::clamp(c.x[i] + dir * step, space_.lo(), space_.hi());
          if (space_.hi() - xt < min_step) xt = space_.hi();
          if (xt - space_.lo() < min_step) xt = space_.lo();
          if (xt == c.x[i]) continue;
          std::vector<double> trial_x = c.x;
          trial_x[i] = xt;
          const double vt = solve_at(trial_x, trial_w);
          // Moves that only win by rounding noise would drift off exact boundaries.
          if (vt < c.value - 1e-14 * std::abs(c.value)) {
            c.x = std::move(trial_x);
            c.w = trial_w;
            c.value = vt;
            improved = true;
            ++moves;
            break;
          }
        }
      }
      if (!improved) step *= 0.5;
    }
    moves_ += moves;
    return c;
  }

  const OptimizeRequest& req_;
  DesignSpace space_;
  WeightSearch weights_;
  std::mt19937_64 rng_;
  std::vector<double> grid_;
  std::vector<Vec2> grid_f_;
  int moves_ = 0;
};

}  // namespace

void OptimizeRequest::validate() const {
  if (n_support < 2 || n_support > 4) {
    throw InvalidArgument("optimize_design: n_support must lie in [2, 4]");
  }
  if (grid_resolution < 100) {
    throw InvalidArgument("optimize_design: grid_resolution must be at least 100");
  }
  if (!(weight_tolerance > 0.0 && weight_tolerance <= 1e-2)) {
    throw InvalidArgument("optimize_design: weight_tolerance must lie in (0, 1e-2]");
  }
}

std::vector<double> optimize_weights(const Model& model, std::span<const double> support,
                                     const CriterionSpec& criterion, double tolerance) {
  if (support.empty()) throw InvalidArgument("optimize_weights: empty support");
  if (!(tolerance > 0.0)) throw InvalidArgument("optimize_weights: tolerance must be positive");
  const DesignSpace& space = model.space();
  std::vector<Vec2> fs;
  for (std::size_t i = 0; i < support.size(); ++i) {
    if (!space.contains(support[i])) {
      throw InvalidArgument("optimize_weights: support point outside the design space");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (std::abs(support[i] - support[j]) <= space.merge_tolerance()) {
        throw InvalidArgument("optimize_weights: support points must be distinct");
      }
    }
    fs.push_back(model.regressor(support[i]));
  }
  std::vector<double> w;
  const double v = WeightSearch(criterion, tolerance).solve(fs, w);
  if (!std::isfinite(v)) {
    throw OptimizationFailure("optimize_weights: criterion is infinite for every weighting");
  }
  return w;
}

OptimizeResult optimize_design(const OptimizeRequest& request) {
  request.validate();
  return SupportSearch(request).run();
}

OptimizeResult c_optimal(const Model& model, const Vec2& c, int grid_resolution,
                         std::uint64_t seed) {
  OptimizeRequest req(model, CriterionSpec::c(c));
  req.grid_resolution = grid_resolution;
  req.seed = seed;
  return optimize_design(req);
}

}  // namespace optdesign
