#include "optdesign/michaelis_menten.hpp"

#include <cmath>
#include <sstream>

#include "optdesign/criteria.hpp"
#include "optdesign/errors.hpp"
#include "optdesign/optimizer.hpp"

namespace optdesign {

void MMParams::validate() const {
  auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!positive(V) || !positive(K) || !positive(b)) {
    throw InvalidArgument("Michaelis-Menten parameters V, K and b must be positive");
  }
  if (!std::isfinite(eps) || eps < 0.0) {
    throw InvalidArgument("Michaelis-Menten eps must be nonnegative");
  }
  if (!(lower() < upper())) {
    std::ostringstream msg;
    msg << "Michaelis-Menten design space is empty: eps = " << eps << ", b = " << b;
    throw InvalidArgument(msg.str());
  }
}

DesignSpace MMParams::space() const {
  validate();
  return DesignSpace(lower(), upper());
}

Vec2 mm_regressor(const MMParams& params, double x) {
  const double denom = params.K + x;
  if (x < 0.0 || !(denom > 0.0)) {
    throw InvalidArgument("mm_regressor: need x >= 0 and K + x > 0");
  }
  return {x / denom, -params.V * x / (denom * denom)};
}

Model mm_model(const MMParams& params) {
  const DesignSpace space = params.space();
  return Model(
      "michaelis_menten", space, [params](double x) { return mm_regressor(params, x); },
      {params.V, params.K}, {"V", "K"}, params.K);
}

double mm_d_lower_point(const MMParams& params) noexcept {
  return params.b / (2.0 + params.b) * params.K;
}

MmDOptimal mm_d_optimal(const MMParams& params) {
  const Model model = mm_model(params);
  const double lower = mm_d_lower_point(params);
  if (model.space().contains(lower)) {
    return {make_design({{lower, 0.5}, {params.upper(), 0.5}}, model.space()), false};
  }
  OptimizeResult result = optimize_design(OptimizeRequest(model, CriterionSpec::d()));
  return {std::move(result.design), true};
}

}  // namespace optdesign
