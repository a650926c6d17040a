#include "ivmd/iv_deviation.hpp"

#include "ivmd/error.hpp"

namespace ivmd {

IntervalDeviation::IntervalDeviation(ScalarDeviation scalar, OrderParams order)
    : scalar_(std::move(scalar)), order_(order) {
  if (const auto* spec = std::get_if<ModDevSpec>(&scalar_)) spec->validate();
  if (const auto* spec = std::get_if<EpsDeltaSpec>(&scalar_)) {
    if (!(spec->eps >= 0.0 && spec->delta >= 0.0)) {
      throw Error(ErrorCode::kDomain, "eps and delta must be nonnegative");
    }
  }
}

DeviationValue IntervalDeviation::evaluate(const UnitInterval& x, const UnitInterval& y) const {
  const double alpha = order_.alpha();
  return {md_eval(scalar_, k_a(x, alpha), k_a(y, alpha)), width_combine(x.width(), y.width())};
}

IntervalDeviationFn sign_deviation(UnitInterval z, OrderParams order) {
  if (cmp_alpha_beta(z, UnitInterval{}, order) <= 0) {
    throw Error(ErrorCode::kDomain, "sign deviation needs Z strictly above [0,0]");
  }
  return [z, order](const UnitInterval& x, const UnitInterval& y) -> RealInterval {
    const auto c = cmp_alpha_beta(y, x, order);
    if (c > 0) return z;
    if (c < 0) return -RealInterval(z);
    return {};
  };
}

}  // namespace ivmd
