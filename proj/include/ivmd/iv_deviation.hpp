#pragma once

#include <functional>

#include "ivmd/deviation.hpp"
#include "ivmd/interval.hpp"

namespace ivmd {

/// An element of L(R) kept as (K_alpha, width); endpoints are materialized on demand.
struct DeviationValue {
  double ka = 0.0;
  double width = 0.0;

  RealInterval to_interval(double alpha) const { return {ka - alpha * width, ka + (1.0 - alpha) * width}; }
};

/// w-preserving interval-valued moderate deviation:
///   K_alpha(D(X, Y)) = scalar(K_alpha(X), K_alpha(Y)),  w(D(X, Y)) = width_combine(w(X), w(Y)).
class IntervalDeviation {
 public:
  IntervalDeviation(ScalarDeviation scalar, OrderParams order);

  DeviationValue evaluate(const UnitInterval& x, const UnitInterval& y) const;
  RealInterval operator()(const UnitInterval& x, const UnitInterval& y) const {
    return evaluate(x, y).to_interval(order_.alpha());
  }

  const ScalarDeviation& scalar() const { return scalar_; }
  const OrderParams& order() const { return order_; }

 private:
  ScalarDeviation scalar_;
  OrderParams order_;
};

/// Any interval-valued deviation D: L([0,1])^2 -> L(R).
using IntervalDeviationFn = std::function<RealInterval(const UnitInterval&, const UnitInterval&)>;

/// Sign deviation: Z if Y > X, -Z if Y < X, [0,0] if Y == X (under `order`).
/// With a componentwise-mean inner aggregation its D-mean behaves as a median.
IntervalDeviationFn sign_deviation(UnitInterval z, OrderParams order);

}  // namespace ivmd
