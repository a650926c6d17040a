#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ivmd/interval.hpp"

namespace ivmd {

/// Ramp quantifier Q_{a,b}: 0 below a, 1 above b, linear in between. Requires a < b.
struct QuantifierParams {
  double a = 0.0;
  double b = 1.0;
};

inline constexpr QuantifierParams kOwa1{0.1, 0.5};
inline constexpr QuantifierParams kOwa2{0.5, 1.0};
inline constexpr QuantifierParams kOwa3{0.3, 0.8};

double quantifier(const QuantifierParams& q, double x);

/// w_i = Q(i/n) - Q((i-1)/n). Evaluated on the scaled axis t = i so that
/// breakpoints at multiples of 1/n stay exact; the weights telescope to 1.
std::vector<double> quantifier_weights(const QuantifierParams& q, std::size_t n);

/// Interval OWA: sort inputs increasingly under the order (ties by index) and
/// return sum_i w_i * X_sigma(i).
UnitInterval iv_owa(std::span<const UnitInterval> inputs, std::span<const double> weights, const OrderParams& ord);

}  // namespace ivmd
