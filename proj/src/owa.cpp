#include "ivmd/owa.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "ivmd/error.hpp"

namespace ivmd {

namespace {

void validate(const QuantifierParams& q) {
  if (!(q.a >= 0.0 && q.b <= 1.0 && q.a < q.b)) {
    throw Error(ErrorCode::kDomain, "quantifier needs 0 <= a < b <= 1");
  }
}

}  // namespace

double quantifier(const QuantifierParams& q, double x) {
  validate(q);
  if (x < q.a) return 0.0;
  if (x > q.b) return 1.0;
  return (x - q.a) / (q.b - q.a);
}

std::vector<double> quantifier_weights(const QuantifierParams& q, std::size_t n) {
  validate(q);
  if (n == 0) throw Error(ErrorCode::kDomain, "quantifier weights need n >= 1");
  const double dn = static_cast<double>(n);
  const double start = q.a * dn;
  const double stop = q.b * dn;
  const double range = stop - start;
  auto ramp = [&](double t) { return std::clamp(t, start, stop) - start; };
  std::vector<double> w(n);
  for (std::size_t i = 1; i <= n; ++i) {
    w[i - 1] = (ramp(static_cast<double>(i)) - ramp(static_cast<double>(i - 1))) / range;
  }
  return w;
}

UnitInterval iv_owa(std::span<const UnitInterval> inputs, std::span<const double> weights, const OrderParams& ord) {
  if (inputs.size() != weights.size()) {
    throw Error(ErrorCode::kLengthMismatch, std::to_string(inputs.size()) + " inputs vs " +
                                                std::to_string(weights.size()) + " weights");
  }
  if (inputs.empty()) throw Error(ErrorCode::kEmptyInput, "OWA of an empty tuple");
  const auto perm = order_permutation(inputs, ord);
  std::vector<std::pair<double, UnitInterval>> terms;
  terms.reserve(inputs.size());
  for (std::size_t i = 0; i < perm.size(); ++i) terms.emplace_back(weights[i], inputs[perm[i]]);
  const UnitInterval sum = weighted_interval_sum(terms);
  // Equal inputs: the weights sum to 1 only up to rounding, return the input itself.
  if (inputs[perm.front()] == inputs[perm.back()]) return inputs.front();
  return sum;
}

}  // namespace ivmd
