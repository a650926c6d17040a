#pragma once

#include <compare>
#include <span>
#include <utility>
#include <vector>

namespace ivmd {

/// Closed subinterval [lower, upper] of [0, 1].
class UnitInterval {
 public:
  constexpr UnitInterval() = default;
  /// Throws Error(kDomain) unless 0 <= lo <= hi <= 1.
  UnitInterval(double lo, double hi);

  static UnitInterval point(double x) { return {x, x}; }

  double lower() const { return lo_; }
  double upper() const { return hi_; }
  double width() const { return hi_ - lo_; }

  friend bool operator==(const UnitInterval&, const UnitInterval&) = default;

 private:
  double lo_ = 0.0;
  double hi_ = 0.0;
};

/// Closed real interval with unrestricted endpoints; codomain of interval deviations.
class RealInterval {
 public:
  constexpr RealInterval() = default;
  /// Throws Error(kDomain) if lo > hi or either endpoint is not finite.
  RealInterval(double lo, double hi);
  RealInterval(const UnitInterval& x) : lo_(x.lower()), hi_(x.upper()) {}  // NOLINT

  double lower() const { return lo_; }
  double upper() const { return hi_; }
  double width() const { return hi_ - lo_; }

  RealInterval operator-() const { return {-hi_, -lo_}; }
  RealInterval& operator+=(const RealInterval& other) {
    lo_ += other.lo_;
    hi_ += other.hi_;
    return *this;
  }
  friend RealInterval operator+(RealInterval a, const RealInterval& b) { return a += b; }
  friend bool operator==(const RealInterval&, const RealInterval&) = default;

 private:
  double lo_ = 0.0;
  double hi_ = 0.0;
};

/// Parameters (alpha, beta) of the lexicographic admissible order; alpha != beta.
class OrderParams {
 public:
  OrderParams(double alpha, double beta);

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }

 private:
  double alpha_;
  double beta_;
};

/// K_a(X) = (1 - a) * lower + a * upper, evaluated as lower + a * width so that
/// degenerate intervals map exactly to their point and K_a is monotone in a.
inline double k_a(double lo, double hi, double a) { return lo + a * (hi - lo); }
inline double k_a(const UnitInterval& x, double a) { return k_a(x.lower(), x.upper(), a); }
inline double k_a(const RealInterval& x, double a) { return k_a(x.lower(), x.upper(), a); }

/// Lexicographic comparison on (K_alpha, K_beta). Exact double comparisons: an
/// epsilon would break transitivity.
template <class Interval>
std::strong_ordering cmp_alpha_beta(const Interval& x, const Interval& y, const OrderParams& ord) {
  const double xa = k_a(x, ord.alpha());
  const double ya = k_a(y, ord.alpha());
  if (xa < ya) return std::strong_ordering::less;
  if (xa > ya) return std::strong_ordering::greater;
  const double xb = k_a(x, ord.beta());
  const double yb = k_a(y, ord.beta());
  if (xb < yb) return std::strong_ordering::less;
  if (xb > yb) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

/// Strict-weak "less" under the admissible order, for sorting.
struct OrderLess {
  OrderParams ord;
  template <class Interval>
  bool operator()(const Interval& x, const Interval& y) const {
    return cmp_alpha_beta(x, y, ord) < 0;
  }
};

/// Product (componentwise) order; the admissible order extends it.
inline bool product_leq(const UnitInterval& x, const UnitInterval& y) {
  return x.lower() <= y.lower() && x.upper() <= y.upper();
}

/// Inverse of (K_alpha, width): [ka - alpha*w, ka + (1-alpha)*w]. Reconstruction
/// errors up to 1e-9 outside [0,1] are clamped; larger ones throw kOutOfUnitRange.
UnitInterval from_ka_width(double ka, double w, double alpha);

/// [sum w_i lo_i, sum w_i hi_i]; weights must be nonnegative and sum to 1 +- 1e-9.
UnitInterval weighted_interval_sum(std::span<const std::pair<double, UnitInterval>> terms);

/// Indices that sort `xs` increasingly under the order; ties keep input order.
std::vector<std::size_t> order_permutation(std::span<const UnitInterval> xs, const OrderParams& ord);

}  // namespace ivmd
