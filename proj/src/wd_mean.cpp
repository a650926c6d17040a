#include "ivmd/wd_mean.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "ivmd/error.hpp"

namespace ivmd {

namespace {

// Roots this far outside the bracket are treated as solver inconsistency.
constexpr double kBracketSlack = 1e-8;
constexpr double kLinearLeadingTol = 1e-12;

double weight_at(std::span<const double> weights, std::size_t i) { return weights.empty() ? 1.0 : weights[i]; }

void validate_weights(std::span<const double> weights, std::size_t n) {
  if (weights.empty()) return;
  if (weights.size() != n) {
    throw Error(ErrorCode::kWeightLength,
                "expected " + std::to_string(n) + " weights, got " + std::to_string(weights.size()));
  }
  bool any_positive = false;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw Error(ErrorCode::kDomain, "weights must be finite and >= 0");
    any_positive = any_positive || w > 0.0;
  }
  if (!any_positive) throw Error(ErrorCode::kDomain, "weighting vector must be non-zero");
}

double min_width(std::span<const UnitInterval> inputs) {
  double w = inputs.front().width();
  for (const auto& x : inputs) w = std::min(w, x.width());
  return w;
}

bool all_identical(std::span<const UnitInterval> inputs) {
  return std::all_of(inputs.begin(), inputs.end(), [&](const UnitInterval& x) { return x == inputs.front(); });
}

double distance_to(double r, double lo, double hi) {
  if (r < lo) return lo - r;
  if (r > hi) return r - hi;
  return 0.0;
}

// Root of a*t^2 + b*t + c in [0, span] (t is the offset from the bracket start).
double bracketed_quadratic_root(double a, double b, double c, double span, double scale) {
  if (std::abs(a) <= kLinearLeadingTol * scale) {
    if (b == 0.0) throw Error(ErrorCode::kNoRootInBracket, "degenerate root equation");
    return -c / b;
  }
  double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) {
    if (disc < -1e-12 * (b * b + std::abs(4.0 * a * c))) {
      throw Error(ErrorCode::kNoRootInBracket, "root equation has no real solution");
    }
    disc = 0.0;
  }
  const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
  const double r1 = q / a;
  const double r2 = q != 0.0 ? c / q : r1;
  return distance_to(r1, 0.0, span) <= distance_to(r2, 0.0, span) ? r1 : r2;
}

}  // namespace

std::pair<double, double> SwitchPoint::bracket() const {
  const double lo = sorted_kas[k - 1];
  const double hi = k < sorted_kas.size() ? sorted_kas[k] : lo;
  return {lo, hi};
}

SwitchPoint switch_point(std::span<const double> sorted_kas, const ModDevSpec& spec,
                         std::span<const double> weights) {
  if (sorted_kas.empty()) throw Error(ErrorCode::kEmptyInput, "switch point of an empty tuple");
  spec.validate();
  validate_weights(weights, sorted_kas.size());
  if (!std::is_sorted(sorted_kas.begin(), sorted_kas.end())) {
    throw Error(ErrorCode::kDomain, "K_alpha values must be sorted non-decreasingly");
  }
  const std::size_t n = sorted_kas.size();
  SwitchPoint sp;
  sp.sorted_kas.assign(sorted_kas.begin(), sorted_kas.end());
  sp.permutation.resize(n);
  std::iota(sp.permutation.begin(), sp.permutation.end(), std::size_t{0});
  for (std::size_t j = 0; j < n; ++j) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += weight_at(weights, i) * md_eval(spec, sorted_kas[i], sorted_kas[j]);
    if (sum <= 0.0) sp.k = j + 1;
  }
  return sp;
}

double solve_ka(const SwitchPoint& sp, const ModDevSpec& spec, std::span<const double> weights) {
  const auto& kas = sp.sorted_kas;
  const std::size_t n = kas.size();
  if (n == 0 || sp.k < 1 || sp.k > n) throw Error(ErrorCode::kNoRootInBracket, "invalid switch point");
  const auto [lo, hi] = sp.bracket();
  // k == n collapses the bracket to the largest value, where the residual vanishes.
  if (lo == hi) return lo;

  const std::size_t k = sp.k;
  double root = 0.0;
  if (spec.r1 == RefKind::kLinearAbs && spec.r2 == RefKind::kLinearAbs) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double c = weight_at(weights, i) * (i < k ? spec.m_p : spec.m_n);
      num += c * kas[i];
      den += c;
    }
    root = num / den;
  } else if (spec.r1 == RefKind::kAbsSqDiff && spec.r2 == RefKind::kAbsSqDiff) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double c = weight_at(weights, i) * (i < k ? spec.m_p : spec.m_n);
      num += c * kas[i] * kas[i];
      den += c;
    }
    root = std::sqrt(num / den);
  } else {
    // Expand every term around the bracket start: t = y - lo, d = kas_i - lo.
    // Lower terms contribute +c * (1 - R1), upper terms -c * (1 - R2).
    double a = 0.0, b = 0.0, c0 = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const bool lower = i < k;
      const double c = weight_at(weights, i) * (lower ? spec.m_p : spec.m_n);
      const double d = kas[i] - lo;
      scale += c;
      switch (lower ? spec.r1 : spec.r2) {
        case RefKind::kLinearAbs:
          b += c;
          c0 -= c * d;
          break;
        case RefKind::kSqDiff: {
          const double s = lower ? 1.0 : -1.0;
          a += s * c;
          b -= s * 2.0 * c * d;
          c0 += s * c * d * d;
          break;
        }
        case RefKind::kAbsSqDiff:
          a += c;
          b += 2.0 * c * lo;
          c0 -= c * d * (kas[i] + lo);
          break;
      }
    }
    root = lo + bracketed_quadratic_root(a, b, c0, hi - lo, scale);
  }

  if (!std::isfinite(root) || distance_to(root, lo, hi) > kBracketSlack) {
    throw Error(ErrorCode::kNoRootInBracket,
                "root " + std::to_string(root) + " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + ")");
  }
  if (root < lo) return lo;
  if (root >= hi) return std::nextafter(hi, lo);
  return root;
}

UnitInterval wd_mean(std::span<const UnitInterval> inputs, const WdMeanConfig& cfg) {
  if (inputs.empty()) throw Error(ErrorCode::kEmptyInput, "wD-mean of an empty tuple");
  cfg.deviation.validate();
  validate_weights(cfg.weights, inputs.size());
  if (all_identical(inputs)) return inputs.front();

  const double alpha = cfg.order.alpha();
  const auto perm = order_permutation(inputs, cfg.order);
  std::vector<double> kas(inputs.size());
  std::vector<double> weights;
  for (std::size_t i = 0; i < perm.size(); ++i) kas[i] = k_a(inputs[perm[i]], alpha);
  if (!cfg.weights.empty()) {
    weights.resize(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) weights[i] = cfg.weights[perm[i]];
  }

  SwitchPoint sp = switch_point(kas, cfg.deviation, weights);
  sp.permutation = perm;
  const double ka = solve_ka(sp, cfg.deviation, weights);
  return from_ka_width(ka, min_width(inputs), alpha);
}

UnitInterval wd_mean_ordered(std::span<const UnitInterval> inputs, const WdMeanConfig& cfg) {
  if (inputs.empty()) throw Error(ErrorCode::kEmptyInput, "ordered wD-mean of an empty tuple");
  if (cfg.weights.size() != inputs.size()) {
    throw Error(ErrorCode::kWeightLength, "ordered wD-mean needs one weight per input");
  }
  // Increasing permutation; the i-th largest sits at position n-1-i.
  const auto perm = order_permutation(inputs, cfg.order);
  const std::size_t n = inputs.size();
  WdMeanConfig positional = cfg;
  for (std::size_t j = 0; j < n; ++j) positional.weights[perm[j]] = cfg.weights[n - 1 - j];
  return wd_mean(inputs, positional);
}

UnitInterval bisection_oracle(std::span<const UnitInterval> inputs, const WdMeanConfig& cfg, double tol) {
  if (inputs.empty()) throw Error(ErrorCode::kEmptyInput, "bisection over an empty tuple");
  cfg.deviation.validate();
  validate_weights(cfg.weights, inputs.size());
  const double alpha = cfg.order.alpha();

  std::vector<double> kas;
  kas.reserve(inputs.size());
  for (const auto& x : inputs) kas.push_back(k_a(x, alpha));
  auto residual = [&](double y) {
    double sum = 0.0;
    for (std::size_t i = 0; i < kas.size(); ++i) sum += weight_at(cfg.weights, i) * md_eval(cfg.deviation, kas[i], y);
    return sum;
  };

  double lo = *std::min_element(kas.begin(), kas.end());
  double hi = *std::max_element(kas.begin(), kas.end());
  for (int it = 0; it < kMaxBisectionIterations && lo < hi; ++it) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    const double f = residual(mid);
    if (hi - lo <= tol && std::abs(f) <= tol) break;
    if (f <= 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return from_ka_width(lo + 0.5 * (hi - lo), min_width(inputs), alpha);
}

UnitInterval d_mean_generic(std::span<const UnitInterval> inputs, const IntervalDeviationFn& deviation,
                            const OrderParams& order, double grid_step) {
  if (inputs.empty()) throw Error(ErrorCode::kEmptyInput, "D-mean of an empty tuple");
  if (!(grid_step > 0.0 && grid_step <= 1.0)) throw Error(ErrorCode::kDomain, "grid_step must lie in (0, 1]");
  // Idempotency is exact rather than grid-limited.
  if (all_identical(inputs)) return inputs.front();

  const double alpha = order.alpha();
  const double w = min_width(inputs);
  const double ka_min = alpha * w;
  const double ka_max = 1.0 - (1.0 - alpha) * w;
  const UnitInterval bottom = from_ka_width(ka_min, w, alpha);
  const UnitInterval top = from_ka_width(ka_max, w, alpha);

  // Candidates share one width, so the admissible order reduces to K_alpha order
  // and the sup / inf are the extreme qualifying grid points.
  UnitInterval sup = bottom;
  UnitInterval inf = top;
  bool have_inf = false;
  const RealInterval zero;
  const auto steps = static_cast<long>(std::llround(1.0 / grid_step));
  for (long i = 0; i <= steps; ++i) {
    const double ka = std::min(1.0, static_cast<double>(i) * grid_step);
    if (ka < ka_min - 1e-12 || ka > ka_max + 1e-12) continue;
    const UnitInterval y = from_ka_width(std::clamp(ka, ka_min, ka_max), w, alpha);
    RealInterval total;
    for (const auto& x : inputs) total += deviation(x, y);
    const auto c = cmp_alpha_beta(total, zero, order);
    if (c < 0) {
      sup = y;
    } else if (c > 0 && !have_inf) {
      inf = y;
      have_inf = true;
    }
  }
  const double lo = 0.5 * (sup.lower() + inf.lower());
  const double hi = 0.5 * (sup.upper() + inf.upper());
  return {lo, std::max(lo, hi)};
}

}  // namespace ivmd
