#pragma once

// Test-side reference implementations. Deliberately written from the formulas
// in long double without calling into the library's solvers.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "ivmd/deviation.hpp"
#include "ivmd/interval.hpp"

namespace oracle {

using ld = long double;

inline ld ref(ivmd::RefKind kind, ld x, ld y) {
  switch (kind) {
    case ivmd::RefKind::kLinearAbs: return 1.0L - std::fabs(y - x);
    case ivmd::RefKind::kSqDiff: return 1.0L - (y - x) * (y - x);
    case ivmd::RefKind::kAbsSqDiff: return 1.0L - std::fabs(y * y - x * x);
  }
  return 0.0L;
}

inline ld deviation(const ivmd::ModDevSpec& s, ld x, ld y) {
  return x <= y ? s.m_p * (1.0L - ref(s.r1, x, y)) : s.m_n * (ref(s.r2, x, y) - 1.0L);
}

inline ld residual(const ivmd::ModDevSpec& s, const std::vector<double>& kas, const std::vector<double>& w, ld y) {
  ld sum = 0.0L;
  for (std::size_t i = 0; i < kas.size(); ++i) sum += (w.empty() ? 1.0L : w[i]) * deviation(s, kas[i], y);
  return sum;
}

/// Root of the summed deviation over [min, max] by plain long-double bisection.
inline double root(const ivmd::ModDevSpec& s, const std::vector<double>& kas, const std::vector<double>& w = {}) {
  ld lo = *std::min_element(kas.begin(), kas.end());
  ld hi = *std::max_element(kas.begin(), kas.end());
  for (int it = 0; it < 400 && hi - lo > 0; ++it) {
    const ld mid = (lo + hi) / 2;
    if (residual(s, kas, w, mid) <= 0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return static_cast<double>((lo + hi) / 2);
}

/// Lexicographic (K_alpha, K_beta) comparison straight from the endpoints.
inline int cmp(const ivmd::UnitInterval& x, const ivmd::UnitInterval& y, double alpha, double beta) {
  auto k = [](const ivmd::UnitInterval& v, double a) { return (1.0L - a) * v.lower() + a * v.upper(); };
  const ld xa = k(x, alpha), ya = k(y, alpha);
  if (xa != ya) return xa < ya ? -1 : 1;
  const ld xb = k(x, beta), yb = k(y, beta);
  if (xb != yb) return xb < yb ? -1 : 1;
  return 0;
}

}  // namespace oracle

namespace gen {

/// Random interval generator for the hand-rolled property tests.
class Intervals {
 public:
  explicit Intervals(std::uint64_t seed) : rng_(seed) {}

  double uniform(double a = 0.0, double b = 1.0) { return std::uniform_real_distribution<double>(a, b)(rng_); }
  std::size_t size(std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  ivmd::UnitInterval any() {
    double a = uniform(), b = uniform();
    if (a > b) std::swap(a, b);
    return {a, b};
  }

  ivmd::UnitInterval with_width(double w) {
    const double lo = uniform(0.0, 1.0 - w);
    return {lo, std::min(1.0, lo + w)};
  }

  /// n intervals sharing one width in [0, 0.5).
  std::vector<ivmd::UnitInterval> equal_width(std::size_t n) {
    const double w = uniform(0.0, 0.5);
    std::vector<ivmd::UnitInterval> xs;
    for (std::size_t i = 0; i < n; ++i) xs.push_back(with_width(w));
    return xs;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace gen
