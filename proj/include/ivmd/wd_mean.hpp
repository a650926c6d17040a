#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "ivmd/deviation.hpp"
#include "ivmd/interval.hpp"
#include "ivmd/iv_deviation.hpp"

namespace ivmd {

/// Configuration of the w-preserving interval-valued wD-mean.
///
/// The interval deviation is the product form built from `deviation` and the
/// identity width combiner; output width is the minimum of the input widths.
/// `weights`, when non-empty, are positional (weighted D-mean) and must be
/// nonnegative with at least one positive entry.
struct WdMeanConfig {
  ModDevSpec deviation;
  OrderParams order{0.5, 1.0};
  std::vector<double> weights;
};

/// Pivot of the root equation. The first `k` sorted inputs take the positive
/// (M_p, R1) branch, the rest the negative (M_n, R2) branch. `k` is 1-based,
/// i.e. a count in [1, n].
struct SwitchPoint {
  std::size_t k = 1;
  std::vector<double> sorted_kas;
  std::vector<std::size_t> permutation;  // permutation[i] = input index of the i-th sorted element

  /// [kas_k, kas_{k+1}) as a closed pair; both ends equal when k == n.
  std::pair<double, double> bracket() const;
};

/// Greatest j with sum_i w_i * D(kas_i, kas_j) <= 0. `sorted_kas` must be
/// non-decreasing; `weights` (if any) aligned with it.
SwitchPoint switch_point(std::span<const double> sorted_kas, const ModDevSpec& spec,
                         std::span<const double> weights = {});

/// Unique root of the summed deviation inside the switch-point bracket.
/// Closed forms for R1 = R2 = 1-|y-x| and R1 = R2 = 1-|y^2-x^2|; the mixed
/// cases reduce to a quadratic whose bracketed root is selected.
double solve_ka(const SwitchPoint& sp, const ModDevSpec& spec, std::span<const double> weights = {});

UnitInterval wd_mean(std::span<const UnitInterval> inputs, const WdMeanConfig& cfg);

/// Ordered weighted variant: inputs sorted decreasingly, weight i attached to the
/// i-th largest. Requires weights.size() == inputs.size().
UnitInterval wd_mean_ordered(std::span<const UnitInterval> inputs, const WdMeanConfig& cfg);

inline constexpr double kDefaultBisectionTol = 1e-10;
inline constexpr int kMaxBisectionIterations = 200;

/// Root of F(Y) = sum_i w_i D(K_alpha(X_i), K_alpha(Y)) by bisection over
/// [min K_alpha, max K_alpha]; same width rule as wd_mean. Does not sort or use
/// the switch point. Requires D continuous and strictly increasing in y.
UnitInterval bisection_oracle(std::span<const UnitInterval> inputs, const WdMeanConfig& cfg,
                              double tol = kDefaultBisectionTol);

inline constexpr double kDefaultGridStep = 1e-3;

/// Grid approximation of the generic interval D-mean: candidates share width
/// min(w(X_i)) and sweep K_alpha over {0, step, ..., 1}; returns the
/// componentwise mean of sup{Y : sum D(X_i, Y) < 0} and inf{Y : sum D > 0}.
/// Empty sets resolve to the lowest / highest feasible candidate.
UnitInterval d_mean_generic(std::span<const UnitInterval> inputs, const IntervalDeviationFn& deviation,
                            const OrderParams& order, double grid_step = kDefaultGridStep);

}  // namespace ivmd
