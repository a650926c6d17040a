#pragma once

#include <string_view>
#include <variant>

namespace ivmd {

/// Restricted equivalence functions used to build moderate deviations.
enum class RefKind {
  kLinearAbs,   // 1 - |y - x|
  kSqDiff,      // 1 - (y - x)^2
  kAbsSqDiff,   // 1 - |y^2 - x^2|
};

double ref_eval(RefKind kind, double x, double y);
/// 1 - R(x, y), computed directly rather than by subtraction.
double ref_complement(RefKind kind, double x, double y);

/// Scalar moderate deviation with range [-m_n, m_p]:
///   D(x, y) = m_p * (1 - R1(x, y))   if x <= y
///   D(x, y) = m_n * (R2(x, y) - 1)   if x >  y
struct ModDevSpec {
  double m_p = 1.0;
  double m_n = 1.0;
  RefKind r1 = RefKind::kLinearAbs;
  RefKind r2 = RefKind::kLinearAbs;

  /// Throws kDomain unless m_p, m_n are finite and strictly positive.
  void validate() const;
};

/// The five (R1, R2) combinations, numbered 1..5 for cases (i)..(v).
ModDevSpec deviation_case(int which, double m_p, double m_n);
/// Named presets used by the BCI pipelines.
ModDevSpec md1_spec(double m_p, double m_n);  // R1 = R2 = 1 - |y - x|
ModDevSpec md2_spec(double m_p, double m_n);  // R1 = 1 - (y - x)^2, R2 = 1 - |y^2 - x^2|

/// Discontinuous deviation: y - x + eps (y > x), 0 (y == x), y - x - delta (y < x).
struct EpsDeltaSpec {
  double eps = 0.0;
  double delta = 0.0;
};

using ScalarDeviation = std::variant<ModDevSpec, EpsDeltaSpec>;

double md_eval(const ModDevSpec& spec, double x, double y);
double md_eval_eps_delta(const EpsDeltaSpec& spec, double x, double y);
double md_eval(const ScalarDeviation& dev, double x, double y);

/// Width combiner max(0, min(1, f(wy) - f(wx) + wy)) with f = identity.
double width_combine(double wx, double wy);

std::string_view to_string(RefKind kind);

}  // namespace ivmd
