#include "ivmd/deviation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ivmd/error.hpp"

namespace ivmd {

namespace {

void require_unit_pair(double x, double y) {
  if (!(x >= 0.0 && x <= 1.0 && y >= 0.0 && y <= 1.0)) {
    throw Error(ErrorCode::kDomain, "deviation arguments must lie in [0,1]");
  }
}

}  // namespace

double ref_complement(RefKind kind, double x, double y) {
  switch (kind) {
    case RefKind::kLinearAbs: return std::abs(y - x);
    case RefKind::kSqDiff: return (y - x) * (y - x);
    case RefKind::kAbsSqDiff: return std::abs(y * y - x * x);
  }
  throw Error(ErrorCode::kDomain, "unknown REF kind");
}

double ref_eval(RefKind kind, double x, double y) { return 1.0 - ref_complement(kind, x, y); }

void ModDevSpec::validate() const {
  if (!(std::isfinite(m_p) && m_p > 0.0 && std::isfinite(m_n) && m_n > 0.0)) {
    throw Error(ErrorCode::kDomain, "M_p and M_n must be finite and strictly positive");
  }
}

ModDevSpec deviation_case(int which, double m_p, double m_n) {
  using enum RefKind;
  switch (which) {
    case 1: return {m_p, m_n, kLinearAbs, kLinearAbs};
    case 2: return {m_p, m_n, kAbsSqDiff, kAbsSqDiff};
    case 3: return {m_p, m_n, kSqDiff, kSqDiff};
    case 4: return {m_p, m_n, kAbsSqDiff, kSqDiff};
    case 5: return {m_p, m_n, kSqDiff, kAbsSqDiff};
    default: throw Error(ErrorCode::kDomain, "deviation case must be 1..5");
  }
}

ModDevSpec md1_spec(double m_p, double m_n) { return deviation_case(1, m_p, m_n); }
ModDevSpec md2_spec(double m_p, double m_n) { return deviation_case(5, m_p, m_n); }

double md_eval(const ModDevSpec& spec, double x, double y) {
  spec.validate();
  require_unit_pair(x, y);
  if (x <= y) return spec.m_p * ref_complement(spec.r1, x, y);
  return -spec.m_n * ref_complement(spec.r2, x, y);
}

double md_eval_eps_delta(const EpsDeltaSpec& spec, double x, double y) {
  if (!(spec.eps >= 0.0 && spec.delta >= 0.0) || !std::isfinite(spec.eps) || !std::isfinite(spec.delta)) {
    throw Error(ErrorCode::kDomain, "eps and delta must be finite and >= 0");
  }
  require_unit_pair(x, y);
  if (y > x) return y - x + spec.eps;
  if (y < x) return y - x - spec.delta;
  return 0.0;
}

double md_eval(const ScalarDeviation& dev, double x, double y) {
  return std::visit(
      [&](const auto& spec) {
        if constexpr (std::is_same_v<std::decay_t<decltype(spec)>, ModDevSpec>) {
          return md_eval(spec, x, y);
        } else {
          return md_eval_eps_delta(spec, x, y);
        }
      },
      dev);
}

double width_combine(double wx, double wy) { return std::max(0.0, std::min(1.0, (wy - wx) + wy)); }

std::string_view to_string(RefKind kind) {
  switch (kind) {
    case RefKind::kLinearAbs: return "linear_abs";
    case RefKind::kSqDiff: return "sq_diff";
    case RefKind::kAbsSqDiff: return "abs_sq_diff";
  }
  return "unknown";
}

}  // namespace ivmd
