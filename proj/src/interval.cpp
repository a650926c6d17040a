#include "ivmd/interval.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "ivmd/error.hpp"

namespace ivmd {

namespace {

constexpr double kReconstructionSlack = 1e-9;
constexpr double kWeightSlack = 1e-9;

std::string describe(double lo, double hi) {
  std::ostringstream os;
  os.precision(17);
  os << '[' << lo << ", " << hi << ']';
  return os.str();
}

}  // namespace

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDomain: return "DomainError";
    case ErrorCode::kOutOfUnitRange: return "OutOfUnitRange";
    case ErrorCode::kWeightSum: return "WeightSum";
    case ErrorCode::kWeightLength: return "WeightLength";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kNoRootInBracket: return "NoRootInBracket";
    case ErrorCode::kBandOutOfRange: return "BandOutOfRange";
    case ErrorCode::kTooShort: return "TooShort";
    case ErrorCode::kSingularCovariance: return "SingularCovariance";
    case ErrorCode::kNotEnoughClasses: return "NotEnoughClasses";
    case ErrorCode::kChannelMismatch: return "ChannelMismatch";
    case ErrorCode::kDegenerateFeatures: return "DegenerateFeatures";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kShape: return "ShapeError";
    case ErrorCode::kParse: return "ParseError";
    case ErrorCode::kChannelMissing: return "ChannelMissing";
    case ErrorCode::kLabelMismatch: return "LabelMismatch";
    case ErrorCode::kNotEnoughTrials: return "NotEnoughTrials";
    case ErrorCode::kConfig: return "ConfigError";
  }
  return "Error";
}

UnitInterval::UnitInterval(double lo, double hi) : lo_(lo), hi_(hi) {
  if (!(0.0 <= lo && lo <= hi && hi <= 1.0)) {
    throw Error(ErrorCode::kDomain, "not a subinterval of [0,1]: " + describe(lo, hi));
  }
}

RealInterval::RealInterval(double lo, double hi) : lo_(lo), hi_(hi) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || lo > hi) {
    throw Error(ErrorCode::kDomain, "invalid real interval " + describe(lo, hi));
  }
}

OrderParams::OrderParams(double alpha, double beta) : alpha_(alpha), beta_(beta) {
  if (!(alpha >= 0.0 && alpha <= 1.0 && beta >= 0.0 && beta <= 1.0)) {
    throw Error(ErrorCode::kDomain, "order parameters must lie in [0,1]");
  }
  if (alpha == beta) {
    throw Error(ErrorCode::kDomain, "order parameters must differ (alpha != beta)");
  }
}

UnitInterval from_ka_width(double ka, double w, double alpha) {
  if (!(w >= 0.0) || !std::isfinite(ka)) {
    throw Error(ErrorCode::kDomain, "width must be nonnegative and K finite");
  }
  double lo = ka - alpha * w;
  double hi = ka + (1.0 - alpha) * w;
  if (lo < -kReconstructionSlack || hi > 1.0 + kReconstructionSlack) {
    throw Error(ErrorCode::kOutOfUnitRange, "reconstruction " + describe(lo, hi) + " leaves [0,1]");
  }
  lo = std::clamp(lo, 0.0, 1.0);
  hi = std::clamp(hi, lo, 1.0);
  return {lo, hi};
}

UnitInterval weighted_interval_sum(std::span<const std::pair<double, UnitInterval>> terms) {
  double total = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  for (const auto& [w, x] : terms) {
    if (!(w >= 0.0)) throw Error(ErrorCode::kWeightSum, "negative weight");
    total += w;
    lo += w * x.lower();
    hi += w * x.upper();
  }
  if (std::abs(total - 1.0) > kWeightSlack) {
    throw Error(ErrorCode::kWeightSum, "weights sum to " + std::to_string(total));
  }
  lo = std::clamp(lo, 0.0, 1.0);
  hi = std::clamp(hi, lo, 1.0);
  return {lo, hi};
}

std::vector<std::size_t> order_permutation(std::span<const UnitInterval> xs, const OrderParams& ord) {
  std::vector<std::size_t> perm(xs.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
    return cmp_alpha_beta(xs[a], xs[b], ord) < 0;
  });
  return perm;
}

}  // namespace ivmd
