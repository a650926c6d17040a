#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "ivmd/implication.hpp"
#include "ivmd/interval.hpp"

namespace ivmd {

/// samples x sources x classes scores, row-major in that order.
template <class T>
class Cube {
 public:
  Cube() = default;
  Cube(std::size_t samples, std::size_t sources, std::size_t classes, T fill = T{})
      : samples_(samples), sources_(sources), classes_(classes), data_(samples * sources * classes, fill) {}

  std::size_t samples() const { return samples_; }
  std::size_t sources() const { return sources_; }
  std::size_t classes() const { return classes_; }

  T& at(std::size_t s, std::size_t src, std::size_t c) { return data_[index(s, src, c)]; }
  const T& at(std::size_t s, std::size_t src, std::size_t c) const { return data_[index(s, src, c)]; }

 private:
  std::size_t index(std::size_t s, std::size_t src, std::size_t c) const {
    return (s * sources_ + src) * classes_ + c;
  }

  std::size_t samples_ = 0;
  std::size_t sources_ = 0;
  std::size_t classes_ = 0;
  std::vector<T> data_;
};

using ProbabilityCube = Cube<double>;
using IntervalCube = Cube<UnitInterval>;

enum class AggregatorKind { kMean, kOwa1, kOwa2, kOwa3, kMd1, kMd2 };

struct Aggregator {
  AggregatorKind kind = AggregatorKind::kMean;
  double m_p = 1.0;  // MD variants only
  double m_n = 1.0;

  bool interval_valued() const { return kind != AggregatorKind::kMean; }
  bool is_md() const { return kind == AggregatorKind::kMd1 || kind == AggregatorKind::kMd2; }
};

std::string_view to_string(AggregatorKind kind);
AggregatorKind parse_aggregator(std::string_view name);

/// Which end of the admissible order wins the final decision on fused intervals.
/// The implications are antitone, so a confident class maps to a low interval.
enum class Decision { kOrderMin, kOrderMax };

std::string_view to_string(Decision d);
Decision parse_decision(std::string_view name);

enum class Framework { kTraditional, kMff };

std::string_view to_string(Framework f);
Framework parse_framework(std::string_view name);

struct FusionConfig {
  Aggregator aggregator;
  ImplicationKind implication = ImplicationKind::kLukasiewicz;
  double y_width = kDefaultIntervalWidth;
  OrderParams order{0.5, 1.0};
  Decision decision = Decision::kOrderMin;
};

/// Elementwise build_interval over a probability cube.
IntervalCube intervalize(const ProbabilityCube& probs, ImplicationKind implication, double y_width);

/// Aggregates one tuple of intervals with an interval-valued aggregator.
UnitInterval aggregate_intervals(std::span<const UnitInterval> inputs, const Aggregator& agg, const OrderParams& order);

/// One classifier per source (band). Per sample and class, aggregate across
/// sources, then pick the winning class; ties go to the lowest class index.
std::vector<int> fuse_traditional(const ProbabilityCube& cube, const FusionConfig& cfg);

/// Frequency phase: each cube is fused across its sources. Classifier phase:
/// the per-cube collective vectors are fused per class with the same aggregator.
std::vector<int> fuse_mff(std::span<const ProbabilityCube> cubes, const FusionConfig& cfg);

/// Dispatch; the traditional framework uses cubes.front().
std::vector<int> fuse(Framework framework, std::span<const ProbabilityCube> cubes, const FusionConfig& cfg);

/// correct / total; 0 for empty input.
double accuracy(std::span<const int> decisions, std::span<const int> labels);

struct MpMnSearch {
  std::size_t n_samples = 200;
  double lo = 1.0;
  double hi = 100.0;
  std::uint64_t seed = 0;
};

struct MpMnChoice {
  double m_p = 1.0;
  double m_n = 1.0;
  double accuracy = 0.0;
};

/// Random search over (M_p, M_n) ~ U[lo, hi]^2 maximizing accuracy of the fused
/// decisions on the given (training) cubes. The first-drawn pair wins ties.
MpMnChoice optimize_mp_mn(Framework framework, std::span<const ProbabilityCube> cubes, std::span<const int> labels,
                          const FusionConfig& cfg, const MpMnSearch& search);

}  // namespace ivmd
