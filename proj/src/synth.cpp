#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "ivmd/experiment.hpp"

namespace ivmd {

namespace {

struct ClassPattern {
  double freq;
  std::size_t ch_a;
  std::size_t ch_b;
};

constexpr ClassPattern kPatterns[] = {{10.0, 0, 1}, {22.0, 2, 3}, {6.0, 0, 2}, {27.0, 1, 3}};

}  // namespace

double synth_class_frequency(int cls) {
  if (cls < 0 || cls > 3) throw Error(ErrorCode::kDomain, "synthetic classes are 0..3");
  return kPatterns[cls].freq;
}

TrialTensor synth_generate(const SynthParams& p) {
  if (p.n_trials == 0 || p.channels == 0 || p.samples == 0 || !(p.sample_rate > 0.0)) {
    throw Error(ErrorCode::kDomain, "synthetic data needs positive dimensions and sample rate");
  }
  if (p.classes < 1 || p.classes > 4) throw Error(ErrorCode::kDomain, "synthetic data supports 1..4 classes");
  if (!(p.snr >= 0.0)) throw Error(ErrorCode::kDomain, "snr must be >= 0");

  const bool noiseless = std::isinf(p.snr);
  // Sine power A^2 / 2 equals snr times the unit noise power.
  const double amplitude = noiseless ? 1.0 : std::sqrt(2.0 * p.snr);
  std::mt19937_64 rng(p.seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  std::uniform_real_distribution<double> jitter(0.8, 1.2);

  TrialTensor out;
  out.sample_rate = p.sample_rate;
  const auto channels = static_cast<Eigen::Index>(p.channels);
  const auto samples = static_cast<Eigen::Index>(p.samples);
  for (std::size_t t = 0; t < p.n_trials; ++t) {
    const int cls = static_cast<int>(t % static_cast<std::size_t>(p.classes));
    Eigen::MatrixXd x(channels, samples);
    for (Eigen::Index c = 0; c < channels; ++c) {
      for (Eigen::Index s = 0; s < samples; ++s) x(c, s) = noiseless ? 0.0 : noise(rng);
    }
    const ClassPattern& pat = kPatterns[cls];
    for (const std::size_t ch : {pat.ch_a % p.channels, pat.ch_b % p.channels}) {
      const double a = amplitude * jitter(rng);
      const double ph = phase(rng);
      const double omega = 2.0 * std::numbers::pi * pat.freq / p.sample_rate;
      for (Eigen::Index s = 0; s < samples; ++s) {
        x(static_cast<Eigen::Index>(ch), s) += a * std::sin(omega * static_cast<double>(s) + ph);
      }
    }
    out.trials.push_back(std::move(x));
    out.labels.push_back(cls);
  }
  return out;
}

std::vector<Split> partition(std::span<const int> labels, std::size_t n_partitions, double fraction,
                             std::uint64_t seed) {
  if (!(fraction > 0.0 && fraction < 1.0)) throw Error(ErrorCode::kConfig, "train fraction must be in (0, 1)");
  std::map<int, std::vector<std::size_t>> by_class;
  for (std::size_t i = 0; i < labels.size(); ++i) by_class[labels[i]].push_back(i);
  for (const auto& [cls, idx] : by_class) {
    if (idx.size() < 2) {
      throw Error(ErrorCode::kNotEnoughTrials, "class " + std::to_string(cls) + " has fewer than two trials");
    }
  }

  std::vector<Split> splits;
  splits.reserve(n_partitions);
  for (std::size_t p = 0; p < n_partitions; ++p) {
    std::mt19937_64 rng(seed + p);
    Split split;
    for (auto [cls, idx] : by_class) {
      std::shuffle(idx.begin(), idx.end(), rng);
      const auto n = idx.size();
      const auto n_train = std::clamp<std::size_t>(static_cast<std::size_t>(std::llround(fraction * double(n))), 1, n - 1);
      split.train.insert(split.train.end(), idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(n_train));
      split.test.insert(split.test.end(), idx.begin() + static_cast<std::ptrdiff_t>(n_train), idx.end());
    }
    std::sort(split.train.begin(), split.train.end());
    std::sort(split.test.begin(), split.test.end());
    splits.push_back(std::move(split));
  }
  return splits;
}

}  // namespace ivmd
