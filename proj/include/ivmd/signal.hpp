#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace ivmd {

/// EEG trials, each a channels x samples matrix, plus class labels (0-based).
struct TrialTensor {
  std::vector<Eigen::MatrixXd> trials;
  std::vector<int> labels;
  double sample_rate = 0.0;

  std::size_t num_trials() const { return trials.size(); }
  std::size_t num_channels() const { return trials.empty() ? 0 : static_cast<std::size_t>(trials.front().rows()); }
  std::size_t num_samples() const { return trials.empty() ? 0 : static_cast<std::size_t>(trials.front().cols()); }

  /// Throws kShape on ragged trials or a label count mismatch, kDomain on a bad rate.
  void validate() const;
  TrialTensor subset(std::span<const std::size_t> indices) const;
};

struct BandSpec {
  std::string name;
  double lo = 0.0;  // Hz
  double hi = 0.0;  // Hz
};

/// delta, theta, alpha, beta, all.
std::vector<BandSpec> standard_bands();
/// delta, theta, alpha, beta, smr, all.
std::vector<BandSpec> standard_bands_with_smr();
/// Named band (delta, theta, alpha, beta, smr, all) or "name:lo-hi". Throws kConfig.
BandSpec parse_band(const std::string& text);

inline constexpr std::size_t kWindowSize = 50;
inline constexpr std::size_t kWindowHop = 25;

/// Band-limited surrogate signal. Each channel is cut into 50-sample windows
/// hopped by 25; every window is Fourier transformed, bins outside [lo, hi] are
/// zeroed and the window is transformed back. Windows are concatenated, so the
/// output has n_windows * 50 samples. Rectangular window.
TrialTensor band_features(const TrialTensor& trials, const BandSpec& band);

/// Common spatial patterns. Binary problems use one pairing (first class vs
/// second); multiclass problems use one-vs-rest pairings.
struct CspModel {
  std::vector<int> classes;
  std::vector<Eigen::MatrixXd> filters;      // per pairing: components x channels
  std::vector<Eigen::VectorXd> eigenvalues;  // per pairing, aligned with filter rows
  std::size_t channels = 0;

  std::size_t num_features() const;
};

/// `n_components` is split as evenly as possible across pairings (earlier
/// pairings take the remainder) and capped at the channel count per pairing.
/// Filters alternate between the top and bottom of the generalized spectrum of
/// (class covariance, total covariance). The total covariance gets a ridge of
/// 1e-6 * trace / channels.
CspModel csp_fit(const TrialTensor& trials, std::size_t n_components);

/// trials x features matrix of log-variances of the projected signals
/// (variance floored at 1e-12).
Eigen::MatrixXd csp_transform(const CspModel& model, const TrialTensor& trials);

}  // namespace ivmd
