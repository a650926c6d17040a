#include "ivmd/signal.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <string>

#include "ivmd/error.hpp"

namespace ivmd {

namespace {

constexpr double kCspRidge = 1e-6;
constexpr double kVarianceFloor = 1e-12;
constexpr double kAbsoluteRidgeFloor = 1e-12;

// FFTW planning is not thread-safe; execution on a private plan is.
std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

// Zeroes out-of-band DFT bins of fixed-length real windows.
class BandLimiter {
 public:
  BandLimiter(const BandSpec& band, double sample_rate, std::size_t n)
      : n_(n),
        in_(fftw_alloc_real(n)),
        out_(fftw_alloc_real(n)),
        spectrum_(fftw_alloc_complex(n / 2 + 1)),
        keep_(n / 2 + 1, false) {
    for (std::size_t k = 0; k < keep_.size(); ++k) {
      const double f = static_cast<double>(k) * sample_rate / static_cast<double>(n);
      keep_[k] = f >= band.lo - 1e-9 && f <= band.hi + 1e-9;
    }
    std::lock_guard lock(fftw_planner_mutex());
    forward_ = fftw_plan_dft_r2c_1d(static_cast<int>(n), in_, spectrum_, FFTW_ESTIMATE);
    inverse_ = fftw_plan_dft_c2r_1d(static_cast<int>(n), spectrum_, out_, FFTW_ESTIMATE);
  }
  BandLimiter(const BandLimiter&) = delete;
  BandLimiter& operator=(const BandLimiter&) = delete;
  ~BandLimiter() {
    std::lock_guard lock(fftw_planner_mutex());
    fftw_destroy_plan(forward_);
    fftw_destroy_plan(inverse_);
    fftw_free(in_);
    fftw_free(out_);
    fftw_free(spectrum_);
  }

  template <class In, class Out>
  void apply(const In& window, Out&& result) {
    for (std::size_t i = 0; i < n_; ++i) in_[i] = window(static_cast<Eigen::Index>(i));
    fftw_execute(forward_);
    for (std::size_t k = 0; k < keep_.size(); ++k) {
      if (!keep_[k]) {
        spectrum_[k][0] = 0.0;
        spectrum_[k][1] = 0.0;
      }
    }
    // c2r overwrites its input; the spectrum is rebuilt on every call.
    fftw_execute(inverse_);
    const double scale = 1.0 / static_cast<double>(n_);
    for (std::size_t i = 0; i < n_; ++i) result(static_cast<Eigen::Index>(i)) = out_[i] * scale;
  }

 private:
  std::size_t n_;
  double* in_;
  double* out_;
  fftw_complex* spectrum_;
  std::vector<bool> keep_;
  fftw_plan forward_ = nullptr;
  fftw_plan inverse_ = nullptr;
};

Eigen::MatrixXd trial_covariance(const Eigen::MatrixXd& x) {
  const Eigen::MatrixXd centered = x.colwise() - x.rowwise().mean();
  const double denom = std::max<double>(1.0, static_cast<double>(x.cols()) - 1.0);
  return centered * centered.transpose() / denom;
}

double ridge_for(const Eigen::MatrixXd& cov) {
  const double r = kCspRidge * cov.trace() / static_cast<double>(cov.rows());
  return r > kAbsoluteRidgeFloor ? r : kAbsoluteRidgeFloor;
}

}  // namespace

void TrialTensor::validate() const {
  if (!(sample_rate > 0.0)) throw Error(ErrorCode::kDomain, "sample rate must be positive");
  if (labels.size() != trials.size()) {
    throw Error(ErrorCode::kShape, std::to_string(labels.size()) + " labels for " + std::to_string(trials.size()) +
                                       " trials");
  }
  for (const auto& t : trials) {
    if (static_cast<std::size_t>(t.rows()) != num_channels() || static_cast<std::size_t>(t.cols()) != num_samples()) {
      throw Error(ErrorCode::kShape, "trials must share channel and sample counts");
    }
  }
}

TrialTensor TrialTensor::subset(std::span<const std::size_t> indices) const {
  TrialTensor out;
  out.sample_rate = sample_rate;
  out.trials.reserve(indices.size());
  out.labels.reserve(indices.size());
  for (std::size_t i : indices) {
    out.trials.push_back(trials.at(i));
    out.labels.push_back(labels.at(i));
  }
  return out;
}

std::vector<BandSpec> standard_bands() {
  return {{"delta", 1, 3}, {"theta", 4, 7}, {"alpha", 8, 13}, {"beta", 14, 30}, {"all", 1, 30}};
}

std::vector<BandSpec> standard_bands_with_smr() {
  return {{"delta", 1, 3}, {"theta", 4, 7}, {"alpha", 8, 13}, {"beta", 14, 30}, {"smr", 13, 15}, {"all", 1, 30}};
}

BandSpec parse_band(const std::string& text) {
  static const std::map<std::string, BandSpec> named = [] {
    std::map<std::string, BandSpec> m;
    for (const auto& b : standard_bands_with_smr()) m.emplace(b.name, b);
    return m;
  }();
  if (auto it = named.find(text); it != named.end()) return it->second;
  const auto colon = text.find(':');
  const auto dash = text.find('-', colon == std::string::npos ? 0 : colon);
  if (colon == std::string::npos || dash == std::string::npos) {
    throw Error(ErrorCode::kConfig, "unknown band '" + text + "' (use a preset name or name:lo-hi)");
  }
  try {
    BandSpec b{text.substr(0, colon), std::stod(text.substr(colon + 1, dash - colon - 1)), std::stod(text.substr(dash + 1))};
    if (!(b.lo > 0.0 && b.lo <= b.hi)) throw Error(ErrorCode::kConfig, "band needs 0 < lo <= hi: " + text);
    return b;
  } catch (const std::logic_error&) {
    throw Error(ErrorCode::kConfig, "malformed band '" + text + "'");
  }
}

TrialTensor band_features(const TrialTensor& trials, const BandSpec& band) {
  trials.validate();
  if (!(band.lo > 0.0 && band.lo <= band.hi && band.hi <= trials.sample_rate / 2.0)) {
    throw Error(ErrorCode::kBandOutOfRange, "band '" + band.name + "' not within (0, " +
                                                std::to_string(trials.sample_rate / 2.0) + "] Hz");
  }
  const std::size_t samples = trials.num_samples();
  if (samples < kWindowSize) {
    throw Error(ErrorCode::kTooShort, std::to_string(samples) + " samples, need at least " +
                                          std::to_string(kWindowSize));
  }
  const std::size_t windows = (samples - kWindowSize) / kWindowHop + 1;
  const auto channels = static_cast<Eigen::Index>(trials.num_channels());

  BandLimiter limiter(band, trials.sample_rate, kWindowSize);
  TrialTensor out;
  out.sample_rate = trials.sample_rate;
  out.labels = trials.labels;
  out.trials.reserve(trials.num_trials());
  const auto n = static_cast<Eigen::Index>(kWindowSize);
  for (const auto& trial : trials.trials) {
    Eigen::MatrixXd filtered(channels, static_cast<Eigen::Index>(windows * kWindowSize));
    for (Eigen::Index ch = 0; ch < channels; ++ch) {
      for (std::size_t w = 0; w < windows; ++w) {
        const auto start = static_cast<Eigen::Index>(w * kWindowHop);
        const auto dest = static_cast<Eigen::Index>(w * kWindowSize);
        limiter.apply(trial.row(ch).segment(start, n), filtered.row(ch).segment(dest, n));
      }
    }
    out.trials.push_back(std::move(filtered));
  }
  return out;
}

std::size_t CspModel::num_features() const {
  std::size_t total = 0;
  for (const auto& f : filters) total += static_cast<std::size_t>(f.rows());
  return total;
}

CspModel csp_fit(const TrialTensor& trials, std::size_t n_components) {
  trials.validate();
  if (n_components == 0) throw Error(ErrorCode::kDomain, "CSP needs at least one component");
  std::map<int, std::vector<std::size_t>> by_class;
  for (std::size_t i = 0; i < trials.labels.size(); ++i) by_class[trials.labels[i]].push_back(i);
  if (by_class.size() < 2) throw Error(ErrorCode::kNotEnoughClasses, "CSP needs at least two classes");
  for (const auto& [label, idx] : by_class) {
    if (idx.size() < 2) {
      throw Error(ErrorCode::kNotEnoughClasses, "class " + std::to_string(label) + " has fewer than two trials");
    }
  }

  const auto channels = static_cast<Eigen::Index>(trials.num_channels());
  std::vector<Eigen::MatrixXd> covariances;
  covariances.reserve(trials.num_trials());
  for (const auto& t : trials.trials) covariances.push_back(trial_covariance(t));

  CspModel model;
  model.channels = static_cast<std::size_t>(channels);
  for (const auto& [label, idx] : by_class) model.classes.push_back(label);

  const std::size_t pairings = by_class.size() == 2 ? 1 : by_class.size();
  const std::size_t base = n_components / pairings;
  const std::size_t extra = n_components % pairings;

  for (std::size_t p = 0; p < pairings; ++p) {
    const int target = model.classes[p];
    Eigen::MatrixXd in_class = Eigen::MatrixXd::Zero(channels, channels);
    Eigen::MatrixXd rest = Eigen::MatrixXd::Zero(channels, channels);
    std::size_t n_in = 0, n_rest = 0;
    for (std::size_t i = 0; i < covariances.size(); ++i) {
      if (trials.labels[i] == target) {
        in_class += covariances[i];
        ++n_in;
      } else {
        rest += covariances[i];
        ++n_rest;
      }
    }
    in_class /= static_cast<double>(n_in);
    rest /= static_cast<double>(n_rest);
    Eigen::MatrixXd total = in_class + rest;
    total.diagonal().array() += ridge_for(total);

    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(in_class, total);
    if (solver.info() != Eigen::Success) {
      throw Error(ErrorCode::kSingularCovariance, "generalized eigenproblem failed for class " + std::to_string(target));
    }

    const std::size_t budget = std::min<std::size_t>(base + (p < extra ? 1 : 0), static_cast<std::size_t>(channels));
    if (budget == 0) continue;
    // Eigenvalues ascend; alternate top, bottom, second top, second bottom, ...
    std::vector<Eigen::Index> picks;
    Eigen::Index top = channels - 1, bottom = 0;
    while (picks.size() < budget) {
      picks.push_back(top--);
      if (picks.size() < budget) picks.push_back(bottom++);
    }
    Eigen::MatrixXd filter(static_cast<Eigen::Index>(budget), channels);
    Eigen::VectorXd values(static_cast<Eigen::Index>(budget));
    for (std::size_t r = 0; r < picks.size(); ++r) {
      filter.row(static_cast<Eigen::Index>(r)) = solver.eigenvectors().col(picks[r]).transpose();
      values(static_cast<Eigen::Index>(r)) = solver.eigenvalues()(picks[r]);
    }
    model.filters.push_back(std::move(filter));
    model.eigenvalues.push_back(std::move(values));
  }
  return model;
}

Eigen::MatrixXd csp_transform(const CspModel& model, const TrialTensor& trials) {
  if (!trials.trials.empty() && trials.num_channels() != model.channels) {
    throw Error(ErrorCode::kChannelMismatch, "model expects " + std::to_string(model.channels) + " channels, got " +
                                                 std::to_string(trials.num_channels()));
  }
  Eigen::MatrixXd features(static_cast<Eigen::Index>(trials.num_trials()),
                           static_cast<Eigen::Index>(model.num_features()));
  for (std::size_t t = 0; t < trials.num_trials(); ++t) {
    Eigen::Index col = 0;
    for (const auto& filter : model.filters) {
      const Eigen::MatrixXd projected = filter * trials.trials[t];
      const Eigen::MatrixXd centered = projected.colwise() - projected.rowwise().mean();
      const double denom = std::max<double>(1.0, static_cast<double>(projected.cols()) - 1.0);
      for (Eigen::Index r = 0; r < projected.rows(); ++r) {
        const double var = centered.row(r).squaredNorm() / denom;
        features(static_cast<Eigen::Index>(t), col++) = std::log(std::max(var, kVarianceFloor));
      }
    }
  }
  return features;
}

}  // namespace ivmd
