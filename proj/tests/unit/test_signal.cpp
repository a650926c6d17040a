#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "ivmd/error.hpp"
#include "ivmd/signal.hpp"

using namespace ivmd;

namespace {

constexpr double kRate = 250.0;

TrialTensor single(const Eigen::MatrixXd& x, double rate = kRate) {
  TrialTensor t;
  t.trials.push_back(x);
  t.labels.push_back(0);
  t.sample_rate = rate;
  return t;
}

Eigen::MatrixXd tone(double freq, std::size_t samples, double rate = kRate, double phase = 0.3) {
  Eigen::MatrixXd x(1, static_cast<Eigen::Index>(samples));
  for (Eigen::Index s = 0; s < x.cols(); ++s) {
    x(0, s) = std::sin(2.0 * std::numbers::pi * freq * static_cast<double>(s) / rate + phase);
  }
  return x;
}

double power(const Eigen::MatrixXd& x) { return x.squaredNorm() / static_cast<double>(x.size()); }

// Direct O(n^2) DFT mask-and-invert of one window.
std::vector<double> naive_band_limit(const std::vector<double>& w, double lo, double hi, double rate) {
  const std::size_t n = w.size();
  std::vector<std::complex<double>> spec(n);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t t = 0; t < n; ++t) {
      spec[k] += w[t] * std::polar(1.0, -2.0 * std::numbers::pi * double(k * t) / double(n));
    }
    // Bin k and its mirror n-k share the frequency min(k, n-k) * rate / n.
    const double f = double(std::min(k, n - k)) * rate / double(n);
    if (!(f >= lo && f <= hi)) spec[k] = 0.0;
  }
  std::vector<double> out(n);
  for (std::size_t t = 0; t < n; ++t) {
    std::complex<double> acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) acc += spec[k] * std::polar(1.0, 2.0 * std::numbers::pi * double(k * t) / double(n));
    out[t] = acc.real() / double(n);
  }
  return out;
}

CspModel fit_two_class(std::mt19937_64& rng, std::size_t channels, double boost, std::size_t n_components) {
  std::normal_distribution<double> noise(0.0, 1.0);
  TrialTensor t;
  t.sample_rate = kRate;
  for (int i = 0; i < 40; ++i) {
    Eigen::MatrixXd x(static_cast<Eigen::Index>(channels), 200);
    for (Eigen::Index c = 0; c < x.rows(); ++c) {
      for (Eigen::Index s = 0; s < x.cols(); ++s) x(c, s) = noise(rng);
    }
    if (i % 2 == 0) x.row(1) *= std::sqrt(boost);
    t.trials.push_back(x);
    t.labels.push_back(i % 2);
  }
  return csp_fit(t, n_components);
}

}  // namespace

TEST(BandFeatures, MatchesNaiveDft) {
  std::mt19937_64 rng(51);
  std::normal_distribution<double> noise(0.0, 1.0);
  Eigen::MatrixXd x(2, 130);
  for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = noise(rng);
  for (const auto& band : standard_bands_with_smr()) {
    const auto out = band_features(single(x), band).trials.front();
    ASSERT_EQ(out.cols(), 4 * 50);  // (130 - 50) / 25 + 1 windows
    for (Eigen::Index ch = 0; ch < 2; ++ch) {
      for (int w = 0; w < 4; ++w) {
        std::vector<double> win(50);
        for (int i = 0; i < 50; ++i) win[i] = x(ch, w * 25 + i);
        const auto ref = naive_band_limit(win, band.lo, band.hi, kRate);
        for (int i = 0; i < 50; ++i) EXPECT_NEAR(out(ch, w * 50 + i), ref[i], 1e-9);
      }
    }
  }
}

TEST(BandFeatures, ToneEnergy) {
  const auto x = tone(10.0, 500);
  const double in = power(x);
  const auto alpha = band_features(single(x), {"alpha", 8, 13}).trials.front();
  const auto delta = band_features(single(x), {"delta", 1, 3}).trials.front();
  EXPECT_GE(power(alpha) / in, 0.9);
  EXPECT_LE(power(delta) / in, 0.05);
  const auto zero = band_features(single(Eigen::MatrixXd::Zero(3, 100)), {"beta", 14, 30}).trials.front();
  EXPECT_EQ(zero.norm(), 0.0);
}

TEST(BandFeatures, LinearAndDisjointBandsPartitionEnergy) {
  std::mt19937_64 rng(52);
  std::normal_distribution<double> noise(0.0, 1.0);
  for (int t = 0; t < 20; ++t) {
    Eigen::MatrixXd a(3, 300), b(3, 300);
    for (Eigen::Index i = 0; i < a.size(); ++i) {
      a.data()[i] = noise(rng);
      b.data()[i] = noise(rng);
    }
    const BandSpec beta{"beta", 14, 30};
    const auto fa = band_features(single(a), beta).trials.front();
    const auto fb = band_features(single(b), beta).trials.front();
    const auto fab = band_features(single(a + b), beta).trials.front();
    EXPECT_LE((fab - fa - fb).cwiseAbs().maxCoeff(), 1e-9);

    double parts = 0.0;
    for (const auto& band : standard_bands()) {
      if (band.name == "all") continue;
      parts += band_features(single(a), band).trials.front().squaredNorm();
    }
    EXPECT_LE(parts, band_features(single(a), {"all", 1, 30}).trials.front().squaredNorm() + 1e-6);
  }
}

TEST(BandFeatures, Errors) {
  const auto x = tone(10.0, 100);
  auto code = [&](const TrialTensor& t, const BandSpec& b) {
    try {
      band_features(t, b);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kConfig;
  };
  EXPECT_EQ(code(single(x), {"hi", 100, 130}), ErrorCode::kBandOutOfRange);
  EXPECT_EQ(code(single(x), {"zero", 0, 10}), ErrorCode::kBandOutOfRange);
  EXPECT_EQ(code(single(x), {"inverted", 10, 5}), ErrorCode::kBandOutOfRange);
  EXPECT_EQ(code(single(tone(10.0, 49)), {"alpha", 8, 13}), ErrorCode::kTooShort);
}

TEST(ParseBand, PresetsAndCustom) {
  EXPECT_EQ(parse_band("smr").lo, 13.0);
  EXPECT_EQ(parse_band("all").hi, 30.0);
  const auto b = parse_band("mu:8.5-12");
  EXPECT_EQ(b.name, "mu");
  EXPECT_EQ(b.lo, 8.5);
  EXPECT_EQ(b.hi, 12.0);
  EXPECT_THROW(parse_band("gamma"), Error);
  EXPECT_THROW(parse_band("x:5-2"), Error);
  EXPECT_EQ(standard_bands().size(), 5u);
  EXPECT_EQ(standard_bands_with_smr().size(), 6u);
}

TEST(Csp, SeparatesVarianceBoost) {
  std::mt19937_64 rng(53);
  const auto model = fit_two_class(rng, 4, 10.0, 2);
  ASSERT_EQ(model.filters.size(), 1u);
  // Leading component: top of the spectrum, so class 0 carries most of the variance.
  const double lambda = model.eigenvalues.front()(0);
  EXPECT_GE(lambda / (1.0 - lambda), 5.0);
  // Its filter concentrates on the boosted channel.
  const Eigen::RowVectorXd f = model.filters.front().row(0).cwiseAbs();
  Eigen::Index arg = 0;
  f.maxCoeff(&arg);
  EXPECT_EQ(arg, 1);
}

TEST(Csp, IdenticalCovariancesGiveHalf) {
  TrialTensor t;
  t.sample_rate = kRate;
  std::mt19937_64 rng(54);
  std::normal_distribution<double> noise(0.0, 1.0);
  Eigen::MatrixXd base(3, 100);
  for (Eigen::Index i = 0; i < base.size(); ++i) base.data()[i] = noise(rng);
  for (int i = 0; i < 6; ++i) {
    t.trials.push_back(base);
    t.labels.push_back(i % 2);
  }
  const auto model = csp_fit(t, 3);
  for (Eigen::Index i = 0; i < model.eigenvalues.front().size(); ++i) {
    EXPECT_NEAR(model.eigenvalues.front()(i), 0.5, 1e-5);
  }
}

TEST(Csp, SquareFilterIsInvertible) {
  std::mt19937_64 rng(55);
  const auto model = fit_two_class(rng, 5, 3.0, 5);
  const auto& f = model.filters.front();
  ASSERT_EQ(f.rows(), 5);
  ASSERT_EQ(f.cols(), 5);
  Eigen::FullPivLU<Eigen::MatrixXd> lu(f);
  EXPECT_EQ(lu.rank(), 5);
}

TEST(Csp, MulticlassBudgetSplit) {
  TrialTensor t;
  t.sample_rate = kRate;
  std::mt19937_64 rng(56);
  std::normal_distribution<double> noise(0.0, 1.0);
  for (int i = 0; i < 24; ++i) {
    Eigen::MatrixXd x(8, 100);
    for (Eigen::Index j = 0; j < x.size(); ++j) x.data()[j] = noise(rng);
    x.row(i % 4) *= 3.0;
    t.trials.push_back(x);
    t.labels.push_back(i % 4);
  }
  const auto model = csp_fit(t, 25);
  ASSERT_EQ(model.filters.size(), 4u);
  EXPECT_EQ(model.filters[0].rows(), 7);
  EXPECT_EQ(model.filters[1].rows(), 6);
  EXPECT_EQ(model.filters[2].rows(), 6);
  EXPECT_EQ(model.filters[3].rows(), 6);
  EXPECT_EQ(model.num_features(), 25u);

  // Budget is capped by the channel count.
  TrialTensor narrow = t;
  for (auto& x : narrow.trials) x = x.topRows(4).eval();
  const auto capped = csp_fit(narrow, 25);
  for (const auto& f : capped.filters) EXPECT_EQ(f.rows(), 4);
}

TEST(Csp, Errors) {
  TrialTensor t;
  t.sample_rate = kRate;
  for (int i = 0; i < 3; ++i) {
    t.trials.push_back(Eigen::MatrixXd::Random(2, 60));
    t.labels.push_back(0);
  }
  EXPECT_THROW(csp_fit(t, 2), Error);
  t.labels[2] = 1;
  try {
    csp_fit(t, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotEnoughClasses);
  }
}

TEST(CspTransform, ScalingZeroAndOrdering) {
  std::mt19937_64 rng(57);
  std::normal_distribution<double> noise(0.0, 1.0);
  TrialTensor t;
  t.sample_rate = kRate;
  for (int i = 0; i < 10; ++i) {
    Eigen::MatrixXd x(4, 120);
    for (Eigen::Index j = 0; j < x.size(); ++j) x.data()[j] = noise(rng);
    t.trials.push_back(x);
    t.labels.push_back(i % 2);
  }
  const auto model = csp_fit(t, 4);
  const auto f = csp_transform(model, t);
  EXPECT_TRUE(f.allFinite());

  TrialTensor doubled = t;
  for (auto& x : doubled.trials) x *= 2.0;
  const auto g = csp_transform(model, doubled);
  EXPECT_LE(((g - f).array() - std::log(4.0)).abs().maxCoeff(), 1e-10);

  TrialTensor zero = single(Eigen::MatrixXd::Zero(4, 120));
  const auto z = csp_transform(model, zero);
  for (Eigen::Index j = 0; j < z.cols(); ++j) EXPECT_EQ(z(0, j), std::log(1e-12));

  // Reversing the trials reverses the rows and nothing else.
  TrialTensor rev = t;
  std::reverse(rev.trials.begin(), rev.trials.end());
  const auto r = csp_transform(model, rev);
  for (Eigen::Index i = 0; i < f.rows(); ++i) EXPECT_EQ(r.row(f.rows() - 1 - i), f.row(i));

  TrialTensor wrong = single(Eigen::MatrixXd::Zero(3, 120));
  try {
    csp_transform(model, wrong);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kChannelMismatch);
  }
}

TEST(Csp, ChannelRelabelingPermutesFilters) {
  std::mt19937_64 rng(58);
  std::normal_distribution<double> noise(0.0, 1.0);
  TrialTensor t;
  t.sample_rate = kRate;
  for (int i = 0; i < 30; ++i) {
    Eigen::MatrixXd x(3, 150);
    for (Eigen::Index j = 0; j < x.size(); ++j) x.data()[j] = noise(rng);
    x.row(i % 2) *= 2.5;
    t.trials.push_back(x);
    t.labels.push_back(i % 2);
  }
  Eigen::PermutationMatrix<Eigen::Dynamic> perm(3);
  perm.indices() << 2, 0, 1;
  TrialTensor p = t;
  for (auto& x : p.trials) x = perm * x;
  const auto a = csp_fit(t, 3), b = csp_fit(p, 3);
  const Eigen::MatrixXd mapped = a.filters.front() * perm.transpose();
  for (Eigen::Index r = 0; r < 3; ++r) {
    const double sign = mapped.row(r).dot(b.filters.front().row(r)) < 0 ? -1.0 : 1.0;
    EXPECT_LE((mapped.row(r) - sign * b.filters.front().row(r)).cwiseAbs().maxCoeff(), 1e-8);
  }
}
