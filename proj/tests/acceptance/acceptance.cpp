// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.
//
//   ivmd_acceptance [--cli path/to/ivmd] [--only N]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "ivmd/experiment.hpp"
#include "ivmd/implication.hpp"
#include "ivmd/iv_deviation.hpp"
#include "ivmd/owa.hpp"
#include "ivmd/wd_mean.hpp"
#include "../support/oracles.hpp"

using namespace ivmd;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

std::vector<double> sorted_kas(const std::vector<UnitInterval>& xs, double alpha) {
  std::vector<double> kas;
  for (const auto& x : xs) kas.push_back(k_a(x, alpha));
  std::sort(kas.begin(), kas.end());
  return kas;
}

Outcome oracle_equivalence() {
  Outcome o;
  const auto t0 = Clock::now();
  gen::Intervals g(1001);
  double worst = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const auto xs = g.equal_width(g.size(2, 7));
    const double alpha = g.uniform(0.05, 0.95);
    for (int c = 1; c <= 5; ++c) {
      const WdMeanConfig cfg{deviation_case(c, g.uniform(0.1, 100.0), g.uniform(0.1, 100.0)), OrderParams(alpha, 1.0),
                             {}};
      const double got = k_a(wd_mean(xs, cfg), alpha);
      worst = std::max({worst, std::fabs(got - k_a(bisection_oracle(xs, cfg), alpha)),
                        std::fabs(got - oracle::root(cfg.deviation, sorted_kas(xs, alpha)))});
    }
  }
  const double secs = seconds_since(t0);
  if (worst > 1e-8) o.fail(fmt("max |dK| = %.3g", worst));
  if (secs > 30.0) o.fail(fmt("took %.1f s", secs));
  if (o.pass) o.detail = fmt("max |dK| = %.3g over 5000 solves, %.2f s", worst, secs);
  return o;
}

Outcome worked_values() {
  Outcome o;
  const std::vector<double> kas{0.1, 0.5, 0.9};
  const auto s1 = deviation_case(1, 1.0, 3.0);
  const auto sp = switch_point(kas, s1);
  const double y1 = solve_ka(sp, s1);
  if (std::fabs(y1 - 0.66) > 1e-10) o.fail(fmt("case (i) gave %.17g", y1));
  if (sp.k != 2) o.fail(fmt("switch point k = %g", double(sp.k)));

  std::vector<UnitInterval> pts{UnitInterval::point(0.1), UnitInterval::point(0.5), UnitInterval::point(0.9)};
  const double y1b = k_a(wd_mean(pts, {s1, OrderParams(0.5, 1.0), {}}), 0.5);
  if (std::fabs(y1b - 0.66) > 1e-10) o.fail(fmt("wd_mean case (i) gave %.17g", y1b));

  const std::vector<UnitInterval> two{UnitInterval::point(0.2), UnitInterval::point(0.4)};
  const double y2 = k_a(wd_mean(two, {deviation_case(2, 1.0, 1.0), OrderParams(0.5, 1.0), {}}), 0.5);
  if (std::fabs(y2 - std::sqrt(0.1)) > 1e-10) o.fail(fmt("case (ii) gave %.17g", y2));
  if (o.pass) o.detail = fmt("%.12f (k=2), %.12f", y1, y2);
  return o;
}

Outcome properties() {
  Outcome o;
  gen::Intervals g(1003);
  int idem = 0, sym = 0, width = 0, mono = 0, bracket = 0;
  for (int t = 0; t < 1000; ++t) {
    const double alpha = g.uniform(0.05, 0.95);
    const OrderParams ord(alpha, 1.0);
    const WdMeanConfig cfg{deviation_case(1 + t % 5, g.uniform(0.1, 100.0), g.uniform(0.1, 100.0)), ord, {}};
    const std::size_t n = g.size(2, 7);

    const auto x = g.any();
    if (!(wd_mean(std::vector<UnitInterval>(n, x), cfg) == x)) ++idem;

    auto xs = g.equal_width(n);
    const auto y = wd_mean(xs, cfg);
    auto shuffled = xs;
    std::shuffle(shuffled.begin(), shuffled.end(), g.engine());
    const auto z = wd_mean(shuffled, cfg);
    if (y.lower() != z.lower() || y.upper() != z.upper()) ++sym;
    if (std::fabs(y.width() - xs.front().width()) > 1e-12) ++width;

    const auto kas = sorted_kas(xs, alpha);
    const auto sp = switch_point(kas, cfg.deviation);
    const double ky = solve_ka(sp, cfg.deviation);
    const auto [lo, hi] = sp.bracket();
    const bool inside = (sp.k < kas.size() && lo < hi) ? (ky >= lo && ky < hi) : ky == lo;
    if (!inside) ++bracket;

    const double w = g.uniform(0.0, 0.5);
    std::vector<UnitInterval> as, bs;
    for (std::size_t i = 0; i < n; ++i) {
      auto a = g.with_width(w), b = g.with_width(w);
      if (cmp_alpha_beta(b, a, ord) < 0) std::swap(a, b);
      as.push_back(a);
      bs.push_back(b);
    }
    if (cmp_alpha_beta(wd_mean(as, cfg), wd_mean(bs, cfg), ord) > 0) ++mono;
  }
  if (idem + sym + width + mono + bracket > 0) {
    o.fail(fmt("idempotency %g, symmetry %g, width %g", idem, sym, width) +
           fmt(", monotonicity %g, bracket %g failures", mono, bracket));
  } else {
    o.detail = "1000 trials each, no failures";
  }
  return o;
}

Outcome reduction() {
  Outcome o;
  gen::Intervals g(1004);
  double worst = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const auto xs = g.equal_width(g.size(2, 7));
    const double alpha = g.uniform(0.05, 0.95);
    const double m = g.uniform(0.1, 100.0);
    const double got = k_a(wd_mean(xs, {deviation_case(1, m, m), OrderParams(alpha, 1.0), {}}), alpha);
    long double mean = 0.0L;
    for (const auto& x : xs) mean += (1.0L - alpha) * x.lower() + alpha * x.upper();
    worst = std::max(worst, std::fabs(got - static_cast<double>(mean / xs.size())));
  }
  if (worst > 1e-12) o.fail(fmt("max deviation from the mean %.3g", worst));
  else o.detail = fmt("max deviation %.3g", worst);
  return o;
}

Outcome owa() {
  Outcome o;
  if (quantifier_weights({0.5, 1.0}, 5) != std::vector<double>{0.0, 0.0, 0.2, 0.4, 0.4}) o.fail("weights(0.5,1,5)");
  gen::Intervals g(1005);
  for (int t = 0; t < 100; ++t) {
    double a = g.uniform(), b = g.uniform();
    if (a > b) std::swap(a, b);
    if (a == b) b = std::min(1.0, a + 1e-3);
    const std::size_t n = g.size(1, 30);
    const auto w = quantifier_weights({a, b}, n);
    const double sum = std::accumulate(w.begin(), w.end(), 0.0);
    if (std::fabs(sum - 1.0) > 1e-12) o.fail(fmt("weights sum %.17g", sum));
    const auto x = g.any();
    const OrderParams ord(g.uniform(0.05, 0.95), 1.0);
    if (!(iv_owa(std::vector<UnitInterval>(n, x), w, ord) == x)) o.fail("iv_owa not idempotent");
  }
  if (o.pass) o.detail = "weights exact, sums and idempotency on 100 draws";
  return o;
}

Outcome implication_axioms() {
  Outcome o;
  int bad = 0;
  for (auto k : {ImplicationKind::kKleeneDienes, ImplicationKind::kLukasiewicz, ImplicationKind::kReichenbach}) {
    bad += implication(k, 0.0, 0.0) != 1.0;
    bad += implication(k, 1.0, 1.0) != 1.0;
    bad += implication(k, 1.0, 0.0) != 0.0;
    for (int i = 0; i <= 100; ++i) {
      const double x = i / 100.0;
      for (int j = 0; j <= 100; ++j) {
        const double y = j / 100.0;
        const double v = implication(k, x, y);
        bad += v < 0.0 || v > 1.0;
        if (i < 100) bad += v < implication(k, (i + 1) / 100.0, y);
        if (j < 100) bad += v > implication(k, x, (j + 1) / 100.0);
      }
    }
  }
  if (bad) o.fail(fmt("%g violations", bad));
  else o.detail = "101x101 grid, 3 implications";
  return o;
}

Outcome median_recovery() {
  Outcome o;
  gen::Intervals g(1007);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const OrderParams ord(g.uniform(0.05, 0.95), 1.0);
    auto xs = g.equal_width(3);
    std::sort(xs.begin(), xs.end(), [&](const auto& a, const auto& b) { return oracle::cmp(a, b, ord.alpha(), 1.0) < 0; });
    const auto median = xs[1];
    std::shuffle(xs.begin(), xs.end(), g.engine());
    const auto y = d_mean_generic(xs, sign_deviation(UnitInterval(0.1, 0.2), ord), ord, 1e-3);
    worst = std::max({worst, std::fabs(y.lower() - median.lower()), std::fabs(y.upper() - median.upper())});
  }
  if (worst > 1e-3) o.fail(fmt("max endpoint error %.3g", worst));
  else o.detail = fmt("max endpoint error %.3g", worst);
  return o;
}

double mean_accuracy(const ResultTable& t, AggregatorKind agg) {
  for (const auto& s : t.summary()) {
    if (s.aggregator == agg) return s.mean;
  }
  return -1.0;
}

std::vector<SubjectData> synth_binary(double snr, std::uint64_t seed) {
  SynthParams p;
  p.n_trials = 80;
  p.classes = 2;
  p.samples = 500;
  p.snr = snr;
  p.seed = seed;
  return {{"S1", synth_generate(p)}};
}

Outcome pipeline_sanity() {
  Outcome o;
  const auto t0 = Clock::now();
  constexpr double kSnr = 0.1;

  ExperimentConfig cfg;
  cfg.partitions = 20;
  cfg.seed = 3;
  cfg.m_p = cfg.m_n = 10.0;
  cfg.implications = {ImplicationKind::kReichenbach};

  // Calibration: LDA on the broadband features alone.
  auto lda_only = cfg;
  lda_only.bands = {parse_band("all")};
  const double lda = mean_accuracy(run_experiment(lda_only, synth_binary(kSnr, 7)), AggregatorKind::kMean);
  if (lda < 0.9) o.fail(fmt("LDA-only calibration %.4f < 0.9", lda));

  cfg.aggregators = {AggregatorKind::kMean, AggregatorKind::kMd2};
  const auto table = run_experiment(cfg, synth_binary(kSnr, 7));
  const double mean = mean_accuracy(table, AggregatorKind::kMean);
  const double md2 = mean_accuracy(table, AggregatorKind::kMd2);
  if (mean < 0.9) o.fail(fmt("mean aggregator %.4f < 0.9", mean));
  if (std::fabs(md2 - mean) > 0.1) o.fail(fmt("MD2 %.4f vs mean %.4f", md2, mean));

  const auto noise = run_experiment(cfg, synth_binary(0.0, 8));
  const double chance_mean = mean_accuracy(noise, AggregatorKind::kMean);
  const double chance_md2 = mean_accuracy(noise, AggregatorKind::kMd2);
  if (std::fabs(chance_mean - 0.5) > 0.1 || std::fabs(chance_md2 - 0.5) > 0.1) {
    o.fail(fmt("noise accuracy %.4f / %.4f not near 0.5", chance_mean, chance_md2));
  }
  const double secs = seconds_since(t0);
  if (secs > 300.0) o.fail(fmt("took %.1f s", secs));
  if (o.pass) {
    o.detail = fmt("snr %.2g: LDA-only %.4f, mean %.4f", kSnr, lda, mean) +
               fmt(", MD2 %.4f; noise %.4f / %.4f", md2, chance_mean, chance_md2) + fmt(", %.1f s", secs);
  }
  return o;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome determinism(const std::string& cli) {
  Outcome o;
  if (cli.empty()) {
    o.fail("no CLI given (--cli)");
    return o;
  }
  const auto dir = fs::temp_directory_path() / "ivmd_acceptance_determinism";
  fs::remove_all(dir);
  fs::create_directories(dir);
  write_dataset(dir / "data", synth_binary(0.2, 21), {"C3", "C4", "CP3", "CP4"});
  std::ofstream(dir / "run.cfg") << "framework=traditional,mff\naggregator=mean,owa2,md1,md2\n"
                                    "implication=lukasiewicz,reichenbach\npartitions=4\nmd.mp=10\nmd.mn=10\n";
  for (const char* name : {"a.csv", "b.csv"}) {
    const std::string cmd = "\"" + cli + "\" run --config \"" + (dir / "run.cfg").string() + "\" --data \"" +
                            (dir / "data" / "manifest.txt").string() + "\" --out \"" + (dir / name).string() +
                            "\" --seed 17 > \"" + (dir / "run.log").string() + "\" 2>&1";
    if (std::system(cmd.c_str()) != 0) {
      o.fail("CLI run failed: " + cmd);
      return o;
    }
  }
  const auto a = slurp(dir / "a.csv"), b = slurp(dir / "b.csv");
  if (a.empty()) o.fail("empty report");
  else if (a != b) o.fail("reports differ");
  else o.detail = fmt("%g-byte reports identical", double(a.size()));
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli;
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--cli" && i + 1 < argc) cli = argv[++i];
    else if (arg == "--only" && i + 1 < argc) only = std::atoi(argv[++i]);
    else {
      std::cerr << "usage: " << argv[0] << " [--cli path] [--only N]\n";
      return 2;
    }
  }

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"oracle equivalence", oracle_equivalence},
      {"worked values", worked_values},
      {"wD-mean properties", properties},
      {"equal-multiplier reduction", reduction},
      {"OWA weights and idempotency", owa},
      {"implication axioms", implication_axioms},
      {"median recovery", median_recovery},
      {"pipeline sanity", pipeline_sanity},
      {"determinism", [&] { return determinism(cli); }},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (only && static_cast<int>(i + 1) != only) continue;
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    failures += !o.pass;
    std::cout << "criterion " << i + 1 << " [" << (o.pass ? "PASS" : "FAIL") << "] " << criteria[i].first << ": "
              << o.detail << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
