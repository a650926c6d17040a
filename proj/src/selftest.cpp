#include "ivmd/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <ostream>
#include <random>
#include <string>

#include "ivmd/implication.hpp"
#include "ivmd/owa.hpp"
#include "ivmd/wd_mean.hpp"

namespace ivmd {

namespace {

struct Check {
  std::string name;
  std::function<std::string()> run;  // empty string on success
};

std::vector<UnitInterval> random_equal_width(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double w = 0.5 * u(rng);
  std::vector<UnitInterval> xs;
  for (std::size_t i = 0; i < n; ++i) {
    const double lo = (1.0 - w) * u(rng);
    xs.emplace_back(lo, std::min(1.0, lo + w));
  }
  return xs;
}

}  // namespace

int run_selftest(std::ostream& out, std::uint64_t seed, int trials) {
  std::vector<Check> checks;

  checks.push_back({"wd_mean matches bisection oracle", [&] {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> m(0.1, 100.0), a(0.05, 0.95);
    std::uniform_int_distribution<std::size_t> len(2, 7);
    for (int t = 0; t < trials; ++t) {
      const auto xs = random_equal_width(rng, len(rng));
      const double alpha = a(rng);
      for (int c = 1; c <= 5; ++c) {
        WdMeanConfig cfg{deviation_case(c, m(rng), m(rng)), OrderParams(alpha, 1.0), {}};
        const double fast = k_a(wd_mean(xs, cfg), alpha);
        const double slow = k_a(bisection_oracle(xs, cfg), alpha);
        if (std::abs(fast - slow) > 1e-8) {
          return "case " + std::to_string(c) + ": " + std::to_string(fast) + " vs " + std::to_string(slow);
        }
      }
    }
    return std::string();
  }});

  checks.push_back({"worked values", [] {
    const OrderParams ord(0.5, 1.0);
    std::vector<UnitInterval> xs{UnitInterval::point(0.1), UnitInterval::point(0.5), UnitInterval::point(0.9)};
    const double y = wd_mean(xs, {deviation_case(1, 1.0, 3.0), ord, {}}).lower();
    if (std::abs(y - 0.66) > 1e-10) return "case (i) gave " + std::to_string(y);
    std::vector<UnitInterval> ys{UnitInterval::point(0.2), UnitInterval::point(0.4)};
    const double z = wd_mean(ys, {deviation_case(2, 1.0, 1.0), ord, {}}).lower();
    if (std::abs(z - std::sqrt(0.1)) > 1e-10) return "case (ii) gave " + std::to_string(z);
    return std::string();
  }});

  checks.push_back({"idempotency and symmetry", [&] {
    std::mt19937_64 rng(seed + 1);
    std::uniform_real_distribution<double> m(0.1, 100.0);
    for (int t = 0; t < trials; ++t) {
      auto xs = random_equal_width(rng, 4);
      const WdMeanConfig cfg{deviation_case(1 + t % 5, m(rng), m(rng)), OrderParams(0.5, 1.0), {}};
      const std::vector<UnitInterval> same(4, xs.front());
      if (!(wd_mean(same, cfg) == xs.front())) return std::string("idempotency violated");
      const auto y = wd_mean(xs, cfg);
      std::reverse(xs.begin(), xs.end());
      if (!(wd_mean(xs, cfg) == y)) return std::string("symmetry violated");
    }
    return std::string();
  }});

  checks.push_back({"quantifier weights", [] {
    const auto w = quantifier_weights({0.5, 1.0}, 5);
    const std::vector<double> expect{0.0, 0.0, 0.2, 0.4, 0.4};
    return w == expect ? std::string() : std::string("Q(0.5,1) weights for n=5 differ");
  }});

  checks.push_back({"implication axioms", [] {
    for (auto kind : {ImplicationKind::kKleeneDienes, ImplicationKind::kLukasiewicz, ImplicationKind::kReichenbach}) {
      for (int i = 0; i <= 20; ++i) {
        const double x = i / 20.0;
        if (implication(kind, 0.0, x) != 1.0 || implication(kind, x, 1.0) != 1.0) return std::string(to_string(kind));
        for (int j = 1; j <= 20; ++j) {
          const double y = j / 20.0;
          const double x2 = std::min(1.0, x + 0.05);
          if (implication(kind, x2, y) > implication(kind, x, y)) return std::string(to_string(kind));
        }
      }
      if (implication(kind, 1.0, 0.0) != 0.0) return std::string(to_string(kind));
    }
    return std::string();
  }});

  int failures = 0;
  for (const auto& c : checks) {
    std::string err;
    try {
      err = c.run();
    } catch (const std::exception& e) {
      err = std::string("threw: ") + e.what();
    }
    if (err.empty()) {
      out << "PASS " << c.name << "\n";
    } else {
      out << "FAIL " << c.name << ": " << err << "\n";
      ++failures;
    }
  }
  return failures;
}

}  // namespace ivmd
