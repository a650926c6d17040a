#include "ivmd/fusion.hpp"

#include <random>
#include <string>

#include "ivmd/error.hpp"
#include "ivmd/owa.hpp"
#include "ivmd/wd_mean.hpp"

namespace ivmd {

namespace {

void require_shape(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::kShape, what);
}

std::size_t argmax_numeric(std::span<const double> scores) {
  std::size_t best = 0;
  for (std::size_t c = 1; c < scores.size(); ++c) {
    if (scores[c] > scores[best]) best = c;
  }
  return best;
}

std::size_t pick_interval(std::span<const UnitInterval> scores, const OrderParams& order, Decision decision) {
  std::size_t best = 0;
  for (std::size_t c = 1; c < scores.size(); ++c) {
    const auto cmp = cmp_alpha_beta(scores[c], scores[best], order);
    if (decision == Decision::kOrderMax ? cmp > 0 : cmp < 0) best = c;
  }
  return best;
}

// Per sample: per class numeric mean across sources.
std::vector<double> mean_over_sources(const ProbabilityCube& cube, std::size_t s) {
  std::vector<double> out(cube.classes(), 0.0);
  for (std::size_t c = 0; c < cube.classes(); ++c) {
    for (std::size_t src = 0; src < cube.sources(); ++src) out[c] += cube.at(s, src, c);
    out[c] /= static_cast<double>(cube.sources());
  }
  return out;
}

std::vector<UnitInterval> fuse_sources(const IntervalCube& cube, std::size_t s, const FusionConfig& cfg) {
  std::vector<UnitInterval> out;
  out.reserve(cube.classes());
  std::vector<UnitInterval> column(cube.sources());
  for (std::size_t c = 0; c < cube.classes(); ++c) {
    for (std::size_t src = 0; src < cube.sources(); ++src) column[src] = cube.at(s, src, c);
    out.push_back(aggregate_intervals(column, cfg.aggregator, cfg.order));
  }
  return out;
}

}  // namespace

std::string_view to_string(AggregatorKind kind) {
  switch (kind) {
    case AggregatorKind::kMean: return "mean";
    case AggregatorKind::kOwa1: return "owa1";
    case AggregatorKind::kOwa2: return "owa2";
    case AggregatorKind::kOwa3: return "owa3";
    case AggregatorKind::kMd1: return "md1";
    case AggregatorKind::kMd2: return "md2";
  }
  return "unknown";
}

AggregatorKind parse_aggregator(std::string_view name) {
  for (auto k : {AggregatorKind::kMean, AggregatorKind::kOwa1, AggregatorKind::kOwa2, AggregatorKind::kOwa3,
                 AggregatorKind::kMd1, AggregatorKind::kMd2}) {
    if (name == to_string(k)) return k;
  }
  throw Error(ErrorCode::kConfig, "unknown aggregator '" + std::string(name) + "'");
}

std::string_view to_string(Decision d) { return d == Decision::kOrderMax ? "max" : "min"; }

Decision parse_decision(std::string_view name) {
  if (name == "max") return Decision::kOrderMax;
  if (name == "min") return Decision::kOrderMin;
  throw Error(ErrorCode::kConfig, "decision must be 'min' or 'max', got '" + std::string(name) + "'");
}

std::string_view to_string(Framework f) { return f == Framework::kTraditional ? "traditional" : "mff"; }

Framework parse_framework(std::string_view name) {
  if (name == "traditional" || name == "trad") return Framework::kTraditional;
  if (name == "mff") return Framework::kMff;
  throw Error(ErrorCode::kConfig, "unknown framework '" + std::string(name) + "'");
}

IntervalCube intervalize(const ProbabilityCube& probs, ImplicationKind implication, double y_width) {
  IntervalCube out(probs.samples(), probs.sources(), probs.classes());
  for (std::size_t s = 0; s < probs.samples(); ++s) {
    for (std::size_t src = 0; src < probs.sources(); ++src) {
      for (std::size_t c = 0; c < probs.classes(); ++c) {
        out.at(s, src, c) = build_interval(implication, probs.at(s, src, c), y_width);
      }
    }
  }
  return out;
}

UnitInterval aggregate_intervals(std::span<const UnitInterval> inputs, const Aggregator& agg, const OrderParams& order) {
  switch (agg.kind) {
    case AggregatorKind::kOwa1: return iv_owa(inputs, quantifier_weights(kOwa1, inputs.size()), order);
    case AggregatorKind::kOwa2: return iv_owa(inputs, quantifier_weights(kOwa2, inputs.size()), order);
    case AggregatorKind::kOwa3: return iv_owa(inputs, quantifier_weights(kOwa3, inputs.size()), order);
    case AggregatorKind::kMd1: return wd_mean(inputs, WdMeanConfig{md1_spec(agg.m_p, agg.m_n), order, {}});
    case AggregatorKind::kMd2: return wd_mean(inputs, WdMeanConfig{md2_spec(agg.m_p, agg.m_n), order, {}});
    case AggregatorKind::kMean: break;
  }
  throw Error(ErrorCode::kDomain, "aggregator is not interval-valued");
}

std::vector<int> fuse_traditional(const ProbabilityCube& cube, const FusionConfig& cfg) {
  require_shape(cube.sources() > 0 && cube.classes() > 0, "cube needs at least one source and class");
  std::vector<int> decisions(cube.samples());
  if (!cfg.aggregator.interval_valued()) {
    for (std::size_t s = 0; s < cube.samples(); ++s) {
      decisions[s] = static_cast<int>(argmax_numeric(mean_over_sources(cube, s)));
    }
    return decisions;
  }
  const IntervalCube intervals = intervalize(cube, cfg.implication, cfg.y_width);
  for (std::size_t s = 0; s < cube.samples(); ++s) {
    decisions[s] = static_cast<int>(pick_interval(fuse_sources(intervals, s, cfg), cfg.order, cfg.decision));
  }
  return decisions;
}

std::vector<int> fuse_mff(std::span<const ProbabilityCube> cubes, const FusionConfig& cfg) {
  require_shape(!cubes.empty(), "MFF needs at least one classifier cube");
  const auto& first = cubes.front();
  require_shape(first.sources() > 0 && first.classes() > 0, "cube needs at least one source and class");
  for (const auto& cube : cubes) {
    require_shape(cube.samples() == first.samples() && cube.classes() == first.classes() &&
                      cube.sources() == first.sources(),
                  "MFF cubes must share samples x sources x classes");
  }
  std::vector<int> decisions(first.samples());
  const double n_cubes = static_cast<double>(cubes.size());

  if (!cfg.aggregator.interval_valued()) {
    for (std::size_t s = 0; s < first.samples(); ++s) {
      std::vector<double> fused(first.classes(), 0.0);
      for (const auto& cube : cubes) {
        const auto collective = mean_over_sources(cube, s);
        for (std::size_t c = 0; c < fused.size(); ++c) fused[c] += collective[c];
      }
      for (double& v : fused) v /= n_cubes;
      decisions[s] = static_cast<int>(argmax_numeric(fused));
    }
    return decisions;
  }

  std::vector<IntervalCube> intervals;
  intervals.reserve(cubes.size());
  for (const auto& cube : cubes) intervals.push_back(intervalize(cube, cfg.implication, cfg.y_width));
  std::vector<std::vector<UnitInterval>> collective(cubes.size());
  std::vector<UnitInterval> column(cubes.size());
  std::vector<UnitInterval> fused(first.classes());
  for (std::size_t s = 0; s < first.samples(); ++s) {
    for (std::size_t m = 0; m < intervals.size(); ++m) collective[m] = fuse_sources(intervals[m], s, cfg);
    for (std::size_t c = 0; c < first.classes(); ++c) {
      for (std::size_t m = 0; m < collective.size(); ++m) column[m] = collective[m][c];
      fused[c] = aggregate_intervals(column, cfg.aggregator, cfg.order);
    }
    decisions[s] = static_cast<int>(pick_interval(fused, cfg.order, cfg.decision));
  }
  return decisions;
}

std::vector<int> fuse(Framework framework, std::span<const ProbabilityCube> cubes, const FusionConfig& cfg) {
  if (framework == Framework::kTraditional) {
    require_shape(!cubes.empty(), "traditional fusion needs a cube");
    return fuse_traditional(cubes.front(), cfg);
  }
  return fuse_mff(cubes, cfg);
}

double accuracy(std::span<const int> decisions, std::span<const int> labels) {
  require_shape(decisions.size() == labels.size(), "decisions and labels differ in length");
  if (decisions.empty()) return 0.0;
  std::size_t correct = 0;
  for (std::size_t i = 0; i < decisions.size(); ++i) correct += decisions[i] == labels[i] ? 1 : 0;
  return static_cast<double>(correct) / static_cast<double>(decisions.size());
}

MpMnChoice optimize_mp_mn(Framework framework, std::span<const ProbabilityCube> cubes, std::span<const int> labels,
                          const FusionConfig& cfg, const MpMnSearch& search) {
  if (!cfg.aggregator.is_md()) throw Error(ErrorCode::kConfig, "M_p/M_n search needs an MD aggregator");
  if (search.n_samples == 0 || !(search.lo > 0.0 && search.lo <= search.hi)) {
    throw Error(ErrorCode::kConfig, "M_p/M_n search needs n_samples >= 1 and 0 < lo <= hi");
  }
  std::mt19937_64 rng(search.seed);
  std::uniform_real_distribution<double> draw(search.lo, search.hi);
  MpMnChoice best;
  bool have_best = false;
  FusionConfig trial = cfg;
  for (std::size_t i = 0; i < search.n_samples; ++i) {
    trial.aggregator.m_p = draw(rng);
    trial.aggregator.m_n = draw(rng);
    const double acc = accuracy(fuse(framework, cubes, trial), labels);
    if (!have_best || acc > best.accuracy) {
      best = {trial.aggregator.m_p, trial.aggregator.m_n, acc};
      have_best = true;
    }
  }
  return best;
}

}  // namespace ivmd
