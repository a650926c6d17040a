#include "ivmd/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>

namespace ivmd {

namespace {

struct PartitionCubes {
  std::map<ClassifierKind, ProbabilityCube> test;
  std::map<ClassifierKind, ProbabilityCube> train;
};

std::vector<ClassifierKind> needed_classifiers(const ExperimentConfig& cfg) {
  std::vector<ClassifierKind> kinds;
  auto add = [&](ClassifierKind k) {
    if (std::find(kinds.begin(), kinds.end(), k) == kinds.end()) kinds.push_back(k);
  };
  for (auto f : cfg.frameworks) {
    if (f == Framework::kTraditional) {
      add(cfg.traditional_classifier.kind);
    } else {
      for (auto k : cfg.mff_classifiers) add(k);
    }
  }
  return kinds;
}

// Index of each label in `classes`, -1 when absent.
std::vector<int> label_indices(const std::vector<int>& classes, std::span<const int> labels) {
  std::vector<int> out;
  out.reserve(labels.size());
  for (int l : labels) {
    const auto it = std::lower_bound(classes.begin(), classes.end(), l);
    out.push_back(it != classes.end() && *it == l ? static_cast<int>(it - classes.begin()) : -1);
  }
  return out;
}

void fill_cube(ProbabilityCube& cube, std::size_t band, const Eigen::MatrixXd& probs) {
  for (Eigen::Index s = 0; s < probs.rows(); ++s) {
    for (Eigen::Index c = 0; c < probs.cols(); ++c) {
      cube.at(static_cast<std::size_t>(s), band, static_cast<std::size_t>(c)) = probs(s, c);
    }
  }
}

std::vector<ProbabilityCube> select_cubes(Framework f, const ExperimentConfig& cfg,
                                          const std::map<ClassifierKind, ProbabilityCube>& cubes) {
  std::vector<ProbabilityCube> out;
  if (f == Framework::kTraditional) {
    out.push_back(cubes.at(cfg.traditional_classifier.kind));
  } else {
    for (auto k : cfg.mff_classifiers) out.push_back(cubes.at(k));
  }
  return out;
}

}  // namespace

ResultTable run_experiment(const ExperimentConfig& cfg, const std::vector<SubjectData>& data) {
  cfg.validate();
  if (!cfg.seed) throw Error(ErrorCode::kConfig, "a seed is required");
  const std::uint64_t seed = *cfg.seed;
  const OrderParams order(cfg.alpha, cfg.beta);
  const auto kinds = needed_classifiers(cfg);
  bool any_search = false;
  for (auto a : cfg.aggregators) any_search |= cfg.md_search && (a == AggregatorKind::kMd1 || a == AggregatorKind::kMd2);

  ResultTable table;
  for (const auto& subject : data) {
    std::optional<std::size_t> at;  // partition being processed, for error context
    try {
      subject.tensor.validate();
      std::vector<TrialTensor> band_data;
      band_data.reserve(cfg.bands.size());
      for (const auto& band : cfg.bands) band_data.push_back(band_features(subject.tensor, band));
      const auto splits = partition(subject.tensor.labels, cfg.partitions, cfg.train_fraction, seed);

      for (std::size_t p = 0; p < splits.size(); ++p) {
        at = p;
        const Split& split = splits[p];
        std::vector<int> train_labels, test_labels;
        for (auto i : split.train) train_labels.push_back(subject.tensor.labels[i]);
        for (auto i : split.test) test_labels.push_back(subject.tensor.labels[i]);

        std::vector<int> classes = train_labels;
        std::sort(classes.begin(), classes.end());
        classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
        const auto n_classes = classes.size();

        PartitionCubes cubes;
        for (auto k : kinds) {
          cubes.test.emplace(k, ProbabilityCube(split.test.size(), cfg.bands.size(), n_classes));
          if (any_search) cubes.train.emplace(k, ProbabilityCube(split.train.size(), cfg.bands.size(), n_classes));
        }
        for (std::size_t b = 0; b < cfg.bands.size(); ++b) {
          const TrialTensor train = band_data[b].subset(split.train);
          const TrialTensor test = band_data[b].subset(split.test);
          const CspModel csp = csp_fit(train, cfg.n_csp);
          const Eigen::MatrixXd f_train = csp_transform(csp, train);
          const Eigen::MatrixXd f_test = csp_transform(csp, test);
          for (auto k : kinds) {
            ClassifierSpec spec{k, cfg.qda_reg, cfg.knn_k};
            const TrainedModel model = fit(spec, f_train, train_labels);
            fill_cube(cubes.test.at(k), b, predict_proba(model, f_test));
            if (any_search) fill_cube(cubes.train.at(k), b, predict_proba(model, f_train));
          }
        }

        const auto train_idx = label_indices(classes, train_labels);
        const auto test_idx = label_indices(classes, test_labels);
        for (auto framework : cfg.frameworks) {
          const auto test_cubes = select_cubes(framework, cfg, cubes.test);
          for (auto agg : cfg.aggregators) {
            std::vector<std::optional<ImplicationKind>> impls;
            if (agg == AggregatorKind::kMean) {
              impls.push_back(std::nullopt);
            } else {
              impls.assign(cfg.implications.begin(), cfg.implications.end());
            }
            for (const auto& impl : impls) {
              FusionConfig fc{Aggregator{agg, cfg.m_p, cfg.m_n}, impl.value_or(ImplicationKind::kLukasiewicz),
                              cfg.y_width, order, cfg.decision};
              if (fc.aggregator.is_md() && cfg.md_search) {
                const auto train_cubes = select_cubes(framework, cfg, cubes.train);
                const auto choice =
                    optimize_mp_mn(framework, train_cubes, train_idx, fc, MpMnSearch{cfg.md_samples, 1.0, 100.0, seed + p});
                fc.aggregator.m_p = choice.m_p;
                fc.aggregator.m_n = choice.m_n;
              }
              const auto decisions = fuse(framework, test_cubes, fc);
              ResultRow row{subject.name, framework, agg, impl, p, 0, decisions.size()};
              for (std::size_t i = 0; i < decisions.size(); ++i) row.correct += decisions[i] == test_idx[i] ? 1 : 0;
              table.rows.push_back(std::move(row));
            }
          }
        }
      }
    } catch (const Error& e) {
      const std::string where = at ? ", partition " + std::to_string(*at) : std::string();
      throw Error(e.code(), "subject " + subject.name + where + ": " + e.message());
    }
  }
  return table;
}

std::vector<SummaryRow> ResultTable::summary() const {
  std::vector<SummaryRow> out;
  std::vector<std::vector<double>> values;
  for (const auto& r : rows) {
    auto it = std::find_if(out.begin(), out.end(), [&](const SummaryRow& s) {
      return s.framework == r.framework && s.aggregator == r.aggregator && s.implication == r.implication;
    });
    if (it == out.end()) {
      out.push_back(SummaryRow{r.framework, r.aggregator, r.implication});
      values.emplace_back();
      it = out.end() - 1;
    }
    values[static_cast<std::size_t>(it - out.begin())].push_back(r.accuracy());
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto& v = values[i];
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    double var = 0.0;
    for (double x : v) var += (x - mean) * (x - mean);
    var /= static_cast<double>(v.size());
    out[i].mean = mean;
    out[i].std = std::sqrt(var);
    out[i].count = v.size();
  }
  return out;
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return ec == std::errc{} ? std::string(buf, ptr) : std::string("nan");
}

void write_report(std::ostream& out, const ResultTable& table) {
  auto impl_name = [](const std::optional<ImplicationKind>& k) {
    return k ? std::string(to_string(*k)) : std::string("-");
  };
  out << "subject,framework,aggregator,implication,partition,accuracy\n";
  for (const auto& r : table.rows) {
    out << r.subject << ',' << to_string(r.framework) << ',' << to_string(r.aggregator) << ','
        << impl_name(r.implication) << ',' << r.partition << ',' << format_double(r.accuracy()) << '\n';
  }
  out << "\nframework,aggregator,implication,mean,std\n";
  for (const auto& s : table.summary()) {
    out << to_string(s.framework) << ',' << to_string(s.aggregator) << ',' << impl_name(s.implication) << ','
        << format_double(s.mean) << ',' << format_double(s.std) << '\n';
  }
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kConfig:
    case ErrorCode::kBandOutOfRange:
      return 2;
    case ErrorCode::kNoRootInBracket:
    case ErrorCode::kSingularCovariance:
      return 4;
    default:
      return 3;
  }
}

}  // namespace ivmd
