#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ivmd/classifiers.hpp"
#include "ivmd/error.hpp"
#include "ivmd/fusion.hpp"
#include "ivmd/signal.hpp"

namespace ivmd {

// ---- datasets ---------------------------------------------------------------

/// Flat key=value manifest:
///   sample_rate=250
///   channels=C3,C4,CP3,CP4
///   classes=left,right          (optional; names for the labels file)
///   subjects=S1,S2
///   S1.labels=S1/labels.csv     (trial_id,class)
///   S1.trials=S1/t000.csv,...   (paths relative to the manifest)
struct DatasetManifest {
  std::filesystem::path root;
  double sample_rate = 0.0;
  std::vector<std::string> channels;
  std::vector<std::string> class_names;
  std::vector<std::string> subjects;
  std::map<std::string, std::filesystem::path> label_files;
  std::map<std::string, std::vector<std::filesystem::path>> trial_files;
};

struct SubjectData {
  std::string name;
  TrialTensor tensor;
};

/// Throws kParse (with file:line:col) on malformed or missing files.
DatasetManifest read_manifest(const std::filesystem::path& manifest_path);

/// Loads every subject. `channels` selects (and orders) a channel subset by
/// name; empty keeps the manifest order. Throws kParse, kChannelMissing,
/// kLabelMismatch.
std::vector<SubjectData> load_dataset(const std::filesystem::path& manifest_path,
                                      const std::vector<std::string>& channels = {});

/// Writes trials as CSV plus labels and a manifest under `dir` (created if needed).
void write_dataset(const std::filesystem::path& dir, const std::vector<SubjectData>& subjects,
                   const std::vector<std::string>& channel_names, const std::vector<std::string>& class_names = {});

// ---- synthetic data ---------------------------------------------------------

struct SynthParams {
  std::size_t n_trials = 80;
  int classes = 2;  // 1..4
  std::size_t channels = 4;
  std::size_t samples = 500;
  double sample_rate = 250.0;
  double snr = 1.0;  // linear power ratio per active channel; infinity = noiseless
  std::uint64_t seed = 0;
};

/// Class c drives a sinusoid on a class-specific channel pair over white noise:
/// 0 -> 10 Hz on channels 0,1; 1 -> 22 Hz on 2,3; 2 -> 6 Hz on 0,2; 3 -> 27 Hz on 1,3
/// (indices wrap for fewer channels). Labels cycle 0,1,..,classes-1.
TrialTensor synth_generate(const SynthParams& params);

/// Frequency (Hz) carried by a synthetic class.
double synth_class_frequency(int cls);

// ---- partitions -------------------------------------------------------------

struct Split {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

/// Stratified random splits; partition p uses seed + p. Per class,
/// round(fraction * count) trials (at least one on each side) go to train.
/// Throws kNotEnoughTrials when a class has fewer than two trials.
std::vector<Split> partition(std::span<const int> labels, std::size_t n_partitions, double fraction,
                             std::uint64_t seed);

// ---- experiment -------------------------------------------------------------

struct ExperimentConfig {
  std::vector<Framework> frameworks{Framework::kTraditional};
  std::vector<AggregatorKind> aggregators{AggregatorKind::kMean};
  std::vector<ImplicationKind> implications{ImplicationKind::kLukasiewicz};
  double alpha = 0.5;
  double beta = 1.0;
  std::vector<BandSpec> bands = standard_bands();
  std::size_t n_csp = 25;
  double y_width = kDefaultIntervalWidth;
  std::size_t partitions = 20;
  double train_fraction = 0.5;
  double m_p = 1.0;
  double m_n = 1.0;
  bool md_search = false;
  std::size_t md_samples = 200;
  Decision decision = Decision::kOrderMin;
  ClassifierSpec traditional_classifier{ClassifierKind::kLda};
  std::vector<ClassifierKind> mff_classifiers{ClassifierKind::kLda, ClassifierKind::kQda, ClassifierKind::kKnn};
  int knn_k = 5;
  double qda_reg = 1e-3;
  std::vector<std::string> channels;  // subset by name; empty = all
  std::optional<std::uint64_t> seed;

  /// Throws kConfig.
  void validate() const;
};

/// Sets one dotted key. Throws kConfig on unknown keys or bad values.
void apply_config_key(ExperimentConfig& cfg, const std::string& key, const std::string& value);

/// Parses `key=value` lines; '#' starts a comment.
ExperimentConfig parse_config(std::istream& in, const std::string& origin = "<config>");
ExperimentConfig load_config(const std::filesystem::path& path);

struct ResultRow {
  std::string subject;
  Framework framework = Framework::kTraditional;
  AggregatorKind aggregator = AggregatorKind::kMean;
  std::optional<ImplicationKind> implication;  // none for the numeric mean
  std::size_t partition = 0;
  std::size_t correct = 0;
  std::size_t total = 0;

  double accuracy() const { return total == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(total); }
};

struct SummaryRow {
  Framework framework;
  AggregatorKind aggregator;
  std::optional<ImplicationKind> implication;
  double mean = 0.0;
  double std = 0.0;  // population
  std::size_t count = 0;
};

struct ResultTable {
  std::vector<ResultRow> rows;

  /// Mean and population std per (framework, aggregator, implication), in
  /// first-appearance order.
  std::vector<SummaryRow> summary() const;
};

/// Full protocol per subject and partition. Requires cfg.seed. Errors are
/// rethrown with the subject and partition prepended.
ResultTable run_experiment(const ExperimentConfig& cfg, const std::vector<SubjectData>& data);

/// subject,framework,aggregator,implication,partition,accuracy rows, a blank
/// line, then framework,aggregator,implication,mean,std.
void write_report(std::ostream& out, const ResultTable& table);

/// Shortest round-trip decimal form.
std::string format_double(double v);

/// Process exit code for a library error: 2 config, 3 data, 4 solver.
int exit_code_for(ErrorCode code);

}  // namespace ivmd
