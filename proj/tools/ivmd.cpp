// ivmd command line: run experiments, generate synthetic EEG, fuse CSV tuples, self-test.

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "ivmd/experiment.hpp"
#include "ivmd/fusion.hpp"
#include "ivmd/selftest.hpp"

namespace {

using namespace ivmd;

struct RunArgs {
  std::string config;
  std::string data;
  std::string out;
  std::uint64_t seed = 0;
  std::vector<std::string> overrides;
  std::string decision;
};

struct SynthArgs {
  std::string out;
  SynthParams params;
  std::size_t subjects = 1;
  std::string snr = "1";
};

struct FuseArgs {
  std::string input = "-";
  std::string output = "-";
  std::string kind = "intervals";
  std::string aggregator = "md2";
  std::string implication = "lukasiewicz";
  double alpha = 0.5;
  double beta = 1.0;
  double y_width = kDefaultIntervalWidth;
  double m_p = 1.0;
  double m_n = 1.0;
};

int cmd_run(const RunArgs& a) {
  ExperimentConfig cfg = a.config.empty() ? ExperimentConfig{} : load_config(a.config);
  for (const auto& kv : a.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::kConfig, "--set expects key=value, got '" + kv + "'");
    apply_config_key(cfg, kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (!a.decision.empty()) cfg.decision = parse_decision(a.decision);
  cfg.seed = a.seed;
  cfg.validate();

  const auto data = load_dataset(a.data, cfg.channels);
  const ResultTable table = run_experiment(cfg, data);

  std::ofstream out(a.out, std::ios::binary);
  if (!out) throw Error(ErrorCode::kConfig, "cannot write report " + a.out);
  write_report(out, table);
  for (const auto& s : table.summary()) {
    std::cerr << to_string(s.framework) << " " << to_string(s.aggregator) << " "
              << (s.implication ? std::string(to_string(*s.implication)) : std::string("-")) << ": " << s.mean
              << " +- " << s.std << "\n";
  }
  return 0;
}

int cmd_synth(SynthArgs a) {
  if (a.snr == "inf") {
    a.params.snr = std::numeric_limits<double>::infinity();
  } else {
    try {
      a.params.snr = std::stod(a.snr);
    } catch (const std::exception&) {
      throw Error(ErrorCode::kConfig, "--snr expects a number or 'inf'");
    }
  }
  std::vector<std::string> channels;
  const std::vector<std::string> motor{"C3", "C4", "CP3", "CP4"};
  for (std::size_t c = 0; c < a.params.channels; ++c) {
    channels.push_back(a.params.channels == motor.size() ? motor[c] : "ch" + std::to_string(c));
  }
  std::vector<SubjectData> subjects;
  for (std::size_t s = 0; s < a.subjects; ++s) {
    SynthParams p = a.params;
    p.seed = a.params.seed + s;
    subjects.push_back({"S" + std::to_string(s + 1), synth_generate(p)});
  }
  write_dataset(a.out, subjects, channels);
  std::cerr << "wrote " << a.subjects << " subject(s) to " << a.out << "/manifest.txt\n";
  return 0;
}

std::vector<double> parse_row(const std::string& line, std::size_t line_no) {
  std::vector<double> out;
  std::stringstream ss(line);
  std::string field;
  std::size_t col = 0;
  while (std::getline(ss, field, ',')) {
    ++col;
    try {
      std::size_t used = 0;
      out.push_back(std::stod(field, &used));
      if (field.find_first_not_of(" \t\r", used) != std::string::npos) throw std::invalid_argument(field);
    } catch (const std::exception&) {
      throw Error(ErrorCode::kParse, "line " + std::to_string(line_no) + ", column " + std::to_string(col) +
                                         ": not a number: '" + field + "'");
    }
  }
  return out;
}

int cmd_fuse(const FuseArgs& a) {
  const OrderParams order(a.alpha, a.beta);
  const Aggregator agg{parse_aggregator(a.aggregator), a.m_p, a.m_n};
  const ImplicationKind impl = parse_implication(a.implication);
  const bool probs = a.kind == "probabilities";
  if (!probs && a.kind != "intervals") throw Error(ErrorCode::kConfig, "--kind is intervals or probabilities");
  if (!probs && !agg.interval_valued()) throw Error(ErrorCode::kConfig, "mean applies to probabilities only");

  std::ifstream file;
  if (a.input != "-") {
    file.open(a.input);
    if (!file) throw Error(ErrorCode::kParse, "cannot open " + a.input);
  }
  std::istream& in = a.input == "-" ? std::cin : file;
  std::ofstream out_file;
  if (a.output != "-") out_file.open(a.output, std::ios::binary);
  std::ostream& out = a.output == "-" ? std::cout : out_file;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos || line[line.find_first_not_of(" \t")] == '#') continue;
    const auto values = parse_row(line, line_no);
    if (probs && !agg.interval_valued()) {
      double sum = 0.0;
      for (double v : values) sum += v;
      out << format_double(sum / static_cast<double>(values.size())) << "\n";
      continue;
    }
    std::vector<UnitInterval> tuple;
    if (probs) {
      for (double v : values) tuple.push_back(build_interval(impl, v, a.y_width));
    } else {
      if (values.size() % 2 != 0) {
        throw Error(ErrorCode::kParse, "line " + std::to_string(line_no) + ": expected lo,hi pairs");
      }
      for (std::size_t i = 0; i < values.size(); i += 2) tuple.emplace_back(values[i], values[i + 1]);
    }
    const UnitInterval y = aggregate_intervals(tuple, agg, order);
    out << format_double(y.lower()) << "," << format_double(y.upper()) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Interval-valued moderate deviation aggregation and EEG fusion experiments"};
  app.require_subcommand(1);

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Run a fusion experiment and write a CSV report");
  run_cmd->add_option("--config", run.config, "key=value config file");
  run_cmd->add_option("--data", run.data, "dataset manifest")->required();
  run_cmd->add_option("--out", run.out, "report CSV path")->required();
  run_cmd->add_option("--seed", run.seed, "random seed")->required();
  run_cmd->add_option("--set", run.overrides, "override a config key (key=value), repeatable");
  run_cmd->add_option("--decision", run.decision, "winning end of the interval order: min or max");

  SynthArgs synth;
  auto* synth_cmd = app.add_subcommand("synth", "Write a synthetic EEG dataset as CSV");
  synth_cmd->add_option("--out", synth.out, "output directory")->required();
  synth_cmd->add_option("--trials", synth.params.n_trials, "trials per subject")->capture_default_str();
  synth_cmd->add_option("--classes", synth.params.classes, "number of classes (1-4)")->capture_default_str();
  synth_cmd->add_option("--channels", synth.params.channels, "channel count")->capture_default_str();
  synth_cmd->add_option("--samples", synth.params.samples, "samples per trial")->capture_default_str();
  synth_cmd->add_option("--rate", synth.params.sample_rate, "sample rate in Hz")->capture_default_str();
  synth_cmd->add_option("--snr", synth.snr, "linear SNR per active channel, or inf")->capture_default_str();
  synth_cmd->add_option("--seed", synth.params.seed, "random seed")->capture_default_str();
  synth_cmd->add_option("--subjects", synth.subjects, "number of subjects")->capture_default_str();

  FuseArgs fuse;
  auto* fuse_cmd = app.add_subcommand("fuse", "Aggregate each CSV row (intervals lo,hi,... or probabilities)");
  fuse_cmd->add_option("--input", fuse.input, "input CSV, - for stdin")->capture_default_str();
  fuse_cmd->add_option("--out", fuse.output, "output CSV, - for stdout")->capture_default_str();
  fuse_cmd->add_option("--kind", fuse.kind, "intervals or probabilities")->capture_default_str();
  fuse_cmd->add_option("--aggregator", fuse.aggregator, "mean, owa1, owa2, owa3, md1, md2")->capture_default_str();
  fuse_cmd->add_option("--implication", fuse.implication, "kleene_dienes, lukasiewicz, reichenbach")
      ->capture_default_str();
  fuse_cmd->add_option("--alpha", fuse.alpha, "primary order parameter")->capture_default_str();
  fuse_cmd->add_option("--beta", fuse.beta, "tie-break order parameter")->capture_default_str();
  fuse_cmd->add_option("--y-width", fuse.y_width, "implication consequent / interval width")->capture_default_str();
  fuse_cmd->add_option("--mp", fuse.m_p, "M_p for md1/md2")->capture_default_str();
  fuse_cmd->add_option("--mn", fuse.m_n, "M_n for md1/md2")->capture_default_str();

  std::uint64_t selftest_seed = 1;
  int selftest_trials = 200;
  auto* selftest_cmd = app.add_subcommand("selftest", "Oracle-equivalence and property checks");
  selftest_cmd->add_option("--seed", selftest_seed)->capture_default_str();
  selftest_cmd->add_option("--trials", selftest_trials)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*run_cmd) return cmd_run(run);
    if (*synth_cmd) return cmd_synth(synth);
    if (*fuse_cmd) return cmd_fuse(fuse);
    if (*selftest_cmd) return run_selftest(std::cout, selftest_seed, selftest_trials) == 0 ? 0 : 4;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
