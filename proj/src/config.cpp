#include <cmath>
#include <fstream>
#include <istream>

#include "ivmd/experiment.hpp"
#include "text.hpp"

namespace ivmd {

namespace {

[[noreturn]] void bad(const std::string& key, const std::string& value, const std::string& why) {
  throw Error(ErrorCode::kConfig, key + "=" + value + ": " + why);
}

double as_double(const std::string& key, const std::string& value) {
  const auto v = text::to_double(value);
  if (!v || !std::isfinite(*v)) bad(key, value, "expected a number");
  return *v;
}

std::size_t as_count(const std::string& key, const std::string& value) {
  const auto v = text::to_int<std::size_t>(value);
  if (!v) bad(key, value, "expected a non-negative integer");
  return *v;
}

bool as_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
  if (value == "false" || value == "0" || value == "no" || value == "off") return false;
  bad(key, value, "expected true or false");
}

template <class T, class Parse>
std::vector<T> as_list(const std::string& key, const std::string& value, Parse parse) {
  std::vector<T> out;
  for (const auto& item : text::split(value, ',')) out.push_back(parse(item));
  if (out.empty()) bad(key, value, "expected a non-empty list");
  return out;
}

}  // namespace

void ExperimentConfig::validate() const {
  auto fail = [](const std::string& msg) { throw Error(ErrorCode::kConfig, msg); };
  if (frameworks.empty() || aggregators.empty() || implications.empty()) {
    fail("framework, aggregator and implication lists must be non-empty");
  }
  try {
    OrderParams check(alpha, beta);
    (void)check;
  } catch (const Error& e) {
    fail(std::string("order: ") + e.message());
  }
  if (bands.empty()) fail("bands must be non-empty");
  if (n_csp < 1) fail("n_csp must be >= 1");
  if (!(y_width >= 0.0 && y_width <= 1.0)) fail("y_width must be in [0, 1]");
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) fail("train_fraction must be in (0, 1)");
  if (!(m_p > 0.0 && m_n > 0.0)) fail("md.mp and md.mn must be positive");
  if (md_samples < 1) fail("md.samples must be >= 1");
  if (knn_k < 1) fail("knn.k must be >= 1");
  if (qda_reg < 0.0) fail("qda.reg must be >= 0");
  if (mff_classifiers.empty()) fail("mff.classifiers must be non-empty");
}

void apply_config_key(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "framework") {
    cfg.frameworks = as_list<Framework>(key, value, [](const std::string& s) { return parse_framework(s); });
  } else if (key == "aggregator") {
    cfg.aggregators = as_list<AggregatorKind>(key, value, [](const std::string& s) { return parse_aggregator(s); });
  } else if (key == "implication") {
    cfg.implications = as_list<ImplicationKind>(key, value, [](const std::string& s) { return parse_implication(s); });
  } else if (key == "order.alpha") {
    cfg.alpha = as_double(key, value);
  } else if (key == "order.beta") {
    cfg.beta = as_double(key, value);
  } else if (key == "bands") {
    if (value == "standard") {
      cfg.bands = standard_bands();
    } else if (value == "standard+smr" || value == "smr_preset") {
      cfg.bands = standard_bands_with_smr();
    } else {
      cfg.bands = as_list<BandSpec>(key, value, [](const std::string& s) { return parse_band(s); });
    }
  } else if (key == "n_csp") {
    cfg.n_csp = as_count(key, value);
  } else if (key == "y_width") {
    cfg.y_width = as_double(key, value);
  } else if (key == "partitions") {
    cfg.partitions = as_count(key, value);
  } else if (key == "train_fraction") {
    cfg.train_fraction = as_double(key, value);
  } else if (key == "md.mp") {
    cfg.m_p = as_double(key, value);
  } else if (key == "md.mn") {
    cfg.m_n = as_double(key, value);
  } else if (key == "md.search") {
    cfg.md_search = as_bool(key, value);
  } else if (key == "md.samples") {
    cfg.md_samples = as_count(key, value);
  } else if (key == "decision") {
    cfg.decision = parse_decision(value);
  } else if (key == "knn.k") {
    const auto k = as_count(key, value);
    if (k < 1 || k > 1'000'000) bad(key, value, "expected 1..1000000");
    cfg.knn_k = static_cast<int>(k);
  } else if (key == "qda.reg") {
    cfg.qda_reg = as_double(key, value);
  } else if (key == "mff.classifiers") {
    cfg.mff_classifiers = as_list<ClassifierKind>(key, value, [](const std::string& s) { return parse_classifier(s); });
  } else if (key == "traditional.classifier") {
    cfg.traditional_classifier.kind = parse_classifier(value);
  } else if (key == "channels") {
    cfg.channels = text::split(value, ',');
  } else if (key == "seed") {
    const auto v = text::to_int<std::uint64_t>(value);
    if (!v) bad(key, value, "expected a non-negative integer");
    cfg.seed = *v;
  } else {
    throw Error(ErrorCode::kConfig, "unknown config key '" + key + "'");
  }
  cfg.traditional_classifier.knn_k = cfg.knn_k;
  cfg.traditional_classifier.qda_reg = cfg.qda_reg;
}

ExperimentConfig parse_config(std::istream& in, const std::string& origin) {
  ExperimentConfig cfg;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = text::trim(std::string_view(line).substr(0, line.find('#')));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::kConfig, origin + ":" + std::to_string(line_no) + ": expected key=value");
    }
    try {
      apply_config_key(cfg, std::string(text::trim(body.substr(0, eq))), std::string(text::trim(body.substr(eq + 1))));
    } catch (const Error& e) {
      throw Error(ErrorCode::kConfig, origin + ":" + std::to_string(line_no) + ": " + e.message());
    }
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kConfig, "cannot open config " + path.string());
  return parse_config(in, path.string());
}

}  // namespace ivmd
