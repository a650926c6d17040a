#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "ivmd/experiment.hpp"
#include "text.hpp"

namespace ivmd {

namespace fs = std::filesystem;

namespace {

[[noreturn]] void parse_error(const fs::path& file, std::size_t line, std::size_t col, const std::string& what) {
  std::string where = file.string();
  if (line > 0) where += ":" + std::to_string(line);
  if (col > 0) where += ":" + std::to_string(col);
  throw Error(ErrorCode::kParse, where + ": " + what);
}

std::ifstream open_or_throw(const fs::path& file) {
  std::ifstream in(file);
  if (!in) parse_error(file, 0, 0, "cannot open file");
  return in;
}

// Reads one trial CSV into a channels x samples matrix restricted to `wanted`
// (column indices into the header).
Eigen::MatrixXd read_trial(const fs::path& file, const std::vector<std::string>& channels,
                           const std::vector<std::string>& wanted_names) {
  auto in = open_or_throw(file);
  std::string line;
  if (!std::getline(in, line)) parse_error(file, 1, 0, "empty file, expected a header of channel names");
  const auto header = text::split(line, ',');
  if (header != channels) {
    parse_error(file, 1, 0, "header does not match the manifest channel list");
  }
  std::vector<std::size_t> cols;
  for (const auto& name : wanted_names) {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw Error(ErrorCode::kChannelMissing, file.string() + ": no channel '" + name + "'");
    cols.push_back(static_cast<std::size_t>(it - header.begin()));
  }

  std::vector<std::vector<double>> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    const auto fields = text::split(line, ',');
    if (fields.size() != header.size()) {
      parse_error(file, line_no, 0,
                  "expected " + std::to_string(header.size()) + " fields, got " + std::to_string(fields.size()));
    }
    std::vector<double> row(cols.size());
    for (std::size_t j = 0; j < fields.size(); ++j) {
      const auto v = text::to_double(fields[j]);
      if (!v) parse_error(file, line_no, j + 1, "not a number: '" + fields[j] + "'");
      const auto it = std::find(cols.begin(), cols.end(), j);
      if (it != cols.end()) row[static_cast<std::size_t>(it - cols.begin())] = *v;
    }
    rows.push_back(std::move(row));
  }
  Eigen::MatrixXd m(static_cast<Eigen::Index>(cols.size()), static_cast<Eigen::Index>(rows.size()));
  for (std::size_t s = 0; s < rows.size(); ++s) {
    for (std::size_t c = 0; c < cols.size(); ++c) {
      m(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(s)) = rows[s][c];
    }
  }
  return m;
}

std::map<std::string, int> read_labels(const fs::path& file, const std::vector<std::string>& class_names) {
  auto in = open_or_throw(file);
  std::map<std::string, int> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    const auto fields = text::split(line, ',');
    if (fields.size() != 2) parse_error(file, line_no, 0, "expected trial_id,class");
    if (line_no == 1 && fields[0] == "trial_id") continue;
    int cls = -1;
    if (const auto it = std::find(class_names.begin(), class_names.end(), fields[1]); it != class_names.end()) {
      cls = static_cast<int>(it - class_names.begin());
    } else if (const auto v = text::to_int<int>(fields[1])) {
      cls = *v;
    } else {
      parse_error(file, line_no, 2, "unknown class '" + fields[1] + "'");
    }
    if (cls < 0 || (!class_names.empty() && cls >= static_cast<int>(class_names.size()))) {
      throw Error(ErrorCode::kLabelMismatch, file.string() + ":" + std::to_string(line_no) + ": class index " +
                                                 std::to_string(cls) + " out of range");
    }
    if (!out.emplace(fields[0], cls).second) parse_error(file, line_no, 1, "duplicate trial id '" + fields[0] + "'");
  }
  return out;
}

std::string join(const std::vector<std::string>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? "," : "") + xs[i];
  return out;
}

}  // namespace

DatasetManifest read_manifest(const fs::path& manifest_path) {
  auto in = open_or_throw(manifest_path);
  DatasetManifest m;
  m.root = manifest_path.parent_path();
  std::map<std::string, std::string> kv;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = text::trim(std::string_view(line).substr(0, line.find('#')));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) parse_error(manifest_path, line_no, 0, "expected key=value");
    const std::string key(text::trim(body.substr(0, eq)));
    if (!kv.emplace(key, std::string(text::trim(body.substr(eq + 1)))).second) {
      parse_error(manifest_path, line_no, 0, "duplicate key '" + key + "'");
    }
  }
  auto require = [&](const std::string& key) -> const std::string& {
    const auto it = kv.find(key);
    if (it == kv.end()) parse_error(manifest_path, 0, 0, "missing key '" + key + "'");
    return it->second;
  };

  const auto rate = text::to_double(require("sample_rate"));
  if (!rate || !(*rate > 0.0)) parse_error(manifest_path, 0, 0, "sample_rate must be a positive number");
  m.sample_rate = *rate;
  m.channels = text::split(require("channels"), ',');
  if (m.channels.empty()) parse_error(manifest_path, 0, 0, "channels is empty");
  if (const auto it = kv.find("classes"); it != kv.end()) m.class_names = text::split(it->second, ',');
  m.subjects = text::split(require("subjects"), ',');
  if (m.subjects.empty()) parse_error(manifest_path, 0, 0, "subjects is empty");

  for (const auto& subject : m.subjects) {
    m.label_files[subject] = m.root / require(subject + ".labels");
    auto& files = m.trial_files[subject];
    for (const auto& rel : text::split(require(subject + ".trials"), ',')) files.push_back(m.root / rel);
    if (files.empty()) parse_error(manifest_path, 0, 0, "subject '" + subject + "' lists no trials");
    for (const auto& f : files) {
      if (!fs::exists(f)) parse_error(f, 0, 0, "trial file listed in manifest does not exist");
    }
    if (!fs::exists(m.label_files[subject])) parse_error(m.label_files[subject], 0, 0, "label file does not exist");
  }
  return m;
}

std::vector<SubjectData> load_dataset(const fs::path& manifest_path, const std::vector<std::string>& channels) {
  const DatasetManifest m = read_manifest(manifest_path);
  const std::vector<std::string>& wanted = channels.empty() ? m.channels : channels;
  for (const auto& name : wanted) {
    if (std::find(m.channels.begin(), m.channels.end(), name) == m.channels.end()) {
      throw Error(ErrorCode::kChannelMissing, "channel '" + name + "' is not in the manifest");
    }
  }

  std::vector<SubjectData> out;
  for (const auto& subject : m.subjects) {
    const auto labels = read_labels(m.label_files.at(subject), m.class_names);
    SubjectData sd{subject, {}};
    sd.tensor.sample_rate = m.sample_rate;
    std::set<std::string> seen;
    for (const auto& file : m.trial_files.at(subject)) {
      const std::string id = file.stem().string();
      const auto it = labels.find(id);
      if (it == labels.end()) {
        throw Error(ErrorCode::kLabelMismatch, "trial '" + id + "' of subject " + subject + " has no label");
      }
      seen.insert(id);
      sd.tensor.trials.push_back(read_trial(file, m.channels, wanted));
      sd.tensor.labels.push_back(it->second);
      if (sd.tensor.trials.back().cols() != sd.tensor.trials.front().cols()) {
        parse_error(file, 0, 0, "sample count differs from the first trial of the subject");
      }
    }
    for (const auto& [id, cls] : labels) {
      if (!seen.count(id)) {
        throw Error(ErrorCode::kLabelMismatch, m.label_files.at(subject).string() + ": unknown trial id '" + id + "'");
      }
    }
    sd.tensor.validate();
    out.push_back(std::move(sd));
  }
  return out;
}

void write_dataset(const fs::path& dir, const std::vector<SubjectData>& subjects,
                   const std::vector<std::string>& channel_names, const std::vector<std::string>& class_names) {
  fs::create_directories(dir);
  std::ostringstream manifest;
  std::vector<std::string> names;
  for (const auto& s : subjects) names.push_back(s.name);
  const double rate = subjects.empty() ? 0.0 : subjects.front().tensor.sample_rate;
  manifest << "sample_rate=" << format_double(rate) << "\n";
  manifest << "channels=" << join(channel_names) << "\n";
  if (!class_names.empty()) manifest << "classes=" << join(class_names) << "\n";
  manifest << "subjects=" << join(names) << "\n";

  for (const auto& s : subjects) {
    if (s.tensor.num_channels() != channel_names.size()) {
      throw Error(ErrorCode::kChannelMismatch, "subject " + s.name + " has a different channel count");
    }
    fs::create_directories(dir / s.name);
    std::ofstream labels(dir / s.name / "labels.csv");
    labels << "trial_id,class\n";
    std::vector<std::string> trial_paths;
    for (std::size_t t = 0; t < s.tensor.num_trials(); ++t) {
      char id[32];
      std::snprintf(id, sizeof id, "t%04zu", t);
      trial_paths.push_back(s.name + "/" + id + ".csv");
      labels << id << "," << s.tensor.labels[t] << "\n";
      std::ofstream trial(dir / s.name / (std::string(id) + ".csv"));
      trial << join(channel_names) << "\n";
      const auto& x = s.tensor.trials[t];
      for (Eigen::Index j = 0; j < x.cols(); ++j) {
        for (Eigen::Index c = 0; c < x.rows(); ++c) trial << (c ? "," : "") << format_double(x(c, j));
        trial << "\n";
      }
      if (!trial) throw Error(ErrorCode::kParse, "failed writing " + (dir / trial_paths.back()).string());
    }
    manifest << s.name << ".labels=" << s.name << "/labels.csv\n";
    manifest << s.name << ".trials=" << join(trial_paths) << "\n";
  }
  std::ofstream out(dir / "manifest.txt");
  out << manifest.str();
  if (!out) throw Error(ErrorCode::kParse, "failed writing " + (dir / "manifest.txt").string());
}

}  // namespace ivmd
