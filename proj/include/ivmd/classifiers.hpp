#pragma once

#include <Eigen/Dense>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

namespace ivmd {

enum class ClassifierKind { kLda, kQda, kKnn };

struct ClassifierSpec {
  ClassifierKind kind = ClassifierKind::kLda;
  double qda_reg = 1e-3;  // diagonal loading, as a fraction of trace / dim
  int knn_k = 5;
};

std::string_view to_string(ClassifierKind kind);
ClassifierKind parse_classifier(std::string_view name);

namespace detail {

struct LdaParams {
  Eigen::MatrixXd means;  // classes x dim
  Eigen::LLT<Eigen::MatrixXd> pooled;
  Eigen::VectorXd log_priors;
};

struct QdaParams {
  Eigen::MatrixXd means;
  std::vector<Eigen::LLT<Eigen::MatrixXd>> covariances;
  Eigen::VectorXd log_dets;
  Eigen::VectorXd log_priors;
};

struct KnnParams {
  Eigen::MatrixXd train;
  std::vector<int> class_index;  // per training row, index into classes
  int k = 5;
};

}  // namespace detail

/// Immutable fitted classifier. Columns of predict_proba follow `classes`
/// (sorted distinct training labels).
struct TrainedModel {
  ClassifierSpec spec;
  std::vector<int> classes;
  Eigen::Index dim = 0;
  std::variant<detail::LdaParams, detail::QdaParams, detail::KnnParams> params;
};

/// Throws kNotEnoughClasses (< 2 classes or < 2 samples in a class),
/// kDegenerateFeatures (non-finite features), kDimensionMismatch.
TrainedModel fit(const ClassifierSpec& spec, const Eigen::MatrixXd& features, std::span<const int> labels);

/// samples x classes; each row is a probability vector.
Eigen::MatrixXd predict_proba(const TrainedModel& model, const Eigen::MatrixXd& features);

}  // namespace ivmd
