#include "ivmd/classifiers.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>

#include "ivmd/error.hpp"

namespace ivmd {

namespace {

constexpr double kLdaRidge = 1e-6;
constexpr double kRidgeFloor = 1e-12;

void add_ridge(Eigen::MatrixXd& cov, double fraction) {
  const double r = fraction * cov.trace() / static_cast<double>(cov.rows());
  cov.diagonal().array() += r > kRidgeFloor ? r : kRidgeFloor;
}

Eigen::LLT<Eigen::MatrixXd> factor(const Eigen::MatrixXd& cov) {
  Eigen::LLT<Eigen::MatrixXd> llt(cov);
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorCode::kDegenerateFeatures, "covariance not positive definite after regularization");
  }
  return llt;
}

double log_det(const Eigen::LLT<Eigen::MatrixXd>& llt) {
  return 2.0 * llt.matrixLLT().diagonal().array().log().sum();
}

double mahalanobis(const Eigen::LLT<Eigen::MatrixXd>& llt, const Eigen::VectorXd& diff) {
  return llt.matrixL().solve(diff).squaredNorm();
}

// Normalizes log-scores in place into probabilities (max-subtracted softmax).
void softmax_rows(Eigen::MatrixXd& scores) {
  for (Eigen::Index r = 0; r < scores.rows(); ++r) {
    const double m = scores.row(r).maxCoeff();
    scores.row(r) = (scores.row(r).array() - m).exp();
    scores.row(r) /= scores.row(r).sum();
  }
}

}  // namespace

std::string_view to_string(ClassifierKind kind) {
  switch (kind) {
    case ClassifierKind::kLda: return "lda";
    case ClassifierKind::kQda: return "qda";
    case ClassifierKind::kKnn: return "knn";
  }
  return "unknown";
}

ClassifierKind parse_classifier(std::string_view name) {
  if (name == "lda") return ClassifierKind::kLda;
  if (name == "qda") return ClassifierKind::kQda;
  if (name == "knn") return ClassifierKind::kKnn;
  throw Error(ErrorCode::kConfig, "unknown classifier '" + std::string(name) + "'");
}

TrainedModel fit(const ClassifierSpec& spec, const Eigen::MatrixXd& features, std::span<const int> labels) {
  if (static_cast<std::size_t>(features.rows()) != labels.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "feature rows and labels differ in length");
  }
  if (!features.allFinite()) throw Error(ErrorCode::kDegenerateFeatures, "non-finite feature values");
  if (spec.knn_k < 1) throw Error(ErrorCode::kDomain, "KNN needs k >= 1");
  if (spec.qda_reg < 0.0) throw Error(ErrorCode::kDomain, "QDA regularization must be >= 0");

  std::map<int, std::vector<Eigen::Index>> rows_by_class;
  for (std::size_t i = 0; i < labels.size(); ++i) rows_by_class[labels[i]].push_back(static_cast<Eigen::Index>(i));
  if (rows_by_class.size() < 2) throw Error(ErrorCode::kNotEnoughClasses, "need at least two classes");
  for (const auto& [label, rows] : rows_by_class) {
    if (rows.size() < 2) {
      throw Error(ErrorCode::kNotEnoughClasses, "class " + std::to_string(label) + " has fewer than two samples");
    }
  }

  TrainedModel model;
  model.spec = spec;
  model.dim = features.cols();
  for (const auto& [label, rows] : rows_by_class) model.classes.push_back(label);

  const auto n_classes = static_cast<Eigen::Index>(model.classes.size());
  const auto dim = features.cols();
  const auto n = static_cast<double>(features.rows());

  Eigen::MatrixXd means(n_classes, dim);
  Eigen::VectorXd log_priors(n_classes);
  {
    Eigen::Index c = 0;
    for (const auto& [label, rows] : rows_by_class) {
      Eigen::RowVectorXd sum = Eigen::RowVectorXd::Zero(dim);
      for (auto r : rows) sum += features.row(r);
      means.row(c) = sum / static_cast<double>(rows.size());
      log_priors(c) = std::log(static_cast<double>(rows.size()) / n);
      ++c;
    }
  }

  switch (spec.kind) {
    case ClassifierKind::kLda: {
      Eigen::MatrixXd pooled = Eigen::MatrixXd::Zero(dim, dim);
      Eigen::Index c = 0;
      for (const auto& [label, rows] : rows_by_class) {
        for (auto r : rows) {
          const Eigen::VectorXd d = (features.row(r) - means.row(c)).transpose();
          pooled.noalias() += d * d.transpose();
        }
        ++c;
      }
      pooled /= std::max(1.0, n - static_cast<double>(n_classes));
      add_ridge(pooled, kLdaRidge);
      model.params = detail::LdaParams{means, factor(pooled), log_priors};
      break;
    }
    case ClassifierKind::kQda: {
      detail::QdaParams params{means, {}, Eigen::VectorXd(n_classes), log_priors};
      Eigen::Index c = 0;
      for (const auto& [label, rows] : rows_by_class) {
        Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(dim, dim);
        for (auto r : rows) {
          const Eigen::VectorXd d = (features.row(r) - means.row(c)).transpose();
          cov.noalias() += d * d.transpose();
        }
        cov /= static_cast<double>(rows.size()) - 1.0;
        add_ridge(cov, spec.qda_reg);
        params.covariances.push_back(factor(cov));
        params.log_dets(c) = log_det(params.covariances.back());
        ++c;
      }
      model.params = std::move(params);
      break;
    }
    case ClassifierKind::kKnn: {
      detail::KnnParams params{features, {}, spec.knn_k};
      params.class_index.reserve(labels.size());
      for (int label : labels) {
        const auto it = std::lower_bound(model.classes.begin(), model.classes.end(), label);
        params.class_index.push_back(static_cast<int>(it - model.classes.begin()));
      }
      model.params = std::move(params);
      break;
    }
  }
  return model;
}

Eigen::MatrixXd predict_proba(const TrainedModel& model, const Eigen::MatrixXd& features) {
  if (features.cols() != model.dim) {
    throw Error(ErrorCode::kDimensionMismatch, "model expects " + std::to_string(model.dim) + " features, got " +
                                                   std::to_string(features.cols()));
  }
  const auto n_classes = static_cast<Eigen::Index>(model.classes.size());
  Eigen::MatrixXd out(features.rows(), n_classes);

  if (const auto* lda = std::get_if<detail::LdaParams>(&model.params)) {
    for (Eigen::Index r = 0; r < features.rows(); ++r) {
      for (Eigen::Index c = 0; c < n_classes; ++c) {
        const Eigen::VectorXd d = (features.row(r) - lda->means.row(c)).transpose();
        out(r, c) = lda->log_priors(c) - 0.5 * mahalanobis(lda->pooled, d);
      }
    }
    softmax_rows(out);
  } else if (const auto* qda = std::get_if<detail::QdaParams>(&model.params)) {
    for (Eigen::Index r = 0; r < features.rows(); ++r) {
      for (Eigen::Index c = 0; c < n_classes; ++c) {
        const Eigen::VectorXd d = (features.row(r) - qda->means.row(c)).transpose();
        out(r, c) = qda->log_priors(c) - 0.5 * qda->log_dets(c) -
                    0.5 * mahalanobis(qda->covariances[static_cast<std::size_t>(c)], d);
      }
    }
    softmax_rows(out);
  } else {
    const auto& knn = std::get<detail::KnnParams>(model.params);
    const auto n_train = static_cast<std::size_t>(knn.train.rows());
    const std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(knn.k), n_train);
    std::vector<std::pair<double, std::size_t>> dist(n_train);
    for (Eigen::Index r = 0; r < features.rows(); ++r) {
      for (std::size_t i = 0; i < n_train; ++i) {
        dist[i] = {(knn.train.row(static_cast<Eigen::Index>(i)) - features.row(r)).squaredNorm(), i};
      }
      // Pairs compare by distance, then by lower training index.
      std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k), dist.end());
      out.row(r).setZero();
      for (std::size_t j = 0; j < k; ++j) out(r, knn.class_index[dist[j].second]) += 1.0;
      out.row(r) /= static_cast<double>(k);
    }
  }
  return out;
}

}  // namespace ivmd
