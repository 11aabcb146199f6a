#include "metronome/svm.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

namespace metronome {

LinearSvm LinearSvm::train(const Eigen::MatrixXd& x, std::span<const std::size_t> labels,
                           std::size_t classes, const SvmConfig& config, Rng& rng) {
  const auto n = static_cast<std::size_t>(x.rows());
  if (labels.size() != n) {
    throw SvmError(SvmError::Kind::DimensionMismatch, "svm: " + std::to_string(labels.size()) +
                                                          " labels for " + std::to_string(n) + " rows");
  }
  const Eigen::Index d = x.cols() + 1;
  Eigen::MatrixXd augmented(x.rows(), d);
  augmented.leftCols(x.cols()) = x;
  augmented.col(x.cols()).setOnes();

  const double lambda = 1.0 / (config.c * static_cast<double>(std::max<std::size_t>(n, 1)));
  const double radius = 1.0 / std::sqrt(lambda);

  LinearSvm svm;
  svm.weights_ = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(classes), d);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);

  std::size_t t = 0;
  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    rng.shuffle(std::span<std::size_t>(order));
    for (const std::size_t i : order) {
      ++t;
      const double eta = 1.0 / (lambda * static_cast<double>(t));
      const auto row = augmented.row(static_cast<Eigen::Index>(i));
      for (std::size_t c = 0; c < classes; ++c) {
        auto w = svm.weights_.row(static_cast<Eigen::Index>(c));
        const double y = labels[i] == c ? 1.0 : -1.0;
        const double margin = y * w.dot(row);
        w *= 1.0 - eta * lambda;
        if (margin < 1.0) w += eta * y * row;
        const double norm = w.norm();
        if (norm > radius) w *= radius / norm;
      }
    }
  }
  return svm;
}

std::size_t LinearSvm::predict(const Eigen::Ref<const Eigen::RowVectorXd>& row) const {
  const Eigen::Index features = weights_.cols() - 1;
  std::size_t best = 0;
  double best_score = 0.0;
  for (Eigen::Index c = 0; c < weights_.rows(); ++c) {
    const double score = weights_.row(c).head(features).dot(row) + weights_(c, features);
    if (c == 0 || score > best_score) {
      best = static_cast<std::size_t>(c);
      best_score = score;
    }
  }
  return best;
}

TrainTestSplit stratified_split(std::span<const std::string> labels, double train_fraction, Rng& rng) {
  std::map<std::string, std::vector<std::size_t>> members;
  for (std::size_t i = 0; i < labels.size(); ++i) members[labels[i]].push_back(i);

  TrainTestSplit split;
  std::set<std::string> train_labels;
  for (auto& [label, idx] : members) {
    rng.shuffle(std::span<std::size_t>(idx));
    auto take = static_cast<std::size_t>(std::llround(train_fraction * static_cast<double>(idx.size())));
    take = std::clamp<std::size_t>(take, 1, idx.size() >= 2 ? idx.size() - 1 : idx.size());
    split.train.insert(split.train.end(), idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(take));
    split.test.insert(split.test.end(), idx.begin() + static_cast<std::ptrdiff_t>(take), idx.end());
    train_labels.insert(label);
  }
  if (train_labels.size() < 2) {
    throw SvmError(SvmError::Kind::DegenerateSplit, "training split contains fewer than 2 classes");
  }
  if (split.test.empty()) throw SvmError(SvmError::Kind::DegenerateSplit, "test split is empty");
  std::sort(split.train.begin(), split.train.end());
  std::sort(split.test.begin(), split.test.end());
  return split;
}

SvmEvaluation svm_train_eval(const Eigen::MatrixXd& features, std::span<const std::string> labels,
                             double train_fraction, Rng& rng, const SvmConfig& config) {
  if (static_cast<std::size_t>(features.rows()) != labels.size()) {
    throw SvmError(SvmError::Kind::DimensionMismatch,
                   "svm: " + std::to_string(labels.size()) + " labels for " +
                       std::to_string(features.rows()) + " rows");
  }
  const TrainTestSplit split = stratified_split(labels, train_fraction, rng);

  std::vector<std::string> names(labels.begin(), labels.end());
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  auto index_of = [&](const std::string& l) {
    return static_cast<std::size_t>(std::lower_bound(names.begin(), names.end(), l) - names.begin());
  };

  Eigen::MatrixXd train_x(static_cast<Eigen::Index>(split.train.size()), features.cols());
  std::vector<std::size_t> train_y(split.train.size());
  for (std::size_t r = 0; r < split.train.size(); ++r) {
    train_x.row(static_cast<Eigen::Index>(r)) = features.row(static_cast<Eigen::Index>(split.train[r]));
    train_y[r] = index_of(labels[split.train[r]]);
  }
  const LinearSvm svm = LinearSvm::train(train_x, train_y, names.size(), config, rng);

  SvmEvaluation out;
  out.test = split.test;
  std::size_t correct = 0;
  for (const std::size_t i : split.test) {
    const std::string& predicted = names[svm.predict(features.row(static_cast<Eigen::Index>(i)))];
    correct += predicted == labels[i];
    out.predictions.push_back(predicted);
  }
  out.accuracy = static_cast<double>(correct) / static_cast<double>(split.test.size());
  return out;
}

}  // namespace metronome
