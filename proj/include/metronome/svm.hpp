#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "metronome/error.hpp"
#include "metronome/random.hpp"

namespace metronome {

class SvmError : public Error {
 public:
  enum class Kind { DegenerateSplit, DimensionMismatch };

  SvmError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

struct SvmConfig {
  double c = 1.0;            // soft-margin constant; lambda = 1 / (c * n_train)
  std::size_t epochs = 100;  // passes over the shuffled training set
};

/// One-vs-rest linear soft-margin SVM trained with Pegasos-style stochastic
/// subgradient steps (step 1/(lambda t), projection onto the 1/sqrt(lambda)
/// ball). The bias is an extra constant-1 feature.
class LinearSvm {
 public:
  /// `labels` are class indices in [0, classes).
  static LinearSvm train(const Eigen::MatrixXd& x, std::span<const std::size_t> labels,
                         std::size_t classes, const SvmConfig& config, Rng& rng);

  /// Highest-scoring class; ties go to the lower index.
  std::size_t predict(const Eigen::Ref<const Eigen::RowVectorXd>& row) const;

 private:
  Eigen::MatrixXd weights_;  // classes x (features + 1)
};

struct TrainTestSplit {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

/// Per-label split: round(fraction * size) members of each label go to
/// training (at least one, and at least one left for testing when a label
/// has two or more members). Throws DegenerateSplit if training covers fewer
/// than two labels or the test side is empty.
TrainTestSplit stratified_split(std::span<const std::string> labels, double train_fraction, Rng& rng);

struct SvmEvaluation {
  double accuracy = 0.0;
  std::vector<std::size_t> test;          // row indices of the test split
  std::vector<std::string> predictions;  // parallel to test
};

/// Splits, trains on the training rows and scores the test rows.
SvmEvaluation svm_train_eval(const Eigen::MatrixXd& features, std::span<const std::string> labels,
                             double train_fraction, Rng& rng, const SvmConfig& config = {});

}  // namespace metronome
