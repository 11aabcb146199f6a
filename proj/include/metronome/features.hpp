#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "metronome/corpus.hpp"

namespace metronome {

class FeatureError : public Error {
 public:
  enum class Kind { TooShort, DimsTooLarge, Empty };

  FeatureError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

/// The `top` most frequent symbol n-grams of a corpus, most frequent first,
/// ties in lexicographic order.
struct NgramVocabulary {
  std::size_t n = 9;
  std::vector<std::string> grams;
};

NgramVocabulary build_ngram_vocabulary(std::span<const CorpusRecord> corpus, std::size_t n = 9,
                                       std::size_t top = 500);

/// One row per record: count of each vocabulary n-gram divided by the
/// record's total number of overlapping n-grams (out-of-vocabulary ones
/// included), so a row sums to at most 1. Throws TooShort for records with
/// fewer than n symbols.
Eigen::MatrixXd ngram_frequencies(std::span<const CorpusRecord> corpus,
                                  const NgramVocabulary& vocabulary);

struct NgramFeatures {
  NgramVocabulary vocabulary;
  Eigen::MatrixXd rows;
};

NgramFeatures ngram_features(std::span<const CorpusRecord> corpus, std::size_t n = 9,
                             std::size_t top = 500);

/// Truncated SVD (no centering). Rows are projected onto the leading right
/// singular vectors; each vector's largest-magnitude component is made
/// positive so the projection is reproducible.
class SvdProjection {
 public:
  static SvdProjection fit(const Eigen::MatrixXd& x, std::size_t dims);

  Eigen::MatrixXd transform(const Eigen::MatrixXd& x) const { return x * basis_; }
  const Eigen::MatrixXd& basis() const noexcept { return basis_; }  // cols x dims
  const Eigen::VectorXd& singular_values() const noexcept { return singular_values_; }

 private:
  Eigen::MatrixXd basis_;
  Eigen::VectorXd singular_values_;
};

/// fit(x, dims).transform(x). Throws DimsTooLarge if dims > min(rows, cols).
Eigen::MatrixXd svd_project(const Eigen::MatrixXd& x, std::size_t dims);

/// Per-column standardization to mean 0 and (population) sd 1; constant
/// columns map to 0.
class ZScaler {
 public:
  static ZScaler fit(const Eigen::MatrixXd& x);
  Eigen::MatrixXd transform(const Eigen::MatrixXd& x) const;

 private:
  Eigen::RowVectorXd mean_;
  Eigen::RowVectorXd scale_;  // 0 for constant columns
};

Eigen::MatrixXd zscale(const Eigen::MatrixXd& x);

}  // namespace metronome
