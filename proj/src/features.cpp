#include "metronome/features.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace metronome {

NgramVocabulary build_ngram_vocabulary(std::span<const CorpusRecord> corpus, std::size_t n,
                                       std::size_t top) {
  if (n == 0) throw FeatureError(FeatureError::Kind::Empty, "n-gram size must be positive");
  std::unordered_map<std::string, std::size_t> counts;
  for (const CorpusRecord& r : corpus) {
    const std::string s = r.metronome.render();
    if (s.size() < n) {
      throw FeatureError(FeatureError::Kind::TooShort,
                         "record '" + r.id + "' has " + std::to_string(s.size()) +
                             " symbols, fewer than n = " + std::to_string(n));
    }
    for (std::size_t i = 0; i + n <= s.size(); ++i) ++counts[s.substr(i, n)];
  }
  std::vector<std::pair<std::string, std::size_t>> ranked(counts.begin(), counts.end());
  std::sort(ranked.begin(), ranked.end(), [](const auto& x, const auto& y) {
    return x.second != y.second ? x.second > y.second : x.first < y.first;
  });
  if (ranked.size() > top) ranked.resize(top);

  NgramVocabulary vocab;
  vocab.n = n;
  vocab.grams.reserve(ranked.size());
  for (auto& [gram, _] : ranked) vocab.grams.push_back(std::move(gram));
  return vocab;
}

Eigen::MatrixXd ngram_frequencies(std::span<const CorpusRecord> corpus,
                                  const NgramVocabulary& vocabulary) {
  const std::size_t n = vocabulary.n;
  std::unordered_map<std::string, Eigen::Index> column;
  for (std::size_t c = 0; c < vocabulary.grams.size(); ++c) {
    column.emplace(vocabulary.grams[c], static_cast<Eigen::Index>(c));
  }
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(corpus.size()),
                                              static_cast<Eigen::Index>(vocabulary.grams.size()));
  for (std::size_t r = 0; r < corpus.size(); ++r) {
    const std::string s = corpus[r].metronome.render();
    if (s.size() < n) {
      throw FeatureError(FeatureError::Kind::TooShort,
                         "record '" + corpus[r].id + "' has " + std::to_string(s.size()) +
                             " symbols, fewer than n = " + std::to_string(n));
    }
    const std::size_t windows = s.size() - n + 1;
    for (std::size_t i = 0; i < windows; ++i) {
      if (auto it = column.find(s.substr(i, n)); it != column.end()) {
        out(static_cast<Eigen::Index>(r), it->second) += 1.0;
      }
    }
    out.row(static_cast<Eigen::Index>(r)) /= static_cast<double>(windows);
  }
  return out;
}

NgramFeatures ngram_features(std::span<const CorpusRecord> corpus, std::size_t n, std::size_t top) {
  NgramFeatures f;
  f.vocabulary = build_ngram_vocabulary(corpus, n, top);
  f.rows = ngram_frequencies(corpus, f.vocabulary);
  return f;
}

SvdProjection SvdProjection::fit(const Eigen::MatrixXd& x, std::size_t dims) {
  const auto limit = static_cast<std::size_t>(std::min(x.rows(), x.cols()));
  if (dims == 0 || dims > limit) {
    throw FeatureError(FeatureError::Kind::DimsTooLarge,
                       "cannot reduce a " + std::to_string(x.rows()) + "x" + std::to_string(x.cols()) +
                           " matrix to " + std::to_string(dims) + " dimensions");
  }
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(x, Eigen::ComputeThinV);
  const auto k = static_cast<Eigen::Index>(dims);
  SvdProjection p;
  p.basis_ = svd.matrixV().leftCols(k);
  p.singular_values_ = svd.singularValues().head(k);
  for (Eigen::Index c = 0; c < k; ++c) {
    Eigen::Index arg = 0;
    double best = -1.0;
    for (Eigen::Index r = 0; r < p.basis_.rows(); ++r) {
      const double mag = std::abs(p.basis_(r, c));
      if (mag > best) {
        best = mag;
        arg = r;
      }
    }
    if (p.basis_(arg, c) < 0.0) p.basis_.col(c) *= -1.0;
  }
  return p;
}

Eigen::MatrixXd svd_project(const Eigen::MatrixXd& x, std::size_t dims) {
  return SvdProjection::fit(x, dims).transform(x);
}

ZScaler ZScaler::fit(const Eigen::MatrixXd& x) {
  ZScaler z;
  const auto rows = static_cast<double>(x.rows());
  z.mean_ = x.colwise().mean();
  z.scale_ = Eigen::RowVectorXd::Zero(x.cols());
  for (Eigen::Index c = 0; c < x.cols(); ++c) {
    const double var = (x.col(c).array() - z.mean_(c)).square().sum() / rows;
    const double sd = std::sqrt(var);
    if (sd > 1e-12 * std::max(1.0, std::abs(z.mean_(c)))) z.scale_(c) = 1.0 / sd;
  }
  return z;
}

Eigen::MatrixXd ZScaler::transform(const Eigen::MatrixXd& x) const {
  return (x.rowwise() - mean_).array().rowwise() * scale_.array();
}

Eigen::MatrixXd zscale(const Eigen::MatrixXd& x) { return ZScaler::fit(x).transform(x); }

}  // namespace metronome
