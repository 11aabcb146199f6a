#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "metronome/corpus.hpp"
#include "metronome/distance.hpp"
#include "metronome/random.hpp"
#include "metronome/svm.hpp"

namespace metronome {

class EvalError : public Error {
 public:
  enum class Kind { InsufficientClass, DimensionMismatch, InvalidConfig, MissingLabel };

  EvalError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

enum class Method { Metronome, Uniform, Naive, NgramSvm };

/// "metronome", "uniform", "naive" or "ngram-svm".
Method parse_method(std::string_view name);
std::string_view method_name(Method method) noexcept;
/// The aligner behind an alignment-based method.
Aligner aligner_for(Method method);

struct EvalConfig {
  std::size_t per_class = 10;
  std::size_t k = 7;
  std::size_t runs = 50;
  std::uint64_t seed = 0;
  Method method = Method::Metronome;
  /// Label names whose joined values form the sampling strata.
  std::vector<std::string> class_labels{"language", "meter"};
  /// Label being predicted.
  std::string target_label = "meter";
  /// Permute the target labels within each sample (chance baseline).
  bool permute_labels = false;
  unsigned workers = 0;
  /// Replaces default_scheme() for Method::Metronome.
  std::optional<ScoreScheme> metronome_scheme;

  // n-gram pipeline
  std::size_t ngram = 9;
  std::size_t ngram_top = 500;
  std::size_t svd_dims = 50;
  double train_fraction = 0.8;
  SvmConfig svm;

  /// Throws EvalError(InvalidConfig).
  void validate() const;
};

using Confusion = std::map<std::string, std::map<std::string, std::size_t>>;  // true -> predicted

struct EvalReport {
  Method method = Method::Metronome;
  EvalConfig config;
  std::vector<double> accuracies;       // indexed by run
  double median = 0.0;
  std::vector<Confusion> run_confusion;  // indexed by run
  Confusion confusion;                   // summed over runs
};

/// Stratum key of a record: the configured label values joined with '/'.
std::string class_key(const CorpusRecord& record, std::span<const std::string> class_labels);

/// Indices of exactly per_class records from every stratum, drawn without
/// replacement, then shuffled. Strata are visited in key order. Throws
/// InsufficientClass naming the first stratum that is too small.
std::vector<std::size_t> stratified_sample_indices(std::span<const CorpusRecord> corpus,
                                                   std::size_t per_class,
                                                   std::span<const std::string> class_labels,
                                                   Rng& rng);
std::vector<CorpusRecord> stratified_sample(std::span<const CorpusRecord> corpus, std::size_t per_class,
                                            std::span<const std::string> class_labels, Rng& rng);

struct KnnResult {
  double accuracy = 0.0;
  std::vector<std::string> predictions;  // parallel to the matrix ids
};

/// Leave-one-out kNN over a precomputed matrix. Neighbors are ordered by
/// distance, then id; a vote tie goes to the label with the smallest summed
/// neighbor distance, then the lexicographically smallest label.
KnnResult knn_loo(const DistanceMatrix& matrix, std::span<const std::string> labels, std::size_t k);

/// Repeated stratified evaluation. Run r draws from Rng(child_seed(seed, r)),
/// so every run is reproducible on its own.
EvalReport run_evaluation(std::span<const CorpusRecord> corpus, const EvalConfig& config);

/// JSON: method, config, accuracies, median, confusion.
std::string format_report(const EvalReport& report);

}  // namespace metronome
