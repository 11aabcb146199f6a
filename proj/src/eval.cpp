#include "metronome/eval.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include <json.hpp>

#include "metronome/features.hpp"
#include "metronome/stats.hpp"

namespace metronome {

Method parse_method(std::string_view name) {
  if (name == "metronome") return Method::Metronome;
  if (name == "uniform") return Method::Uniform;
  if (name == "naive") return Method::Naive;
  if (name == "ngram-svm") return Method::NgramSvm;
  throw EvalError(EvalError::Kind::InvalidConfig,
                  "unknown method '" + std::string(name) + "' (expected metronome, uniform, naive, ngram-svm)");
}

std::string_view method_name(Method method) noexcept {
  switch (method) {
    case Method::Metronome: return "metronome";
    case Method::Uniform: return "uniform";
    case Method::Naive: return "naive";
    case Method::NgramSvm: return "ngram-svm";
  }
  return "metronome";
}

Aligner aligner_for(Method method) {
  switch (method) {
    case Method::Uniform: return Aligner::uniform();
    case Method::Naive: return Aligner::naive();
    default: return Aligner::metronome();
  }
}

void EvalConfig::validate() const {
  auto fail = [](const std::string& what) { throw EvalError(EvalError::Kind::InvalidConfig, what); };
  if (per_class < 1) fail("per_class must be at least 1");
  if (k < 1 || k % 2 == 0) fail("k must be odd and at least 1, got " + std::to_string(k));
  if (runs < 1) fail("runs must be at least 1");
  if (target_label.empty()) fail("target label must be named");
  if (ngram < 1) fail("n-gram size must be at least 1");
  if (ngram_top < 1) fail("n-gram vocabulary size must be at least 1");
  if (svd_dims < 1) fail("SVD dimensions must be at least 1");
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) fail("train fraction must lie in (0, 1)");
}

std::string class_key(const CorpusRecord& record, std::span<const std::string> class_labels) {
  std::string key;
  for (std::size_t i = 0; i < class_labels.size(); ++i) {
    if (i > 0) key += '/';
    key += record.label(class_labels[i]);
  }
  return key;
}

std::vector<std::size_t> stratified_sample_indices(std::span<const CorpusRecord> corpus,
                                                   std::size_t per_class,
                                                   std::span<const std::string> class_labels,
                                                   Rng& rng) {
  std::map<std::string, std::vector<std::size_t>> strata;
  for (std::size_t i = 0; i < corpus.size(); ++i) strata[class_key(corpus[i], class_labels)].push_back(i);

  std::vector<std::size_t> out;
  for (auto& [key, members] : strata) {
    if (members.size() < per_class) {
      throw EvalError(EvalError::Kind::InsufficientClass,
                      "class '" + key + "' has " + std::to_string(members.size()) +
                          " records, need " + std::to_string(per_class));
    }
    // Partial Fisher-Yates: the first per_class slots become the sample.
    for (std::size_t i = 0; i < per_class; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(rng.below(members.size() - i));
      std::swap(members[i], members[j]);
    }
    out.insert(out.end(), members.begin(), members.begin() + static_cast<std::ptrdiff_t>(per_class));
  }
  rng.shuffle(std::span<std::size_t>(out));
  return out;
}

std::vector<CorpusRecord> stratified_sample(std::span<const CorpusRecord> corpus, std::size_t per_class,
                                            std::span<const std::string> class_labels, Rng& rng) {
  std::vector<CorpusRecord> out;
  for (const std::size_t i : stratified_sample_indices(corpus, per_class, class_labels, rng)) {
    out.push_back(corpus[i]);
  }
  return out;
}

KnnResult knn_loo(const DistanceMatrix& matrix, std::span<const std::string> labels, std::size_t k) {
  const std::size_t n = matrix.size();
  if (labels.size() != n) {
    throw EvalError(EvalError::Kind::DimensionMismatch, "kNN: " + std::to_string(labels.size()) +
                                                            " labels for a " + std::to_string(n) +
                                                            "x" + std::to_string(n) + " matrix");
  }
  if (k < 1 || k >= n) {
    throw EvalError(EvalError::Kind::InvalidConfig,
                    "kNN: k = " + std::to_string(k) + " must lie in [1, " + std::to_string(n - 1) + "]");
  }
  const auto& ids = matrix.ids();

  KnnResult result;
  result.predictions.resize(n);
  std::size_t correct = 0;
  std::vector<std::size_t> others;
  others.reserve(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    others.clear();
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) others.push_back(j);
    }
    const auto row = matrix.row(i);
    std::partial_sort(others.begin(), others.begin() + static_cast<std::ptrdiff_t>(k), others.end(),
                      [&](std::size_t x, std::size_t y) {
                        if (row[x] != row[y]) return row[x] < row[y];
                        return ids[x] < ids[y];
                      });

    std::map<std::string, std::pair<std::size_t, double>> votes;  // label -> (count, summed distance)
    for (std::size_t r = 0; r < k; ++r) {
      auto& v = votes[labels[others[r]]];
      ++v.first;
      v.second += row[others[r]];
    }
    // std::map iterates labels in lexicographic order, so strict comparisons
    // leave the smallest label on full ties.
    const std::string* winner = nullptr;
    std::pair<std::size_t, double> best{0, 0.0};
    for (const auto& [label, v] : votes) {
      if (!winner || v.first > best.first || (v.first == best.first && v.second < best.second)) {
        winner = &label;
        best = v;
      }
    }
    result.predictions[i] = *winner;
    correct += *winner == labels[i];
  }
  result.accuracy = static_cast<double>(correct) / static_cast<double>(n);
  return result;
}

namespace {

struct RunOutcome {
  double accuracy = 0.0;
  Confusion confusion;
};

RunOutcome ngram_svm_run(std::span<const CorpusRecord> sample, std::span<const std::string> labels,
                         const EvalConfig& config, Rng& rng) {
  const TrainTestSplit split = stratified_split(labels, config.train_fraction, rng);
  std::vector<CorpusRecord> train;
  std::vector<CorpusRecord> test;
  for (const std::size_t i : split.train) train.push_back(sample[i]);
  for (const std::size_t i : split.test) test.push_back(sample[i]);

  // Vocabulary, projection and scaling are fitted on the training side only.
  const NgramVocabulary vocab = build_ngram_vocabulary(train, config.ngram, config.ngram_top);
  const Eigen::MatrixXd train_raw = ngram_frequencies(train, vocab);
  const Eigen::MatrixXd test_raw = ngram_frequencies(test, vocab);
  const std::size_t dims =
      std::min<std::size_t>(config.svd_dims, static_cast<std::size_t>(std::min(train_raw.rows(), train_raw.cols())));
  const SvdProjection svd = SvdProjection::fit(train_raw, dims);
  const ZScaler scaler = ZScaler::fit(svd.transform(train_raw));
  const Eigen::MatrixXd train_x = scaler.transform(svd.transform(train_raw));
  const Eigen::MatrixXd test_x = scaler.transform(svd.transform(test_raw));

  std::vector<std::string> names(labels.begin(), labels.end());
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  auto index_of = [&](const std::string& l) {
    return static_cast<std::size_t>(std::lower_bound(names.begin(), names.end(), l) - names.begin());
  };
  std::vector<std::size_t> train_y;
  for (const std::size_t i : split.train) train_y.push_back(index_of(labels[i]));
  const LinearSvm svm = LinearSvm::train(train_x, train_y, names.size(), config.svm, rng);

  RunOutcome out;
  std::size_t correct = 0;
  for (std::size_t r = 0; r < split.test.size(); ++r) {
    const std::string& truth = labels[split.test[r]];
    const std::string& predicted = names[svm.predict(test_x.row(static_cast<Eigen::Index>(r)))];
    ++out.confusion[truth][predicted];
    correct += truth == predicted;
  }
  out.accuracy = static_cast<double>(correct) / static_cast<double>(split.test.size());
  return out;
}

}  // namespace

EvalReport run_evaluation(std::span<const CorpusRecord> corpus, const EvalConfig& config) {
  config.validate();
  for (const auto& r : corpus) {
    if (r.labels.find(config.target_label) == r.labels.end()) {
      throw EvalError(EvalError::Kind::MissingLabel,
                      "record '" + r.id + "' has no '" + config.target_label + "' label");
    }
  }

  EvalReport report;
  report.method = config.method;
  report.config = config;
  report.accuracies.resize(config.runs);
  report.run_confusion.resize(config.runs);

  // Distances are pure functions of a pair, so a matrix over the whole corpus
  // can stand in for the per-run matrices whenever that is cheaper.
  const bool alignment = config.method != Method::NgramSvm;
  Aligner aligner = aligner_for(config.method);
  if (config.method == Method::Metronome && config.metronome_scheme) aligner.scheme = *config.metronome_scheme;
  std::size_t strata = 0;
  {
    std::set<std::string> keys;
    for (const auto& r : corpus) keys.insert(class_key(r, config.class_labels));
    strata = keys.size();
  }
  const double sample_size = static_cast<double>(strata * config.per_class);
  const double full_cost = static_cast<double>(corpus.size()) * static_cast<double>(corpus.size());
  const bool precompute = alignment && full_cost <= static_cast<double>(config.runs) * sample_size * sample_size;
  DistanceMatrix full;
  if (precompute && corpus.size() >= 2) full = distance_matrix(corpus, aligner, config.workers);

  for (std::size_t run = 0; run < config.runs; ++run) {
    Rng rng(child_seed(config.seed, run));
    const std::vector<std::size_t> picked =
        stratified_sample_indices(corpus, config.per_class, config.class_labels, rng);
    std::vector<std::string> labels;
    labels.reserve(picked.size());
    for (const std::size_t i : picked) labels.push_back(corpus[i].label(config.target_label));
    if (config.permute_labels) rng.shuffle(std::span<std::string>(labels));

    RunOutcome outcome;
    if (alignment) {
      DistanceMatrix m;
      if (precompute) {
        m = full.subset(picked);
      } else {
        std::vector<CorpusRecord> sample;
        for (const std::size_t i : picked) sample.push_back(corpus[i]);
        m = distance_matrix(sample, aligner, config.workers);
      }
      const KnnResult knn = knn_loo(m, labels, config.k);
      outcome.accuracy = knn.accuracy;
      for (std::size_t i = 0; i < labels.size(); ++i) ++outcome.confusion[labels[i]][knn.predictions[i]];
    } else {
      std::vector<CorpusRecord> sample;
      for (const std::size_t i : picked) sample.push_back(corpus[i]);
      outcome = ngram_svm_run(sample, labels, config, rng);
    }

    report.accuracies[run] = outcome.accuracy;
    for (const auto& [truth, row] : outcome.confusion) {
      for (const auto& [predicted, count] : row) report.confusion[truth][predicted] += count;
    }
    report.run_confusion[run] = std::move(outcome.confusion);
  }
  report.median = median(report.accuracies);
  return report;
}

std::string format_report(const EvalReport& report) {
  using nlohmann::ordered_json;
  const EvalConfig& c = report.config;
  ordered_json config = {
      {"per_class", c.per_class},
      {"k", c.k},
      {"runs", c.runs},
      {"seed", c.seed},
      {"class_labels", c.class_labels},
      {"target_label", c.target_label},
      {"permute_labels", c.permute_labels},
  };
  if (report.method == Method::NgramSvm) {
    config["ngram"] = c.ngram;
    config["ngram_top"] = c.ngram_top;
    config["svd_dims"] = c.svd_dims;
    config["train_fraction"] = c.train_fraction;
    config["svm_c"] = c.svm.c;
    config["svm_epochs"] = c.svm.epochs;
  }
  ordered_json confusion = ordered_json::object();
  for (const auto& [truth, row] : report.confusion) {
    ordered_json r = ordered_json::object();
    for (const auto& [predicted, count] : row) r[predicted] = count;
    confusion[truth] = r;
  }
  ordered_json j = {
      {"method", std::string(method_name(report.method))},
      {"config", config},
      {"accuracies", report.accuracies},
      {"median", report.median},
      {"confusion", confusion},
  };
  return j.dump(2);
}

}  // namespace metronome
