#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "metronome/align.hpp"
#include "metronome/corpus.hpp"
#include "metronome/scoring.hpp"

namespace metronome {

/// A scheme plus gap policy: everything a distance computation depends on.
struct Aligner {
  ScoreScheme scheme;
  GapPolicy gaps = GapPolicy::Affine;

  static Aligner metronome() { return {default_scheme(), GapPolicy::Affine}; }
  static Aligner uniform() { return {uniform_scheme(), GapPolicy::Affine}; }
  static Aligner naive() { return {uniform_scheme(), GapPolicy::Forbidden}; }
};

/// Sum of diagonal scores over the symbols of s; the score of aligning s
/// with itself.
int self_score(const MetronomeString& s, const ScoreScheme& scheme);

/// The normalizing sequence of a pair: fewer symbols, then smaller self
/// score, then the lexicographically smaller rendering.
const MetronomeString& shorter_of(const MetronomeString& a, const MetronomeString& b,
                                  const ScoreScheme& scheme);

/// local score / self score of the shorter sequence, in [0, 1].
double pair_similarity(const MetronomeString& a, const MetronomeString& b, const Aligner& aligner);
double pair_similarity(const MetronomeString& a, const MetronomeString& b,
                       const ScoreScheme& scheme);

/// 1 - pair_similarity.
double pair_distance(const MetronomeString& a, const MetronomeString& b, const Aligner& aligner);
double pair_distance(const MetronomeString& a, const MetronomeString& b,
                     const ScoreScheme& scheme);

class DistanceError : public Error {
 public:
  enum class Kind { DuplicateId, EmptyCorpus, Format };

  DistanceError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

/// Square symmetric matrix with zero diagonal, keyed by sample ids.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  /// Zero-filled matrix over the given ids.
  explicit DistanceMatrix(std::vector<std::string> ids);

  std::size_t size() const noexcept { return ids_.size(); }
  const std::vector<std::string>& ids() const noexcept { return ids_; }

  double at(std::size_t i, std::size_t j) const noexcept { return values_[i * ids_.size() + j]; }
  /// Sets both (i, j) and (j, i).
  void set(std::size_t i, std::size_t j, double d) noexcept {
    values_[i * ids_.size() + j] = d;
    values_[j * ids_.size() + i] = d;
  }
  std::span<const double> row(std::size_t i) const noexcept {
    return std::span<const double>(values_).subspan(i * ids_.size(), ids_.size());
  }

  /// The submatrix over the given row indices, in that order.
  DistanceMatrix subset(std::span<const std::size_t> indices) const;

  friend bool operator==(const DistanceMatrix&, const DistanceMatrix&) = default;

 private:
  std::vector<std::string> ids_;
  std::vector<double> values_;
};

/// All-pairs distances. The upper triangle is computed by `workers` threads
/// (0 = one per hardware thread) and mirrored; every cell is a pure function
/// of its pair, so the result does not depend on the worker count.
DistanceMatrix distance_matrix(std::span<const CorpusRecord> corpus, const Aligner& aligner,
                               unsigned workers = 0);
DistanceMatrix distance_matrix(std::span<const CorpusRecord> corpus, const ScoreScheme& scheme,
                               unsigned workers = 0);

unsigned resolve_workers(unsigned requested) noexcept;

/// TSV: header "id<TAB>id1<TAB>id2...", then one row per id, values printed
/// with 9 significant digits.
void write_matrix(std::ostream& out, const DistanceMatrix& m);
void save_matrix(const std::filesystem::path& path, const DistanceMatrix& m);

/// Reads the TSV format back, checking shape, row/column id agreement,
/// zero diagonal, symmetry within 1e-9 and range [0, 1].
DistanceMatrix read_matrix(std::istream& in);
DistanceMatrix load_matrix(const std::filesystem::path& path);

}  // namespace metronome
