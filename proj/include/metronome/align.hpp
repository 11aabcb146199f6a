#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "metronome/alphabet.hpp"
#include "metronome/scoring.hpp"

namespace metronome {

/// Whether alignments may contain insertions/deletions.
enum class GapPolicy { Affine, Forbidden };

/// Half-open index range [begin, end).
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const noexcept { return end - begin; }
  friend bool operator==(const Span&, const Span&) = default;
};

/// One alignment column. A missing index is a gap on that side.
struct AlignedColumn {
  std::optional<std::size_t> a;
  std::optional<std::size_t> b;

  friend bool operator==(const AlignedColumn&, const AlignedColumn&) = default;
};

struct AlignmentResult {
  int score = 0;
  Span span_a;
  Span span_b;
  std::vector<AlignedColumn> columns;
};

/// Smith-Waterman with affine gaps (Gotoh's three-state recurrence). Builds
/// full O(|a|·|b|) matrices and traces back the optimal local alignment.
///
/// Tracebacks are deterministic: the end cell is the first maximal cell in
/// row-major order, and at each step a diagonal move is preferred over an up
/// move (gap in b) over a left move (gap in a). A zero score yields an empty
/// alignment.
AlignmentResult local_align(const MetronomeString& a, const MetronomeString& b,
                            const ScoreScheme& scheme, GapPolicy gaps = GapPolicy::Affine);

/// Score-only Smith-Waterman in linear memory. This is the kernel used for
/// distance matrices; it always agrees with local_align(...).score.
int local_score(const MetronomeString& a, const MetronomeString& b, const ScoreScheme& scheme,
                GapPolicy gaps = GapPolicy::Affine);

/// Best ungapped local alignment with +1/-1 scoring: a local Hamming score.
int naive_local(const MetronomeString& a, const MetronomeString& b);

/// Smith-Waterman under uniform_scheme(): a local Levenshtein-like score.
int uniform_local(const MetronomeString& a, const MetronomeString& b);

/// Scores an explicit column list under the scheme, with gap runs charged as
/// open + extend*(L-1). Used to check tracebacks.
int score_columns(const MetronomeString& a, const MetronomeString& b,
                  const std::vector<AlignedColumn>& columns, const ScoreScheme& scheme);

}  // namespace metronome
