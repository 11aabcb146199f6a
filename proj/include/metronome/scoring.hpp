#pragma once

#include <array>
#include <filesystem>
#include <string>

#include "metronome/alphabet.hpp"

namespace metronome {

using SubstitutionMatrix = std::array<std::array<int, kSymbolCount>, kSymbolCount>;

class SchemeError : public Error {
 public:
  enum class Kind { Schema, Invariant };

  SchemeError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

/// Substitution scores plus an affine gap model. A gap run of length L costs
/// gap_open + (L - 1) * gap_extend, so open == extend is a linear gap.
///
/// Every instance satisfies:
///   - the substitution matrix is symmetric;
///   - every diagonal entry is positive;
///   - each diagonal entry dominates its row (needed so that normalized
///     similarities never exceed 1);
///   - gap_open <= 0 and gap_open <= gap_extend <= 0.
class ScoreScheme {
 public:
  /// Throws SchemeError(Invariant) naming the first offending cell.
  static ScoreScheme create(const SubstitutionMatrix& substitution, int gap_open, int gap_extend);

  int score(Symbol a, Symbol b) const noexcept {
    return substitution_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
  }
  const SubstitutionMatrix& substitution() const noexcept { return substitution_; }
  int gap_open() const noexcept { return gap_open_; }
  int gap_extend() const noexcept { return gap_extend_; }

  friend bool operator==(const ScoreScheme&, const ScoreScheme&) = default;

 private:
  ScoreScheme(const SubstitutionMatrix& substitution, int gap_open, int gap_extend)
      : substitution_(substitution), gap_open_(gap_open), gap_extend_(gap_extend) {}

  SubstitutionMatrix substitution_;
  int gap_open_;
  int gap_extend_;
};

/// The weighted scheme used by default.
///
///          S    w    .    |
///     S    3   -2    0   -6
///     w   -2    3    0   -6
///     .    0    0    2   -6
///     |   -6   -6   -6    6
///     gaps: open -5, extend -1
///
/// Line ends outweigh syllable matches, a word break against a syllable is
/// free, and matching word breaks earn a small bonus. The magnitudes are
/// hand-picked defaults, not fitted values; load a scheme file to tune them.
ScoreScheme default_scheme();

/// +1 on the diagonal, -1 elsewhere, linear gaps of -1.
ScoreScheme uniform_scheme();

/// Reads the key-value scheme format:
///
///     [substitution]
///     S.S = 3
///     S.w = -2
///     ...            (ten cells; either orientation of each pair)
///     [gaps]
///     open = -5
///     extend = -1
///
/// '#' starts a comment. Unknown keys, duplicates and missing cells are
/// SchemeError(Schema); invariant failures are SchemeError(Invariant);
/// unreadable files are IoError.
ScoreScheme load_scheme(const std::filesystem::path& path);
ScoreScheme parse_scheme(const std::string& text);

void save_scheme(const ScoreScheme& scheme, const std::filesystem::path& path);
std::string format_scheme(const ScoreScheme& scheme);

}  // namespace metronome
