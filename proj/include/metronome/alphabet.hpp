#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "metronome/error.hpp"

namespace metronome {

/// The four prosodic symbols. The numeric values index substitution matrices.
enum class Symbol : std::uint8_t {
  Strong = 0,     // 'S'
  Weak = 1,       // 'w'
  WordBreak = 2,  // '.'
  LineEnd = 3,    // '|'
};

inline constexpr std::size_t kSymbolCount = 4;

constexpr char to_char(Symbol s) noexcept {
  constexpr char kGlyphs[kSymbolCount] = {'S', 'w', '.', '|'};
  return kGlyphs[static_cast<std::size_t>(s)];
}

constexpr std::optional<Symbol> symbol_from_char(char c) noexcept {
  switch (c) {
    case 'S': return Symbol::Strong;
    case 'w': return Symbol::Weak;
    case '.': return Symbol::WordBreak;
    case '|': return Symbol::LineEnd;
    default: return std::nullopt;
  }
}

constexpr bool is_syllable(Symbol s) noexcept {
  return s == Symbol::Strong || s == Symbol::Weak;
}

class ParseError : public Error {
 public:
  enum class Kind { InvalidSymbol, CanonicalViolation, Empty };

  ParseError(Kind kind, std::size_t offset, const std::string& what)
      : Error(what), kind_(kind), offset_(offset) {}

  Kind kind() const noexcept { return kind_; }
  /// Byte offset into the original text (for Empty: the text length).
  std::size_t offset() const noexcept { return offset_; }

 private:
  Kind kind_;
  std::size_t offset_;
};

/// A poem encoded over {S, w, ., |}, always in canonical form:
///   - at least one syllable (S or w);
///   - no "..", ".|" or "|.";
///   - no leading '.'.
/// A trailing '|' is allowed but not required, and is significant.
class MetronomeString {
 public:
  /// Strict parser. ASCII whitespace is skipped; anything else outside the
  /// alphabet, or any canonical-form violation, throws ParseError.
  static MetronomeString parse(std::string_view text);

  /// Lenient parser: collapses runs of '.', drops '.' next to '|' and at the
  /// start, then validates. Still throws on foreign characters or when no
  /// syllable remains.
  static MetronomeString canonicalize(std::string_view text);

  /// Validates an already decoded symbol sequence.
  static MetronomeString from_symbols(std::vector<Symbol> symbols);

  std::span<const Symbol> symbols() const noexcept { return symbols_; }
  std::size_t size() const noexcept { return symbols_.size(); }
  Symbol operator[](std::size_t i) const noexcept { return symbols_[i]; }
  std::string render() const;

  friend bool operator==(const MetronomeString&, const MetronomeString&) = default;

 private:
  explicit MetronomeString(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {}

  std::vector<Symbol> symbols_;
};

/// The symbols of one verse line, without the terminating '|'.
struct Line {
  std::vector<Symbol> symbols;

  std::size_t syllable_count() const noexcept;
  std::string render() const;
};

/// Splits on '|'. A trailing '|' does not produce an empty final line;
/// interior empty lines ("||") are kept.
std::vector<Line> split_lines(const MetronomeString& s);

}  // namespace metronome
