#include "metronome/alphabet.hpp"

#include <algorithm>
#include <cctype>

namespace metronome {
namespace {

bool is_ascii_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

struct Decoded {
  std::vector<Symbol> symbols;
  std::vector<std::size_t> offsets;  // offset of each symbol in the source text
};

Decoded decode(std::string_view text) {
  Decoded out;
  out.symbols.reserve(text.size());
  out.offsets.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (is_ascii_space(c)) continue;
    const auto sym = symbol_from_char(c);
    if (!sym) {
      std::string shown = std::isprint(static_cast<unsigned char>(c))
                              ? std::string(1, c)
                              : "\\x" + std::to_string(static_cast<unsigned char>(c));
      throw ParseError(ParseError::Kind::InvalidSymbol, i,
                       "invalid symbol '" + shown + "' at offset " + std::to_string(i) +
                           " (expected one of S w . |)");
    }
    out.symbols.push_back(*sym);
    out.offsets.push_back(i);
  }
  return out;
}

void require_syllable(std::span<const Symbol> symbols, std::size_t end_offset) {
  if (symbols.empty()) {
    throw ParseError(ParseError::Kind::Empty, end_offset, "empty metronome string");
  }
  if (std::none_of(symbols.begin(), symbols.end(), is_syllable)) {
    throw ParseError(ParseError::Kind::Empty, end_offset,
                     "metronome string contains no syllables (S or w)");
  }
}

// Returns the index of the first symbol that breaks canonical form, if any.
std::optional<std::size_t> first_violation(std::span<const Symbol> s, std::string* why) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != Symbol::WordBreak) continue;
    if (i == 0) {
      *why = "leading word break";
      return i;
    }
    const Symbol prev = s[i - 1];
    if (prev == Symbol::WordBreak) {
      *why = "consecutive word breaks \"..\"";
      return i;
    }
    if (prev == Symbol::LineEnd) {
      *why = "word break after line end \"|.\"";
      return i;
    }
    if (i + 1 < s.size() && s[i + 1] == Symbol::LineEnd) {
      *why = "word break before line end \".|\"";
      return i;
    }
  }
  return std::nullopt;
}

}  // namespace

MetronomeString MetronomeString::parse(std::string_view text) {
  Decoded d = decode(text);
  require_syllable(d.symbols, text.size());
  std::string why;
  if (auto bad = first_violation(d.symbols, &why)) {
    const std::size_t offset = d.offsets[*bad];
    throw ParseError(ParseError::Kind::CanonicalViolation, offset,
                     why + " at offset " + std::to_string(offset));
  }
  return MetronomeString(std::move(d.symbols));
}

MetronomeString MetronomeString::canonicalize(std::string_view text) {
  const Decoded d = decode(text);
  std::vector<Symbol> out;
  out.reserve(d.symbols.size());
  for (const Symbol s : d.symbols) {
    if (s == Symbol::WordBreak) {
      if (out.empty() || out.back() == Symbol::WordBreak || out.back() == Symbol::LineEnd) {
        continue;
      }
    } else if (s == Symbol::LineEnd && !out.empty() && out.back() == Symbol::WordBreak) {
      out.pop_back();
    }
    out.push_back(s);
  }
  require_syllable(out, text.size());
  return MetronomeString(std::move(out));
}

MetronomeString MetronomeString::from_symbols(std::vector<Symbol> symbols) {
  require_syllable(symbols, symbols.size());
  std::string why;
  if (auto bad = first_violation(symbols, &why)) {
    throw ParseError(ParseError::Kind::CanonicalViolation, *bad,
                     why + " at symbol " + std::to_string(*bad));
  }
  return MetronomeString(std::move(symbols));
}

std::string MetronomeString::render() const {
  std::string out(symbols_.size(), '\0');
  std::transform(symbols_.begin(), symbols_.end(), out.begin(), to_char);
  return out;
}

std::size_t Line::syllable_count() const noexcept {
  return static_cast<std::size_t>(std::count_if(symbols.begin(), symbols.end(), is_syllable));
}

std::string Line::render() const {
  std::string out(symbols.size(), '\0');
  std::transform(symbols.begin(), symbols.end(), out.begin(), to_char);
  return out;
}

std::vector<Line> split_lines(const MetronomeString& s) {
  std::vector<Line> lines;
  Line current;
  for (const Symbol sym : s.symbols()) {
    if (sym == Symbol::LineEnd) {
      lines.push_back(std::move(current));
      current = Line{};
    } else {
      current.symbols.push_back(sym);
    }
  }
  if (!current.symbols.empty()) lines.push_back(std::move(current));
  return lines;
}

}  // namespace metronome
