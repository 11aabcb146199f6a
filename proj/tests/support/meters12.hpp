#pragma once

// Generator for tests/fixtures/meters12.jsonl: twelve synthetic meters, each
// realized in two of four "languages" that differ only in word-length
// distribution. 24 (language, meter) strata of 12 poems each.

#include <array>
#include <string>
#include <vector>

#include "metronome/simulate.hpp"

namespace metronome::testing {

inline FormSpec pattern_form(std::string name, std::string_view pattern,
                             std::vector<std::size_t> breaks = {}) {
  FormSpec f;
  f.name = std::move(name);
  f.length = pattern.size();
  for (char c : pattern) {
    f.stress_template.push_back(c == 'S'   ? StressConstraint::ForceStrong
                                : c == 'w' ? StressConstraint::ForceWeak
                                           : StressConstraint::Free);
  }
  f.forced_breaks = breaks;
  std::size_t begin = 0;
  breaks.push_back(f.length);
  for (std::size_t b : breaks) {
    f.free_break_zones.push_back({begin, b});
    begin = b;
  }
  return f;
}

inline std::vector<FormSpec> meters12_forms() {
  return {
      pattern_form("iamb4", "wSwSwSwS"),
      pattern_form("iamb5", "wSwSwSwSwS"),
      pattern_form("iamb6", "wSwSwSwSwSwS"),
      pattern_form("troch4", "SwSwSwSw"),
      pattern_form("troch5", "SwSwSwSwSw"),
      pattern_form("dact4", "SwwSwwSwwSww"),
      pattern_form("amph3", "wSwwSwwSw"),
      pattern_form("anap3", "wwSwwSwwS"),
      pattern_form("hendeca", "xxxSxxxxxSx"),
      pattern_form("syl8", "xxxxxxxx"),
      pattern_form("alexandrine", "xxxxxSxxxxxS", {6}),
      pattern_form("hexameter", "SwwSwwSwwSwwSwwSw"),
  };
}

struct Meters12Language {
  std::string name;
  std::array<double, 4> ratios;
};

inline std::vector<Meters12Language> meters12_languages() {
  return {{"la", {1, 3, 1, 0.25}}, {"lb", {2, 3, 1, 0.1}}, {"lc", {1, 2, 2, 0.5}}, {"ld", {1, 1, 1, 1}}};
}

inline constexpr std::size_t kMeters12PerStratum = 12;
inline constexpr double kMeters12Lambda = 8.0;
inline constexpr std::uint64_t kMeters12Seed = 20240612;

inline std::vector<CorpusRecord> meters12_corpus() {
  const auto forms = meters12_forms();
  const auto languages = meters12_languages();
  Rng rng(kMeters12Seed);
  std::vector<CorpusRecord> out;
  for (std::size_t m = 0; m < forms.size(); ++m) {
    for (std::size_t l : {m % languages.size(), (m + 1) % languages.size()}) {
      const auto dist = WordLengthDist::from_ratios(languages[l].ratios);
      for (std::size_t i = 0; i < kMeters12PerStratum; ++i) {
        out.push_back({languages[l].name + "_" + forms[m].name + "_" + std::to_string(i),
                       {{"language", languages[l].name}, {"meter", forms[m].name}},
                       generate_poem(forms[m], rng, kMeters12Lambda, dist)});
      }
    }
  }
  return out;
}

}  // namespace metronome::testing
