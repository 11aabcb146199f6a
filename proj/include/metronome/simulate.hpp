#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "metronome/alphabet.hpp"
#include "metronome/cluster.hpp"
#include "metronome/corpus.hpp"
#include "metronome/distance.hpp"
#include "metronome/random.hpp"
#include "metronome/stats.hpp"

namespace metronome {

class SimulateError : public Error {
 public:
  enum class Kind { UnknownForm, InvalidForm, InvalidArgument };

  SimulateError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

enum class StressConstraint : std::uint8_t { Free, ForceStrong, ForceWeak };

/// Syllable positions [begin, end) within which random word boundaries fall.
struct Zone {
  std::size_t begin = 0;
  std::size_t end = 0;
};

/// Template for one synthetic verse line.
struct FormSpec {
  std::string name;
  std::size_t length = 12;
  std::vector<StressConstraint> stress_template;  // one entry per syllable
  std::vector<std::size_t> forced_breaks;         // '.' after this many syllables
  std::vector<Zone> free_break_zones;

  /// Throws SimulateError(InvalidForm) if the template length, break
  /// positions or zones are inconsistent.
  void validate() const;
};

enum class BuiltinForm { Alex, Iamb6, AlexFrench, AlexRomantic, Syl12 };

/// The five alexandrine-family conditions:
///   alex          wSwSwS.wSwSwS, caesura after 6
///   iamb6         wSwSwSwSwSwS, no caesura
///   alexFrench    xxxxxS.xxxxxS
///   alexRomantic  xxxS.xxxS.xxxS
///   syl12         twelve free syllables
FormSpec builtin_form(BuiltinForm form);
/// Looks a form up by name; throws SimulateError(UnknownForm).
FormSpec builtin_form(std::string_view name);
std::vector<std::string> builtin_form_names();

/// Distribution of word lengths 1..4 syllables.
class WordLengthDist {
 public:
  /// Relative weights for lengths 1, 2, 3, 4.
  static WordLengthDist from_ratios(const std::array<double, 4>& ratios);
  /// 1:3:1:0.25.
  static WordLengthDist standard();

  const std::array<double, 4>& probabilities() const noexcept { return probabilities_; }
  std::size_t draw(Rng& rng) const noexcept;

 private:
  std::array<double, 4> probabilities_{};
  std::array<double, 4> cumulative_{};
};

/// Stresses are drawn for every syllable first (fair coin for free
/// positions), then each zone is filled left to right with words drawn from
/// `dist`, the last word truncated at the zone end. Forced breaks are always
/// present and the line never ends with '.'.
Line generate_line(const FormSpec& form, Rng& rng,
                   const WordLengthDist& dist = WordLengthDist::standard());

/// Poisson draw by sequential-search inversion.
std::size_t sample_poisson(Rng& rng, double lambda);

/// Line count ~ Poisson(lambda), redrawn while zero; every line is followed
/// by '|'.
MetronomeString generate_poem(const FormSpec& form, Rng& rng, double lambda = 14.0,
                              const WordLengthDist& dist = WordLengthDist::standard());

/// per_form poems per form, form-major, ids "{form}_{index}" and label
/// meter = form name. Form names must be distinct.
std::vector<CorpusRecord> generate_corpus(std::span<const FormSpec> forms, std::size_t per_form,
                                          Rng& rng, double lambda = 14.0);

struct AriBenchmarkConfig {
  std::size_t runs = 100;
  std::size_t per_form = 20;
  double lambda = 14.0;
  std::uint64_t seed = 0;
  Linkage linkage = Linkage::Ward;
  unsigned workers = 0;
};

struct AriBenchmarkReport {
  std::vector<double> per_run_ari;
  double median = 0.0;
};

/// Per run: generate a corpus from a child seed, build the distance matrix,
/// cluster, cut at k = number of forms and score against the true forms.
AriBenchmarkReport ari_benchmark(std::span<const FormSpec> forms, const Aligner& aligner,
                                 const AriBenchmarkConfig& config);

}  // namespace metronome
