#include "metronome/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace metronome {

void FormSpec::validate() const {
  auto fail = [&](const std::string& what) {
    throw SimulateError(SimulateError::Kind::InvalidForm, "form '" + name + "': " + what);
  };
  if (length == 0) fail("length must be positive");
  if (stress_template.size() != length) {
    fail("stress template has " + std::to_string(stress_template.size()) + " entries for length " +
         std::to_string(length));
  }
  for (const std::size_t b : forced_breaks) {
    if (b < 1 || b + 1 > length) fail("forced break after " + std::to_string(b) + " is outside [1, length-1]");
  }
  std::vector<Zone> zones = free_break_zones;
  std::sort(zones.begin(), zones.end(), [](const Zone& x, const Zone& y) { return x.begin < y.begin; });
  for (std::size_t z = 0; z < zones.size(); ++z) {
    const Zone& zone = zones[z];
    if (zone.begin >= zone.end || zone.end > length) fail("zone out of range");
    if (z > 0 && zones[z - 1].end > zone.begin) fail("zones overlap");
    for (const std::size_t b : forced_breaks) {
      if (zone.begin < b && b < zone.end) {
        fail("zone [" + std::to_string(zone.begin) + ", " + std::to_string(zone.end) +
             ") straddles the forced break after " + std::to_string(b));
      }
    }
  }
}

namespace {

constexpr StressConstraint F = StressConstraint::Free;
constexpr StressConstraint S = StressConstraint::ForceStrong;
constexpr StressConstraint W = StressConstraint::ForceWeak;

std::vector<StressConstraint> iambic(std::size_t length) {
  std::vector<StressConstraint> out(length);
  for (std::size_t i = 0; i < length; ++i) out[i] = i % 2 == 0 ? W : S;
  return out;
}

}  // namespace

FormSpec builtin_form(BuiltinForm form) {
  switch (form) {
    case BuiltinForm::Alex:
      return {"alex", 12, iambic(12), {6}, {{0, 6}, {6, 12}}};
    case BuiltinForm::Iamb6:
      return {"iamb6", 12, iambic(12), {}, {{0, 12}}};
    case BuiltinForm::AlexFrench:
      return {"alexFrench", 12, {F, F, F, F, F, S, F, F, F, F, F, S}, {6}, {{0, 6}, {6, 12}}};
    case BuiltinForm::AlexRomantic:
      return {"alexRomantic", 12, {F, F, F, S, F, F, F, S, F, F, F, S}, {4, 8}, {{0, 4}, {4, 8}, {8, 12}}};
    case BuiltinForm::Syl12:
      return {"syl12", 12, std::vector<StressConstraint>(12, F), {}, {{0, 12}}};
  }
  throw SimulateError(SimulateError::Kind::UnknownForm, "unknown builtin form");
}

std::vector<std::string> builtin_form_names() {
  return {"alex", "iamb6", "alexFrench", "alexRomantic", "syl12"};
}

FormSpec builtin_form(std::string_view name) {
  if (name == "alex") return builtin_form(BuiltinForm::Alex);
  if (name == "iamb6") return builtin_form(BuiltinForm::Iamb6);
  if (name == "alexFrench") return builtin_form(BuiltinForm::AlexFrench);
  if (name == "alexRomantic") return builtin_form(BuiltinForm::AlexRomantic);
  if (name == "syl12") return builtin_form(BuiltinForm::Syl12);
  throw SimulateError(SimulateError::Kind::UnknownForm,
                      "unknown form '" + std::string(name) +
                          "' (expected alex, iamb6, alexFrench, alexRomantic, syl12)");
}

WordLengthDist WordLengthDist::from_ratios(const std::array<double, 4>& ratios) {
  double total = 0.0;
  for (const double r : ratios) {
    if (!(r >= 0.0) || !std::isfinite(r)) {
      throw SimulateError(SimulateError::Kind::InvalidArgument, "word-length ratios must be finite and >= 0");
    }
    total += r;
  }
  if (total <= 0.0) {
    throw SimulateError(SimulateError::Kind::InvalidArgument, "word-length ratios sum to zero");
  }
  WordLengthDist d;
  double acc = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    d.probabilities_[i] = ratios[i] / total;
    acc += ratios[i];
    d.cumulative_[i] = acc / total;
  }
  d.cumulative_[3] = 1.0;
  return d;
}

WordLengthDist WordLengthDist::standard() {
  static const WordLengthDist d = from_ratios({1.0, 3.0, 1.0, 0.25});
  return d;
}

std::size_t WordLengthDist::draw(Rng& rng) const noexcept {
  const double u = rng.uniform();
  for (std::size_t i = 0; i < 3; ++i) {
    if (u < cumulative_[i]) return i + 1;
  }
  return 4;
}

Line generate_line(const FormSpec& form, Rng& rng, const WordLengthDist& dist) {
  std::vector<Symbol> stresses(form.length);
  for (std::size_t i = 0; i < form.length; ++i) {
    switch (form.stress_template[i]) {
      case StressConstraint::ForceStrong: stresses[i] = Symbol::Strong; break;
      case StressConstraint::ForceWeak: stresses[i] = Symbol::Weak; break;
      case StressConstraint::Free: stresses[i] = rng.coin() ? Symbol::Strong : Symbol::Weak; break;
    }
  }

  // breaks[p]: a word ends after p syllables.
  std::vector<bool> breaks(form.length + 1, false);
  for (const std::size_t b : form.forced_breaks) breaks[b] = true;
  for (const Zone& zone : form.free_break_zones) {
    std::size_t pos = zone.begin;
    while (pos < zone.end) {
      pos = std::min(pos + dist.draw(rng), zone.end);
      breaks[pos] = true;
    }
  }

  Line line;
  line.symbols.reserve(form.length * 2);
  for (std::size_t i = 0; i < form.length; ++i) {
    line.symbols.push_back(stresses[i]);
    if (i + 1 < form.length && breaks[i + 1]) line.symbols.push_back(Symbol::WordBreak);
  }
  return line;
}

std::size_t sample_poisson(Rng& rng, double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw SimulateError(SimulateError::Kind::InvalidArgument, "Poisson lambda must be positive");
  }
  const double u = rng.uniform();
  double p = std::exp(-lambda);
  double cdf = p;
  std::size_t k = 0;
  // The p > 0 guard stops the search if the tail underflows before cdf > u.
  while (u >= cdf && p > 0.0) {
    ++k;
    p *= lambda / static_cast<double>(k);
    cdf += p;
  }
  return k;
}

MetronomeString generate_poem(const FormSpec& form, Rng& rng, double lambda,
                              const WordLengthDist& dist) {
  std::size_t lines = 0;
  while (lines == 0) lines = sample_poisson(rng, lambda);
  std::vector<Symbol> symbols;
  for (std::size_t l = 0; l < lines; ++l) {
    const Line line = generate_line(form, rng, dist);
    symbols.insert(symbols.end(), line.symbols.begin(), line.symbols.end());
    symbols.push_back(Symbol::LineEnd);
  }
  return MetronomeString::from_symbols(std::move(symbols));
}

std::vector<CorpusRecord> generate_corpus(std::span<const FormSpec> forms, std::size_t per_form,
                                          Rng& rng, double lambda) {
  if (per_form < 1) {
    throw SimulateError(SimulateError::Kind::InvalidArgument, "per_form must be at least 1");
  }
  std::set<std::string> names;
  for (const FormSpec& f : forms) {
    f.validate();
    if (!names.insert(f.name).second) {
      throw SimulateError(SimulateError::Kind::InvalidArgument, "duplicate form name '" + f.name + "'");
    }
  }
  std::vector<CorpusRecord> out;
  out.reserve(forms.size() * per_form);
  for (const FormSpec& f : forms) {
    for (std::size_t i = 0; i < per_form; ++i) {
      out.push_back(CorpusRecord{f.name + "_" + std::to_string(i),
                                 {{"meter", f.name}},
                                 generate_poem(f, rng, lambda)});
    }
  }
  return out;
}

AriBenchmarkReport ari_benchmark(std::span<const FormSpec> forms, const Aligner& aligner,
                                 const AriBenchmarkConfig& config) {
  if (forms.size() < 2) {
    throw SimulateError(SimulateError::Kind::InvalidArgument, "ARI benchmark needs at least 2 forms");
  }
  if (config.runs < 1) throw SimulateError(SimulateError::Kind::InvalidArgument, "runs must be at least 1");

  AriBenchmarkReport report;
  report.per_run_ari.reserve(config.runs);
  for (std::size_t run = 0; run < config.runs; ++run) {
    Rng rng(child_seed(config.seed, run));
    const auto corpus = generate_corpus(forms, config.per_form, rng, config.lambda);
    const DistanceMatrix matrix = distance_matrix(corpus, aligner, config.workers);
    const Partition found = cut(agglomerate(matrix, config.linkage), forms.size());

    std::vector<std::string> ids;
    std::vector<std::string> truth;
    for (const auto& r : corpus) {
      ids.push_back(r.id);
      truth.push_back(r.label("meter"));
    }
    report.per_run_ari.push_back(
        adjusted_rand_index(found, Partition::from_labels(std::move(ids), truth)));
  }
  report.median = median(report.per_run_ari);
  return report;
}

}  // namespace metronome
