// Acceptance checks. Prints one PASS/FAIL line per criterion; exits non-zero
// if any criterion fails. `acceptance <name>` runs a single criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "meters12.hpp"
#include "metronome/eval.hpp"
#include "metronome/simulate.hpp"
#include "oracles.hpp"

namespace {

using namespace metronome;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Outcome alignment_oracle() {
  const auto t0 = Clock::now();
  Rng rng(1001);
  const int pairs = 1500;
  int mismatches = 0;
  for (const auto& [name, scheme] : {std::pair{"default", default_scheme()}, std::pair{"uniform", uniform_scheme()}}) {
    for (int i = 0; i < pairs; ++i) {
      const auto a = testing::random_metronome(rng, 1 + rng.below(8));
      const auto b = testing::random_metronome(rng, 1 + rng.below(8));
      if (local_align(a, b, scheme).score != testing::brute_force_local(a, b, scheme)) {
        ++mismatches;
        std::printf("  mismatch (%s): %s vs %s\n", name, a.render().c_str(), b.render().c_str());
      }
    }
  }
  const double secs = seconds_since(t0);
  return {mismatches == 0 && secs < 120.0,
          fmt("%d pairs per scheme x {default, uniform}, %d mismatches, %.1fs (limit 120s)", pairs, mismatches, secs)};
}

Outcome no_indel() {
  Rng rng(1002);
  const int pairs = 2000;
  int mismatches = 0;
  for (int i = 0; i < pairs; ++i) {
    const auto a = testing::random_metronome(rng, 1 + rng.below(10));
    const auto b = testing::random_metronome(rng, 1 + rng.below(10));
    const int naive = naive_local(a, b);
    if (naive != local_score(a, b, uniform_scheme(), GapPolicy::Forbidden) ||
        naive != testing::brute_force_local(a, b, uniform_scheme(), false) ||
        naive != testing::brute_force_window(a, b)) {
      ++mismatches;
    }
  }
  return {mismatches == 0, fmt("%d pairs, %d mismatches", pairs, mismatches)};
}

Outcome distance_properties() {
  Rng rng(1003);
  const int pairs = 10000;
  const Aligner aligners[] = {Aligner::metronome(), Aligner::uniform(), Aligner::naive()};
  int out_of_range = 0;
  int asymmetric = 0;
  int nonzero_self = 0;
  for (int i = 0; i < pairs; ++i) {
    const auto a = testing::random_metronome(rng, 1 + rng.below(40));
    const auto b = testing::random_metronome(rng, 1 + rng.below(40));
    const Aligner& al = aligners[i % 3];
    // Check the unnormalized ratio so clamping could not hide a violation.
    const int raw = local_score(a, b, al.scheme, al.gaps);
    const int norm = self_score(shorter_of(a, b, al.scheme), al.scheme);
    const double s = pair_similarity(a, b, al);
    if (raw < 0 || raw > norm || s < 0.0 || s > 1.0) ++out_of_range;
    if (pair_distance(a, b, al) != pair_distance(b, a, al)) ++asymmetric;
    if (pair_distance(a, a, al) != 0.0) ++nonzero_self;
  }

  // Containment: a poem that is a verbatim prefix of a longer one.
  int containment_fail = 0;
  const int containment_cases = 300;
  const auto forms = builtin_form_names();
  for (int i = 0; i < containment_cases; ++i) {
    const auto form = builtin_form(forms[static_cast<std::size_t>(i) % forms.size()]);
    const auto head = generate_poem(form, rng, 6.0);
    const auto tail = generate_poem(form, rng, 6.0);
    const auto longer = MetronomeString::parse(head.render() + tail.render());
    for (const Aligner& al : aligners) containment_fail += pair_distance(head, longer, al) != 0.0;
  }
  const bool pass = out_of_range == 0 && asymmetric == 0 && nonzero_self == 0 && containment_fail == 0;
  return {pass, fmt("%d pairs: %d out of [0,1], %d asymmetric, %d nonzero d(a,a); %d/%d containment cases nonzero",
                    pairs, out_of_range, asymmetric, nonzero_self, containment_fail, containment_cases * 3)};
}

Outcome parallel_determinism() {
  const auto t0 = Clock::now();
  std::vector<FormSpec> forms;
  for (const auto& n : builtin_form_names()) forms.push_back(builtin_form(n));
  Rng rng(1004);
  const auto corpus = generate_corpus(forms, 40, rng);
  std::vector<std::string> outputs;
  for (unsigned workers : {1u, 2u, 8u}) {
    std::ostringstream out;
    write_matrix(out, distance_matrix(corpus, Aligner::metronome(), workers));
    outputs.push_back(out.str());
  }
  const bool same = outputs[0] == outputs[1] && outputs[0] == outputs[2];
  const double secs = seconds_since(t0);
  return {same && secs < 60.0, fmt("%zu poems, workers {1,2,8}: %s, %.1fs (limit 60s)", corpus.size(),
                                   same ? "byte-identical" : "DIFFERENT", secs)};
}

Outcome chance_floor() {
  const auto corpus = load_corpus(METRONOME_FIXTURE_DIR "/meters12.jsonl");
  EvalConfig cfg;
  cfg.runs = 50;
  cfg.k = 7;
  cfg.per_class = 10;
  cfg.seed = 1005;
  cfg.permute_labels = true;
  const auto r = run_evaluation(corpus, cfg);
  const double mean = std::accumulate(r.accuracies.begin(), r.accuracies.end(), 0.0) / r.accuracies.size();
  const double target = 100.0 / 12.0;
  return {std::abs(100.0 * mean - target) <= 3.0,
          fmt("12 meters, 240 samples/run, 50 runs: mean %.2f%% (target %.2f%% +/- 3)", 100.0 * mean, target)};
}

Outcome method_ordering() {
  std::vector<FormSpec> forms;
  for (const auto& n : builtin_form_names()) forms.push_back(builtin_form(n));
  Rng rng(1006);
  const auto corpus = generate_corpus(forms, 20, rng);
  EvalConfig cfg;
  cfg.runs = 50;
  cfg.k = 7;
  cfg.per_class = 10;
  cfg.seed = 1006;
  cfg.class_labels = {"meter"};
  double med[3];
  const Method methods[] = {Method::Metronome, Method::Uniform, Method::Naive};
  for (int i = 0; i < 3; ++i) {
    cfg.method = methods[i];
    med[i] = run_evaluation(corpus, cfg).median;
  }
  const bool pass = med[0] >= med[1] && med[1] >= med[2] && med[0] > med[2];
  return {pass, fmt("5 forms x 20 poems, 50 runs, median kNN accuracy: metronome %.3f, uniform %.3f, naive %.3f "
                    "(need metronome >= uniform >= naive, metronome > naive)",
                    med[0], med[1], med[2])};
}

double bench(const std::vector<std::string>& names, std::uint64_t seed, Linkage linkage) {
  std::vector<FormSpec> forms;
  for (const auto& n : names) forms.push_back(builtin_form(n));
  AriBenchmarkConfig cfg;
  cfg.runs = 100;
  cfg.per_form = 20;
  cfg.seed = seed;
  cfg.linkage = linkage;
  return ari_benchmark(forms, Aligner::metronome(), cfg).median;
}

Outcome appendix_ari() {
  const auto t0 = Clock::now();
  const double trio = bench({"alexFrench", "alexRomantic", "syl12"}, 1007, Linkage::Ward);
  const double pair = bench({"alex", "iamb6"}, 1007, Linkage::Ward);
  const double secs = seconds_since(t0);
  const bool pass = trio >= 0.80 && pair >= 0.30 && pair <= 0.80 && secs < 600.0;
  return {pass, fmt("100 runs x 20 poems/form, ward linkage: syllabic trio median %.3f (need >= 0.80), "
                    "iambic pair median %.3f (need [0.30, 0.80]), %.1fs (limit 600s)",
                    trio, pair, secs)};
}

Outcome boundary_probability() {
  Rng rng(1008);
  const auto form = builtin_form(BuiltinForm::Iamb6);
  const int lines = 100000;
  int hits = 0;
  for (int i = 0; i < lines; ++i) {
    const auto line = generate_line(form, rng);
    std::size_t syllables = 0;
    for (Symbol s : line.symbols) {
      if (is_syllable(s)) ++syllables;
      if (s == Symbol::WordBreak && syllables == 6) ++hits;
    }
  }
  const double p = static_cast<double>(hits) / lines;
  return {std::abs(p - 0.45) <= 0.01,
          fmt("%d iamb6 lines: P(break after 6) = %.4f (target 0.45 +/- 0.01; renewal value for 1:3:1:0.25 is 0.4870)",
              lines, p)};
}

Outcome poisson_mean() {
  Rng rng(1009);
  const int poems = 10000;
  double lines = 0.0;
  const auto form = builtin_form(BuiltinForm::Alex);
  for (int i = 0; i < poems; ++i) lines += static_cast<double>(split_lines(generate_poem(form, rng)).size());
  const double mean = lines / poems;
  return {std::abs(mean - 14.0) <= 0.2, fmt("%d poems: mean %.3f lines (target 14 +/- 0.2)", poems, mean)};
}

Partition part(const std::vector<int>& groups) {
  std::vector<std::string> ids;
  std::vector<std::string> g;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    ids.push_back("n" + std::to_string(i));
    g.push_back(std::to_string(groups[i]));
  }
  return Partition::from_labels(ids, g);
}

Outcome ari_oracle() {
  struct Case {
    std::vector<int> a, b;
    double expected;  // exact contingency-table value
  };
  const std::vector<Case> cases = {
      {{0, 0, 1, 1}, {0, 1, 0, 1}, -1.0 / 2.0},
      {{0, 0, 0, 1, 1, 2}, {0, 0, 1, 1, 2, 2}, 2.0 / 27.0},
      {{0, 0, 1, 1, 1, 2, 2, 3}, {0, 1, 1, 1, 2, 2, 3, 3}, 3.0 / 115.0},
      {{0, 0, 0, 1, 1, 1}, {0, 0, 1, 1, 2, 2}, 8.0 / 33.0},
      {{0, 0, 0, 0, 1, 1, 1, 1}, {0, 0, 1, 1, 0, 0, 1, 1}, -1.0 / 6.0},
      {{0, 0, 0, 1, 1, 1, 2, 2, 2}, {0, 0, 1, 1, 1, 2, 2, 2, 2}, 5.0 / 14.0},
  };
  int bad = 0;
  for (const auto& c : cases) bad += std::abs(adjusted_rand_index(part(c.a), part(c.b)) - c.expected) > 1e-12;
  const std::vector<std::vector<int>> identical = {{0, 0, 1, 1, 2, 2}, {0, 1, 2, 3}, {0, 0, 0}, {3, 1, 3, 2, 1}};
  int not_one = 0;
  for (const auto& p : identical) not_one += adjusted_rand_index(part(p), part(p)) != 1.0;
  return {bad == 0 && not_one == 0, fmt("%zu contingency cases (incl. -0.5), %d off; %zu identical pairs, %d != 1.0",
                                        cases.size(), bad, identical.size(), not_one)};
}

struct Criterion {
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {"alignment-oracle", alignment_oracle},     {"no-indel", no_indel},
      {"distance-properties", distance_properties}, {"parallel-determinism", parallel_determinism},
      {"chance-floor", chance_floor},             {"method-ordering", method_ordering},
      {"appendix-ari", appendix_ari},             {"boundary-probability", boundary_probability},
      {"poisson-mean", poisson_mean},             {"ari-oracle", ari_oracle},
  };
  const std::string only = argc > 1 ? argv[1] : "";
  int failed = 0;
  int ran = 0;
  for (const auto& c : criteria) {
    if (!only.empty() && only != c.name) continue;
    ++ran;
    Outcome o{false, ""};
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  if (ran == 0) {
    std::fprintf(stderr, "unknown criterion '%s'\n", only.c_str());
    return 2;
  }
  return failed == 0 ? 0 : 1;
}
