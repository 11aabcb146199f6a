// metronome: command-line front end for the alignment, evaluation,
// clustering and simulation library.
//
// Exit codes: 0 success, 1 invalid input or flags, 2 I/O failure.

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "metronome/cluster.hpp"
#include "metronome/corpus.hpp"
#include "metronome/distance.hpp"
#include "metronome/eval.hpp"
#include "metronome/scoring.hpp"
#include "metronome/simulate.hpp"

namespace {

using namespace metronome;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitIo = 2;

struct Globals {
  std::uint64_t seed = 0;
  unsigned threads = 0;
  std::string scheme_path;
};

std::string shortest(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

// Writes text to the path, or to stdout when the path is empty.
void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw IoError("failed writing '" + path + "'");
}

Aligner aligner_from(const Globals& g, Method method) {
  Aligner a = aligner_for(method);
  if (method == Method::Metronome && !g.scheme_path.empty()) a.scheme = load_scheme(g.scheme_path);
  return a;
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

int cmd_validate(const std::string& corpus_path) {
  std::ifstream in(corpus_path);
  if (!in) throw IoError("cannot open corpus '" + corpus_path + "'");
  const auto checks = check_corpus(in);
  std::size_t bad = 0;
  for (const auto& c : checks) {
    std::cout << c.line << '\t' << (c.id.empty() ? "-" : c.id) << '\t';
    if (c.error.empty()) {
      std::cout << "ok\n";
    } else {
      std::cout << "error: " << c.error << '\n';
      ++bad;
    }
  }
  std::cerr << checks.size() << " records, " << bad << " invalid\n";
  return bad == 0 ? kExitOk : kExitInvalid;
}

std::map<std::string, std::string> labels_by_id(const std::vector<CorpusRecord>& corpus, const std::string& label) {
  std::map<std::string, std::string> out;
  for (const auto& r : corpus) {
    if (r.labels.find(label) == r.labels.end()) {
      throw EvalError(EvalError::Kind::MissingLabel, "record '" + r.id + "' has no '" + label + "' label");
    }
    out.emplace(r.id, r.label(label));
  }
  return out;
}

int cmd_knn(const std::string& dist_path, const std::string& corpus_path, std::size_t k,
            const std::string& label, const std::string& out_path) {
  const DistanceMatrix m = load_matrix(dist_path);
  const auto corpus = load_corpus(corpus_path);
  const auto by_id = labels_by_id(corpus, label);
  std::vector<std::string> labels;
  for (const auto& id : m.ids()) {
    const auto it = by_id.find(id);
    if (it == by_id.end()) {
      throw EvalError(EvalError::Kind::DimensionMismatch, "matrix id '" + id + "' not found in corpus");
    }
    labels.push_back(it->second);
  }
  const KnnResult r = knn_loo(m, labels, k);
  nlohmann::ordered_json j;
  j["k"] = k;
  j["label"] = label;
  j["n"] = m.size();
  j["accuracy"] = r.accuracy;
  nlohmann::ordered_json preds = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    preds.push_back({{"id", m.ids()[i]}, {"true", labels[i]}, {"predicted", r.predictions[i]}});
  }
  j["predictions"] = preds;
  emit(out_path, j.dump(2) + "\n");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Prosodic local-alignment distances, evaluation, clustering and simulation"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--seed", g.seed, "Random seed");
  app.add_option("--threads", g.threads, "Worker threads (0 = all hardware threads)");
  app.add_option("--scheme", g.scheme_path, "Scoring scheme file (default: built-in weighted scheme)");

  // validate
  std::string validate_corpus;
  auto* validate = app.add_subcommand("validate", "Check every record of a JSONL corpus");
  validate->add_option("corpus", validate_corpus, "Corpus JSONL")->required();

  // distmat
  std::string dm_corpus, dm_out, dm_method = "metronome";
  auto* distmat = app.add_subcommand("distmat", "Write the all-pairs distance matrix (TSV)");
  distmat->add_option("--corpus", dm_corpus, "Corpus JSONL")->required();
  distmat->add_option("--out", dm_out, "Output TSV (default: stdout)");
  distmat->add_option("--method", dm_method, "metronome, uniform or naive");

  // knn
  std::string knn_dist, knn_corpus, knn_label = "meter", knn_out;
  std::size_t knn_k = 7;
  auto* knn = app.add_subcommand("knn", "Leave-one-out kNN accuracy over a distance matrix");
  knn->add_option("--dist", knn_dist, "Distance matrix TSV")->required();
  knn->add_option("--corpus", knn_corpus, "Corpus JSONL providing labels")->required();
  knn->add_option("--k", knn_k, "Neighbors");
  knn->add_option("--label", knn_label, "Label to predict");
  knn->add_option("--out", knn_out, "Output JSON (default: stdout)");

  // eval
  std::string ev_corpus, ev_method = "metronome", ev_out, ev_strata = "language,meter", ev_label = "meter";
  EvalConfig ev;
  bool ev_permute = false;
  auto* evalc = app.add_subcommand("eval", "Repeated stratified classification runs");
  evalc->add_option("--corpus", ev_corpus, "Corpus JSONL")->required();
  evalc->add_option("--method", ev_method, "metronome, uniform, naive or ngram-svm");
  evalc->add_option("--runs", ev.runs, "Number of runs");
  evalc->add_option("--per-class", ev.per_class, "Samples per stratum per run");
  evalc->add_option("--k", ev.k, "kNN neighbors");
  evalc->add_option("--strata", ev_strata, "Comma-separated labels defining strata");
  evalc->add_option("--label", ev_label, "Label to predict");
  evalc->add_flag("--permute-labels", ev_permute, "Shuffle target labels within each sample");
  evalc->add_option("--out", ev_out, "Output JSON (default: stdout)");

  // cluster
  std::string cl_dist, cl_linkage = "average", cl_newick, cl_out;
  std::optional<std::size_t> cl_cut;
  auto* clusterc = app.add_subcommand("cluster", "Hierarchical clustering to Newick, optional flat cut");
  clusterc->add_option("--dist", cl_dist, "Distance matrix TSV")->required();
  clusterc->add_option("--linkage", cl_linkage, "average, complete, single or ward");
  clusterc->add_option("--newick", cl_newick, "Output Newick file");
  clusterc->add_option("--cut", cl_cut, "Number of flat clusters");
  clusterc->add_option("--out", cl_out, "Partition TSV for --cut (default: stdout)");

  // ari
  std::string ari_a, ari_b;
  auto* ari = app.add_subcommand("ari", "Adjusted Rand Index of two partition TSVs");
  ari->add_option("--a", ari_a, "First partition")->required();
  ari->add_option("--b", ari_b, "Second partition")->required();

  // simulate
  std::string sim_form = "all", sim_out;
  std::size_t sim_poems = 20;
  double sim_lambda = 14.0;
  auto* simulate = app.add_subcommand("simulate", "Generate a synthetic corpus of alexandrine-family forms");
  simulate->add_option("--form", sim_form, "alex, iamb6, alexFrench, alexRomantic, syl12 or all");
  simulate->add_option("--poems", sim_poems, "Poems per form");
  simulate->add_option("--lambda", sim_lambda, "Mean lines per poem (Poisson)");
  simulate->add_option("--out", sim_out, "Output JSONL (default: stdout)");

  // bench-ari
  std::string bench_forms = "alexFrench,alexRomantic,syl12", bench_linkage = "ward", bench_out;
  AriBenchmarkConfig bench;
  auto* bench_ari = app.add_subcommand("bench-ari", "Cluster synthetic corpora and score them with ARI");
  bench_ari->add_option("--forms", bench_forms, "Comma-separated form names");
  bench_ari->add_option("--runs", bench.runs, "Number of runs");
  bench_ari->add_option("--per-form", bench.per_form, "Poems per form per run");
  bench_ari->add_option("--lambda", bench.lambda, "Mean lines per poem (Poisson)");
  bench_ari->add_option("--linkage", bench_linkage, "average, complete, single or ward");
  bench_ari->add_option("--out", bench_out, "Output JSON (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (*validate) return cmd_validate(validate_corpus);

    if (*distmat) {
      const Method method = parse_method(dm_method);
      if (method == Method::NgramSvm) {
        throw EvalError(EvalError::Kind::InvalidConfig, "distmat: method must be metronome, uniform or naive");
      }
      const Aligner aligner = aligner_from(g, method);
      const auto corpus = load_corpus(dm_corpus);
      const DistanceMatrix m = distance_matrix(corpus, aligner, g.threads);
      std::ostringstream text;
      write_matrix(text, m);
      emit(dm_out, text.str());
      return kExitOk;
    }

    if (*knn) return cmd_knn(knn_dist, knn_corpus, knn_k, knn_label, knn_out);

    if (*evalc) {
      ev.method = parse_method(ev_method);
      ev.seed = g.seed;
      ev.workers = g.threads;
      ev.class_labels = split_commas(ev_strata);
      ev.target_label = ev_label;
      ev.permute_labels = ev_permute;
      ev.validate();
      if (!g.scheme_path.empty()) ev.metronome_scheme = load_scheme(g.scheme_path);
      const auto corpus = load_corpus(ev_corpus);
      emit(ev_out, format_report(run_evaluation(corpus, ev)) + "\n");
      return kExitOk;
    }

    if (*clusterc) {
      const Linkage linkage = parse_linkage(cl_linkage);
      if (cl_newick.empty() && !cl_cut) {
        throw ClusterError(ClusterError::Kind::Format, "cluster: give --newick and/or --cut");
      }
      const DistanceMatrix m = load_matrix(cl_dist);
      const Dendrogram tree = agglomerate(m, linkage);
      if (!cl_newick.empty()) emit(cl_newick, to_newick(tree) + "\n");
      if (cl_cut) {
        std::ostringstream text;
        write_partition(text, cut(tree, *cl_cut));
        emit(cl_out, text.str());
      }
      return kExitOk;
    }

    if (*ari) {
      const Partition a = load_partition(ari_a);
      const Partition b = load_partition(ari_b);
      std::cout << shortest(adjusted_rand_index(a, b)) << '\n';
      return kExitOk;
    }

    if (*simulate) {
      std::vector<FormSpec> forms;
      if (sim_form == "all") {
        for (const auto& name : builtin_form_names()) forms.push_back(builtin_form(name));
      } else {
        for (const auto& name : split_commas(sim_form)) forms.push_back(builtin_form(name));
      }
      Rng rng(g.seed);
      const auto corpus = generate_corpus(forms, sim_poems, rng, sim_lambda);
      std::ostringstream text;
      write_corpus(text, corpus);
      emit(sim_out, text.str());
      return kExitOk;
    }

    if (*bench_ari) {
      std::vector<FormSpec> forms;
      for (const auto& name : split_commas(bench_forms)) forms.push_back(builtin_form(name));
      bench.seed = g.seed;
      bench.workers = g.threads;
      bench.linkage = parse_linkage(bench_linkage);
      const AriBenchmarkReport r = ari_benchmark(forms, aligner_from(g, Method::Metronome), bench);
      nlohmann::ordered_json j;
      j["forms"] = split_commas(bench_forms);
      j["runs"] = bench.runs;
      j["per_form"] = bench.per_form;
      j["linkage"] = linkage_name(bench.linkage);
      j["seed"] = bench.seed;
      j["per_run_ari"] = r.per_run_ari;
      j["median"] = r.median;
      emit(bench_out, j.dump(2) + "\n");
      return kExitOk;
    }
  } catch (const IoError& e) {
    std::cerr << "metronome: " << e.what() << '\n';
    return kExitIo;
  } catch (const Error& e) {
    std::cerr << "metronome: " << e.what() << '\n';
    return kExitInvalid;
  }
  return kExitInvalid;
}
