#include "metronome/distance.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

namespace metronome {

int self_score(const MetronomeString& s, const ScoreScheme& scheme) {
  int total = 0;
  for (const Symbol sym : s.symbols()) total += scheme.score(sym, sym);
  return total;
}

const MetronomeString& shorter_of(const MetronomeString& a, const MetronomeString& b,
                                  const ScoreScheme& scheme) {
  if (a.size() != b.size()) return a.size() < b.size() ? a : b;
  const int sa = self_score(a, scheme);
  const int sb = self_score(b, scheme);
  if (sa != sb) return sa < sb ? a : b;
  return a.render() <= b.render() ? a : b;
}

namespace {

double normalize(int score, int denominator) {
  return static_cast<double>(score) / static_cast<double>(denominator);
}

}  // namespace

double pair_similarity(const MetronomeString& a, const MetronomeString& b, const Aligner& aligner) {
  const int score = local_score(a, b, aligner.scheme, aligner.gaps);
  return normalize(score, self_score(shorter_of(a, b, aligner.scheme), aligner.scheme));
}

double pair_similarity(const MetronomeString& a, const MetronomeString& b,
                       const ScoreScheme& scheme) {
  return pair_similarity(a, b, Aligner{scheme, GapPolicy::Affine});
}

double pair_distance(const MetronomeString& a, const MetronomeString& b, const Aligner& aligner) {
  return 1.0 - pair_similarity(a, b, aligner);
}

double pair_distance(const MetronomeString& a, const MetronomeString& b,
                     const ScoreScheme& scheme) {
  return 1.0 - pair_similarity(a, b, scheme);
}

DistanceMatrix::DistanceMatrix(std::vector<std::string> ids)
    : ids_(std::move(ids)), values_(ids_.size() * ids_.size(), 0.0) {}

DistanceMatrix DistanceMatrix::subset(std::span<const std::size_t> indices) const {
  std::vector<std::string> ids;
  ids.reserve(indices.size());
  for (const std::size_t i : indices) ids.push_back(ids_[i]);
  DistanceMatrix out(std::move(ids));
  const std::size_t k = indices.size();
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t c = 0; c < k; ++c) out.values_[r * k + c] = at(indices[r], indices[c]);
  }
  return out;
}

unsigned resolve_workers(unsigned requested) noexcept {
  if (requested != 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

DistanceMatrix distance_matrix(std::span<const CorpusRecord> corpus, const Aligner& aligner,
                               unsigned workers) {
  const std::size_t n = corpus.size();
  if (n < 2) {
    throw DistanceError(DistanceError::Kind::EmptyCorpus,
                        "distance matrix needs at least 2 records, got " + std::to_string(n));
  }
  std::vector<std::string> ids;
  ids.reserve(n);
  std::set<std::string> seen;
  for (const auto& r : corpus) {
    if (!seen.insert(r.id).second) {
      throw DistanceError(DistanceError::Kind::DuplicateId, "duplicate id '" + r.id + "'");
    }
    ids.push_back(r.id);
  }

  DistanceMatrix out(std::move(ids));

  // Per-record normalizers are computed once; shorter_of's tie-break chain is
  // reproduced from them without re-rendering strings in the hot loop.
  std::vector<int> self(n);
  std::vector<std::string> rendered(n);
  for (std::size_t i = 0; i < n; ++i) {
    self[i] = self_score(corpus[i].metronome, aligner.scheme);
    rendered[i] = corpus[i].metronome.render();
  }
  auto denominator = [&](std::size_t i, std::size_t j) {
    const std::size_t li = corpus[i].metronome.size();
    const std::size_t lj = corpus[j].metronome.size();
    if (li != lj) return li < lj ? self[i] : self[j];
    if (self[i] != self[j]) return std::min(self[i], self[j]);
    return rendered[i] <= rendered[j] ? self[i] : self[j];
  };

  std::atomic<std::size_t> next_row{0};
  auto work = [&] {
    for (;;) {
      const std::size_t i = next_row.fetch_add(1, std::memory_order_relaxed);
      if (i >= n) return;
      for (std::size_t j = i + 1; j < n; ++j) {
        const int score =
            local_score(corpus[i].metronome, corpus[j].metronome, aligner.scheme, aligner.gaps);
        out.set(i, j, 1.0 - normalize(score, denominator(i, j)));
      }
    }
  };

  const unsigned threads = std::min<std::size_t>(resolve_workers(workers), n);
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
  }
  return out;
}

DistanceMatrix distance_matrix(std::span<const CorpusRecord> corpus, const ScoreScheme& scheme,
                               unsigned workers) {
  return distance_matrix(corpus, Aligner{scheme, GapPolicy::Affine}, workers);
}

void write_matrix(std::ostream& out, const DistanceMatrix& m) {
  out << "id";
  for (const auto& id : m.ids()) out << '\t' << id;
  out << '\n';
  char buf[32];
  for (std::size_t i = 0; i < m.size(); ++i) {
    out << m.ids()[i];
    for (std::size_t j = 0; j < m.size(); ++j) {
      std::snprintf(buf, sizeof buf, "%.9g", m.at(i, j));
      out << '\t' << buf;
    }
    out << '\n';
  }
}

void save_matrix(const std::filesystem::path& path, const DistanceMatrix& m) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  write_matrix(out, m);
  if (!out) throw IoError("failed writing matrix to '" + path.string() + "'");
}

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto tab = line.find('\t', start);
    out.push_back(line.substr(start, tab - start));
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  if (!out.empty() && !out.back().empty() && out.back().back() == '\r') out.back().pop_back();
  return out;
}

}  // namespace

DistanceMatrix read_matrix(std::istream& in) {
  auto format = [](const std::string& what) {
    throw DistanceError(DistanceError::Kind::Format, what);
  };
  std::string line;
  if (!std::getline(in, line)) format("empty matrix file");
  auto header = split_tabs(line);
  if (header.empty() || header.front() != "id") format("header must start with 'id'");
  header.erase(header.begin());
  const std::size_t n = header.size();
  if (n == 0) format("matrix has no columns");

  DistanceMatrix m(header);
  std::vector<double> raw(n * n);
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    const auto cells = split_tabs(line);
    if (row >= n) format("more rows than columns (" + std::to_string(n) + ")");
    if (cells.size() != n + 1) {
      format("row " + std::to_string(row + 1) + " has " + std::to_string(cells.size() - 1) +
             " values, expected " + std::to_string(n));
    }
    if (cells[0] != header[row]) {
      format("row " + std::to_string(row + 1) + " id '" + cells[0] + "' does not match column id '" +
             header[row] + "'");
    }
    for (std::size_t j = 0; j < n; ++j) {
      const std::string& cell = cells[j + 1];
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (cell.empty() || end != cell.c_str() + cell.size() || !std::isfinite(v)) {
        format("row '" + cells[0] + "' column " + std::to_string(j + 1) + ": bad number '" + cell + "'");
      }
      raw[row * n + j] = v;
    }
    ++row;
  }
  if (row != n) format("expected " + std::to_string(n) + " rows, found " + std::to_string(row));

  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(raw[i * n + i]) > 1e-9) format("nonzero diagonal at '" + header[i] + "'");
    for (std::size_t j = i + 1; j < n; ++j) {
      const double a = raw[i * n + j];
      const double b = raw[j * n + i];
      if (std::abs(a - b) > 1e-9) {
        format("asymmetric cells '" + header[i] + "'/'" + header[j] + "'");
      }
      if (a < 0.0 || a > 1.0) {
        format("distance out of [0,1] at '" + header[i] + "'/'" + header[j] + "'");
      }
      m.set(i, j, a);
    }
  }
  return m;
}

DistanceMatrix load_matrix(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open matrix '" + path.string() + "'");
  try {
    return read_matrix(in);
  } catch (const DistanceError& e) {
    throw DistanceError(e.kind(), path.string() + ": " + e.what());
  }
}

}  // namespace metronome
