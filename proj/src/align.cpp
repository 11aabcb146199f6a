#include "metronome/align.hpp"

#include <algorithm>
#include <cassert>
#include <limits>

namespace metronome {
namespace {

// Far below any reachable score but safe to add a few gap penalties to.
constexpr int kNegInf = std::numeric_limits<int>::min() / 4;

std::vector<std::uint8_t> codes(const MetronomeString& s) {
  std::vector<std::uint8_t> out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) out[i] = static_cast<std::uint8_t>(s[i]);
  return out;
}

// Flat (rows x cols) int matrix.
class Grid {
 public:
  Grid(std::size_t rows, std::size_t cols, int fill) : cols_(cols), data_(rows * cols, fill) {}
  int& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  int operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

 private:
  std::size_t cols_;
  std::vector<int> data_;
};

}  // namespace

int local_score(const MetronomeString& a, const MetronomeString& b, const ScoreScheme& scheme,
                GapPolicy gaps) {
  const std::vector<std::uint8_t> bc = codes(b);
  const std::size_t n = bc.size();
  const auto& sub = scheme.substitution();
  int best = 0;

  // h[j] holds H(i-1, j) until overwritten with H(i, j).
  std::vector<int> h(n + 1, 0);

  if (gaps == GapPolicy::Forbidden) {
    for (const Symbol sa : a.symbols()) {
      const auto& row = sub[static_cast<std::size_t>(sa)];
      int diag = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        const int up = h[j];
        const int v = std::max(0, diag + row[bc[j - 1]]);
        diag = up;
        h[j] = v;
        best = std::max(best, v);
      }
    }
    return best;
  }

  const int open = scheme.gap_open();
  const int extend = scheme.gap_extend();
  // f[j]: best score of an alignment ending at (i, j) with a gap in b (a_i
  // against nothing).
  std::vector<int> f(n + 1, kNegInf);
  for (const Symbol sa : a.symbols()) {
    const auto& row = sub[static_cast<std::size_t>(sa)];
    int diag = 0;   // H(i-1, j-1)
    int left = 0;   // H(i, j-1)
    int e = kNegInf;  // gap in a, ending at (i, j)
    for (std::size_t j = 1; j <= n; ++j) {
      const int up = h[j];
      const int fv = std::max(up + open, f[j] + extend);
      f[j] = fv;
      e = std::max(left + open, e + extend);
      const int v = std::max({0, diag + row[bc[j - 1]], e, fv});
      diag = up;
      h[j] = v;
      left = v;
      best = std::max(best, v);
    }
  }
  return best;
}

AlignmentResult local_align(const MetronomeString& a, const MetronomeString& b,
                            const ScoreScheme& scheme, GapPolicy gaps) {
  const std::size_t m = a.size();
  const std::size_t n = b.size();
  const bool allow_gaps = gaps == GapPolicy::Affine;
  const int open = scheme.gap_open();
  const int extend = scheme.gap_extend();

  Grid h(m + 1, n + 1, 0);
  Grid e(m + 1, n + 1, kNegInf);  // ends with a_? gap: consumes b_j only (left move)
  Grid f(m + 1, n + 1, kNegInf);  // consumes a_i only (up move)

  int best = 0;
  std::size_t best_i = 0;
  std::size_t best_j = 0;
  for (std::size_t i = 1; i <= m; ++i) {
    for (std::size_t j = 1; j <= n; ++j) {
      int v = std::max(0, h(i - 1, j - 1) + scheme.score(a[i - 1], b[j - 1]));
      if (allow_gaps) {
        f(i, j) = std::max(h(i - 1, j) + open, f(i - 1, j) + extend);
        e(i, j) = std::max(h(i, j - 1) + open, e(i, j - 1) + extend);
        v = std::max({v, f(i, j), e(i, j)});
      }
      h(i, j) = v;
      if (v > best) {
        best = v;
        best_i = i;
        best_j = j;
      }
    }
  }

  AlignmentResult result;
  result.score = best;
  if (best == 0) return result;

  enum class State { H, Up, Left };
  State state = State::H;
  std::size_t i = best_i;
  std::size_t j = best_j;
  std::vector<AlignedColumn> cols;
  for (;;) {
    if (state == State::H) {
      const int v = h(i, j);
      if (v == 0) break;
      if (v == h(i - 1, j - 1) + scheme.score(a[i - 1], b[j - 1])) {
        cols.push_back({i - 1, j - 1});
        --i;
        --j;
      } else if (allow_gaps && v == f(i, j)) {
        state = State::Up;
      } else {
        assert(allow_gaps && v == e(i, j));
        state = State::Left;
      }
    } else if (state == State::Up) {
      const int v = f(i, j);
      cols.push_back({i - 1, std::nullopt});
      state = v == h(i - 1, j) + open ? State::H : State::Up;
      --i;
    } else {
      const int v = e(i, j);
      cols.push_back({std::nullopt, j - 1});
      state = v == h(i, j - 1) + open ? State::H : State::Left;
      --j;
    }
  }
  std::reverse(cols.begin(), cols.end());

  result.span_a = {i, best_i};
  result.span_b = {j, best_j};
  result.columns = std::move(cols);
  return result;
}

int naive_local(const MetronomeString& a, const MetronomeString& b) {
  return local_score(a, b, uniform_scheme(), GapPolicy::Forbidden);
}

int uniform_local(const MetronomeString& a, const MetronomeString& b) {
  return local_score(a, b, uniform_scheme(), GapPolicy::Affine);
}

int score_columns(const MetronomeString& a, const MetronomeString& b,
                  const std::vector<AlignedColumn>& columns, const ScoreScheme& scheme) {
  enum class Kind { None, Match, GapInB, GapInA };
  Kind prev = Kind::None;
  int total = 0;
  for (const AlignedColumn& c : columns) {
    if (c.a && c.b) {
      total += scheme.score(a[*c.a], b[*c.b]);
      prev = Kind::Match;
    } else if (c.a) {
      total += prev == Kind::GapInB ? scheme.gap_extend() : scheme.gap_open();
      prev = Kind::GapInB;
    } else if (c.b) {
      total += prev == Kind::GapInA ? scheme.gap_extend() : scheme.gap_open();
      prev = Kind::GapInA;
    }
  }
  return total;
}

}  // namespace metronome
