#include "metronome/cluster.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <tuple>
#include <unordered_map>

namespace metronome {

Linkage parse_linkage(std::string_view name) {
  if (name == "average") return Linkage::Average;
  if (name == "complete") return Linkage::Complete;
  if (name == "single") return Linkage::Single;
  if (name == "ward") return Linkage::Ward;
  throw ClusterError(ClusterError::Kind::UnknownLinkage,
                     "unknown linkage '" + std::string(name) + "' (expected average, complete, single, ward)");
}

std::string_view linkage_name(Linkage linkage) noexcept {
  switch (linkage) {
    case Linkage::Average: return "average";
    case Linkage::Complete: return "complete";
    case Linkage::Single: return "single";
    case Linkage::Ward: return "ward";
  }
  return "average";
}

Dendrogram agglomerate(const DistanceMatrix& matrix, Linkage linkage) {
  const std::size_t n = matrix.size();
  Dendrogram out;
  out.leaf_ids = matrix.ids();
  if (n < 2) return out;

  // rep[c]: rank (in sorted id order) of the smallest leaf id in slot c.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return matrix.ids()[x] < matrix.ids()[y]; });
  std::vector<std::size_t> rep(n);
  for (std::size_t r = 0; r < n; ++r) rep[order[r]] = r;

  std::vector<double> d(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) d[i * n + j] = matrix.at(i, j);
  }
  std::vector<bool> active(n, true);
  std::vector<std::size_t> size(n, 1);
  std::vector<std::size_t> node(n);
  std::iota(node.begin(), node.end(), 0);

  using Key = std::tuple<double, std::size_t, std::size_t>;
  auto key = [&](std::size_t i, std::size_t j) {
    return Key{d[i * n + j], std::min(rep[i], rep[j]), std::max(rep[i], rep[j])};
  };

  // nearest[i]: the active partner minimizing key(i, .).
  std::vector<std::optional<std::size_t>> nearest(n);
  auto rescan = [&](std::size_t i) {
    std::optional<std::size_t> best;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i || !active[j]) continue;
      if (!best || key(i, j) < key(i, *best)) best = j;
    }
    nearest[i] = best;
  };
  for (std::size_t i = 0; i < n; ++i) rescan(i);

  out.merges.reserve(n - 1);
  for (std::size_t step = 0; step + 1 < n; ++step) {
    std::optional<std::size_t> pick;
    for (std::size_t i = 0; i < n; ++i) {
      if (!active[i] || !nearest[i]) continue;
      if (!pick || key(i, *nearest[i]) < key(*pick, *nearest[*pick])) pick = i;
    }
    std::size_t a = *pick;
    std::size_t b = *nearest[a];
    if (rep[b] < rep[a]) std::swap(a, b);

    const double height = d[a * n + b];
    out.merges.push_back(Merge{node[a], node[b], height, n + step});

    active[b] = false;
    for (std::size_t k = 0; k < n; ++k) {
      if (!active[k] || k == a) continue;
      const double dka = d[k * n + a];
      const double dkb = d[k * n + b];
      double merged = 0.0;
      switch (linkage) {
        case Linkage::Average:
          merged = (static_cast<double>(size[a]) * dka + static_cast<double>(size[b]) * dkb) /
                   static_cast<double>(size[a] + size[b]);
          break;
        case Linkage::Complete: merged = std::max(dka, dkb); break;
        case Linkage::Single: merged = std::min(dka, dkb); break;
        case Linkage::Ward: {
          const double na = static_cast<double>(size[a]);
          const double nb = static_cast<double>(size[b]);
          const double nk = static_cast<double>(size[k]);
          const double sq = ((na + nk) * dka * dka + (nb + nk) * dkb * dkb - nk * height * height) / (na + nb + nk);
          merged = std::sqrt(std::max(sq, 0.0));
          break;
        }
      }
      d[k * n + a] = d[a * n + k] = merged;
    }
    size[a] += size[b];
    node[a] = n + step;

    for (std::size_t k = 0; k < n; ++k) {
      if (!active[k] || k == a) continue;
      if (nearest[k] == a || nearest[k] == b) {
        rescan(k);
      } else if (key(k, a) < key(k, *nearest[k])) {
        nearest[k] = a;
      }
    }
    rescan(a);
  }
  return out;
}

std::string sanitize_newick_label(std::string_view id) {
  std::string out(id);
  for (char& c : out) {
    const bool ok = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
                    c == '_' || c == '-';
    if (!ok) c = '_';
  }
  return out;
}

namespace {

std::string format_length(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

std::string to_newick(const Dendrogram& dendrogram) {
  const std::size_t n = dendrogram.leaf_count();
  if (n == 0) return ";";
  if (n == 1) return sanitize_newick_label(dendrogram.leaf_ids[0]) + ";";

  std::vector<double> height(2 * n - 1, 0.0);
  for (const Merge& m : dendrogram.merges) height[m.node] = m.height;

  // Iterative post-order so deep caterpillar trees cannot exhaust the stack.
  std::vector<std::string> text(2 * n - 1);
  for (std::size_t leaf = 0; leaf < n; ++leaf) text[leaf] = sanitize_newick_label(dendrogram.leaf_ids[leaf]);
  for (const Merge& m : dendrogram.merges) {
    const double h = m.height;
    std::string s = "(";
    s += text[m.left];
    s += ':';
    s += format_length((h - height[m.left]) / 2.0);
    s += ',';
    s += text[m.right];
    s += ':';
    s += format_length((h - height[m.right]) / 2.0);
    s += ')';
    text[m.node] = std::move(s);
    text[m.left].clear();
    text[m.right].clear();
  }
  return text[dendrogram.merges.back().node] + ";";
}

namespace {

class NewickParser {
 public:
  explicit NewickParser(std::string_view text) : text_(text) {}

  NewickNode parse() {
    NewickNode root = node();
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != ';') fail("expected ';'");
    ++pos_;
    skip_space();
    if (pos_ != text_.size()) fail("trailing characters after ';'");
    return root;
  }

 private:
  NewickNode node() {
    NewickNode out;
    skip_space();
    if (peek() == '(') {
      ++pos_;
      for (;;) {
        out.children.push_back(node());
        skip_space();
        if (peek() == ',') {
          ++pos_;
          continue;
        }
        if (peek() == ')') {
          ++pos_;
          break;
        }
        fail("expected ',' or ')'");
      }
    }
    out.name = label();
    skip_space();
    if (peek() == ':') {
      ++pos_;
      const std::string num = label();
      double v = 0.0;
      const auto res = std::from_chars(num.data(), num.data() + num.size(), v);
      if (num.empty() || res.ec != std::errc{} || res.ptr != num.data() + num.size()) {
        fail("bad branch length '" + num + "'");
      }
      out.length = v;
    }
    return out;
  }

  std::string label() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::string_view("(),:;").find(text_[pos_]) == std::string_view::npos &&
           text_[pos_] != ' ' && text_[pos_] != '\n' && text_[pos_] != '\t') {
      ++pos_;
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void skip_space() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\n' || text_[pos_] == '\t' ||
                                   text_[pos_] == '\r')) {
      ++pos_;
    }
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ClusterError(ClusterError::Kind::Format,
                       "newick: " + what + " at offset " + std::to_string(pos_));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

NewickNode parse_newick(std::string_view text) { return NewickParser(text).parse(); }

Partition Partition::from_labels(std::vector<std::string> ids, const std::vector<std::string>& groups) {
  // Smallest id per group decides the group's index.
  std::map<std::string, std::string> smallest;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    auto [it, inserted] = smallest.emplace(groups[i], ids[i]);
    if (!inserted && ids[i] < it->second) it->second = ids[i];
  }
  std::vector<std::pair<std::string, std::string>> by_id;  // (smallest id, group)
  for (const auto& [group, id] : smallest) by_id.emplace_back(id, group);
  std::sort(by_id.begin(), by_id.end());
  std::map<std::string, std::size_t> index;
  for (std::size_t c = 0; c < by_id.size(); ++c) index[by_id[c].second] = c;

  Partition p;
  p.assignment.resize(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) p.assignment[i] = index[groups[i]];
  p.ids = std::move(ids);
  p.cluster_count = by_id.size();
  return p;
}

Partition cut(const Dendrogram& dendrogram, std::size_t k) {
  const std::size_t n = dendrogram.leaf_count();
  if (k < 1 || k > n) {
    throw ClusterError(ClusterError::Kind::KOutOfRange,
                       "cut: k = " + std::to_string(k) + " outside [1, " + std::to_string(n) + "]");
  }
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<std::size_t> node_leaf(2 * n - 1);
  std::iota(node_leaf.begin(), node_leaf.begin() + static_cast<std::ptrdiff_t>(n), 0);
  for (std::size_t t = 0; t + k < n; ++t) {
    const Merge& m = dendrogram.merges[t];
    const std::size_t ra = find(node_leaf[m.left]);
    const std::size_t rb = find(node_leaf[m.right]);
    parent[rb] = ra;
    node_leaf[m.node] = ra;
  }
  std::vector<std::string> groups(n);
  for (std::size_t i = 0; i < n; ++i) groups[i] = std::to_string(find(i));
  return Partition::from_labels(dendrogram.leaf_ids, groups);
}

namespace {

double choose2(double x) { return x * (x - 1.0) / 2.0; }

}  // namespace

double adjusted_rand_index(const Partition& a, const Partition& b) {
  const std::size_t n = a.ids.size();
  if (b.ids.size() != n) {
    throw ClusterError(ClusterError::Kind::IdMismatch,
                       "partitions cover " + std::to_string(n) + " and " +
                           std::to_string(b.ids.size()) + " ids");
  }
  std::unordered_map<std::string, std::size_t> b_cluster;
  for (std::size_t i = 0; i < n; ++i) b_cluster.emplace(b.ids[i], b.assignment[i]);

  std::map<std::pair<std::size_t, std::size_t>, std::size_t> table;
  std::vector<std::size_t> rows(a.cluster_count, 0);
  std::vector<std::size_t> cols(b.cluster_count, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto it = b_cluster.find(a.ids[i]);
    if (it == b_cluster.end()) {
      throw ClusterError(ClusterError::Kind::IdMismatch, "id '" + a.ids[i] + "' missing from second partition");
    }
    ++table[{a.assignment[i], it->second}];
    ++rows[a.assignment[i]];
    ++cols[it->second];
  }

  double index = 0.0;
  for (const auto& [_, count] : table) index += choose2(static_cast<double>(count));
  double sum_rows = 0.0;
  for (const std::size_t r : rows) sum_rows += choose2(static_cast<double>(r));
  double sum_cols = 0.0;
  for (const std::size_t c : cols) sum_cols += choose2(static_cast<double>(c));
  const double total = choose2(static_cast<double>(n));

  const double expected = total > 0.0 ? sum_rows * sum_cols / total : 0.0;
  const double max_index = 0.5 * (sum_rows + sum_cols);
  const double denominator = max_index - expected;
  if (denominator == 0.0) {
    // Identical up to relabeling iff every nonempty cell fills its row and column.
    const bool identical = table.size() == rows.size() && table.size() == cols.size();
    return identical ? 1.0 : 0.0;
  }
  return (index - expected) / denominator;
}

void write_partition(std::ostream& out, const Partition& p) {
  for (std::size_t i = 0; i < p.ids.size(); ++i) out << p.ids[i] << '\t' << p.assignment[i] << '\n';
}

void save_partition(const std::filesystem::path& path, const Partition& p) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  write_partition(out, p);
  if (!out) throw IoError("failed writing partition to '" + path.string() + "'");
}

Partition read_partition(std::istream& in) {
  std::vector<std::string> ids;
  std::vector<std::string> groups;
  std::map<std::string, std::size_t> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos || tab == 0 ||
        tab + 1 == line.size()) {
      throw ClusterError(ClusterError::Kind::Format,
                         "partition line " + std::to_string(line_no) + ": expected 'id<TAB>cluster'");
    }
    std::string id = line.substr(0, tab);
    if (!seen.emplace(id, line_no).second) {
      throw ClusterError(ClusterError::Kind::Format, "partition line " + std::to_string(line_no) +
                                                         ": duplicate id '" + id + "'");
    }
    ids.push_back(std::move(id));
    groups.push_back(line.substr(tab + 1));
  }
  if (in.bad()) throw IoError("read error while loading partition");
  return Partition::from_labels(std::move(ids), groups);
}

Partition load_partition(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open partition '" + path.string() + "'");
  try {
    return read_partition(in);
  } catch (const ClusterError& e) {
    throw ClusterError(e.kind(), path.string() + ": " + e.what());
  }
}

}  // namespace metronome
