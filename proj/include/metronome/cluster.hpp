#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "metronome/distance.hpp"

namespace metronome {

/// Ward uses the Lance-Williams update on unsquared dissimilarities (as in
/// R's ward.D2), which reproduces Ward's criterion for Euclidean inputs.
enum class Linkage { Average, Complete, Single, Ward };

/// "average", "complete", "single" or "ward".
Linkage parse_linkage(std::string_view name);
std::string_view linkage_name(Linkage linkage) noexcept;

class ClusterError : public Error {
 public:
  enum class Kind { KOutOfRange, IdMismatch, Format, UnknownLinkage };

  ClusterError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

/// One agglomeration step. Leaves are nodes 0..n-1; the t-th merge creates
/// node n+t. `left` is the child whose smallest leaf id sorts first.
struct Merge {
  std::size_t left = 0;
  std::size_t right = 0;
  double height = 0.0;
  std::size_t node = 0;
};

struct Dendrogram {
  std::vector<std::string> leaf_ids;
  std::vector<Merge> merges;  // n-1 merges, in merge order

  std::size_t leaf_count() const noexcept { return leaf_ids.size(); }
};

/// Lance-Williams agglomerative clustering. Among equal heights, the pair
/// whose (smaller, larger) leaf-id representatives sort first is merged
/// first, where a cluster's representative is its smallest leaf id; the
/// resulting tree therefore depends on ids, not on matrix row order.
Dendrogram agglomerate(const DistanceMatrix& matrix, Linkage linkage = Linkage::Average);

/// Characters outside [A-Za-z0-9_-] become '_'.
std::string sanitize_newick_label(std::string_view id);

/// Ultrametric Newick: a node at merge height h sits at depth h/2 above the
/// leaves, so branch length = (parent height - child height) / 2 and the
/// patristic distance between two leaves equals their merge height.
std::string to_newick(const Dendrogram& dendrogram);

struct NewickNode {
  std::string name;
  double length = 0.0;
  std::vector<NewickNode> children;
};

/// Parses the subset of Newick that to_newick emits (names, lengths,
/// nesting), enough to read our own trees back.
NewickNode parse_newick(std::string_view text);

/// Flat clustering. Cluster indices are 0..k-1, numbered in order of each
/// cluster's smallest id.
struct Partition {
  std::vector<std::string> ids;
  std::vector<std::size_t> assignment;  // parallel to ids
  std::size_t cluster_count = 0;

  /// Builds a partition from arbitrary per-id group keys.
  static Partition from_labels(std::vector<std::string> ids, const std::vector<std::string>& groups);
};

/// Undoes the k-1 highest merges. Throws KOutOfRange unless 1 <= k <= n.
Partition cut(const Dendrogram& dendrogram, std::size_t k);

/// Pair-counting Adjusted Rand Index. When the chance-corrected denominator
/// vanishes the result is 1 for identical partitions and 0 otherwise.
/// Throws IdMismatch if the id sets differ.
double adjusted_rand_index(const Partition& a, const Partition& b);

/// Two-column TSV "id<TAB>cluster".
void write_partition(std::ostream& out, const Partition& p);
void save_partition(const std::filesystem::path& path, const Partition& p);
Partition read_partition(std::istream& in);
Partition load_partition(const std::filesystem::path& path);

}  // namespace metronome
