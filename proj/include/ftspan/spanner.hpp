#pragma once
#include <cstdint>
#include <unordered_set>
#include <vector>

#include "ftspan/surrogates.hpp"

namespace ftspan {

// clique_only replaces every useful edge by a full bipartite clique between
// the two replacement sets; matching thins that to a perfect matching
// whenever both endpoints are dirty (sets of equal size k+1).
enum class Mode { clique_only, matching };

enum class EdgeKind : std::uint8_t {
  cross_clique,
  cross_matching,
  tree_clique,
  tree_matching,
  internal_clique,
  shortcut_matching,
  shortcut_clique,
};
constexpr int kEdgeKinds = 7;
const char* kind_name(EdgeKind k);

struct SpannerEdge {
  int u = -1;
  int v = -1;
  double w = 0.0;
  EdgeKind kind = EdgeKind::cross_clique;
  int level = 0;
};

// Edge set over the point ids of the underlying metric. A point pair is
// stored at most once; the first emission decides its kind and level.
class FtSpanner {
 public:
  explicit FtSpanner(int n) : n_(n), deg_(n, 0) {}

  int points() const { return n_; }
  // False (and no insertion) for self-pairs and already-present pairs.
  bool add(int u, int v, double w, EdgeKind kind, int level);
  bool has(int u, int v) const;
  const std::vector<SpannerEdge>& edges() const { return edges_; }
  long long size() const { return (long long)edges_.size(); }
  long long count(EdgeKind k) const { return kind_count_[int(k)]; }
  int degree(int point) const { return deg_[point]; }
  int max_degree() const;
  double total_weight() const;

 private:
  int n_;
  std::vector<SpannerEdge> edges_;
  std::unordered_set<std::uint64_t> seen_;
  std::vector<int> deg_;
  long long kind_count_[kEdgeKinds] = {};
};

// Fault-tolerant point spanner from the decided table: every tree and cross
// edge whose endpoints hold different replacement sets becomes a bipartite
// clique (or matching), plus one small clique per dirty leaf tying the leaf
// point to its own replacement set — without that, a leaf whose point serves
// in no replacement set at all would end up isolated.
FtSpanner assemble_spanner(const NetTree& t, const Metric& m, const SurrogateTable& tb,
                           Mode mode);

}  // namespace ftspan
