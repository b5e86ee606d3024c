#pragma once
#include <utility>
#include <vector>

#include "ftspan/metric.hpp"

namespace ftspan {

// Hierarchy of nets N_0 (all points) up to a singleton N_ell, with one tree
// node per (point, level) membership. Level-i net points are kept > 3*5^i
// apart and cover level i-1 within 3*5^i, so every reading of the covering /
// packing bounds downstream holds with room to spare.
//
// Nodes are addressed as (level, idx) where idx indexes the sorted point list
// of that level; level 0 indices coincide with point ids.
class NetTree {
 public:
  static NetTree build(const Metric& m);

  // Same-level edges between net points within gamma * 5^i, for every level
  // below the root. Must be called once before anything cross-edge related.
  void add_cross_edges(const Metric& m, double gamma);

  int ell() const { return int(levels_.size()) - 1; }
  int levels() const { return int(levels_.size()); }
  int size(int level) const { return int(levels_[level].size()); }
  const std::vector<int>& net(int level) const { return levels_[level]; }
  int point(int level, int idx) const { return levels_[level][idx]; }
  double rad(int level) const { return pow5_[level]; }

  // -1 when the point is not in that net.
  int idx_of(int level, int point) const;
  // Parent idx at level+1; -1 only for the root.
  int parent(int level, int idx) const { return parent_[level][idx]; }
  // Children idxs at level-1, ascending by point id.
  const std::vector<int>& children(int level, int idx) const { return children_[level][idx]; }
  // Leaf points under a node, ascending. Computed once at build time.
  const std::vector<int>& descendants(int level, int idx) const { return desc_[level][idx]; }
  // Ancestor idx of a point at a given level.
  int ancestor_of_point(int point, int level) const { return anc_[level][point]; }

  bool has_cross_edges() const { return has_cross_; }
  double gamma() const { return gamma_; }
  // Pairs (a, b), a < b, both idxs into net(level); sorted lexicographically.
  const std::vector<std::pair<int, int>>& cross(int level) const { return cross_[level]; }
  // Neighbor idxs of a node at its level, ascending.
  const std::vector<int>& cross_neighbors(int level, int idx) const {
    return cross_adj_[level][idx];
  }
  bool cross_linked(int level, int a, int b) const;

  // Realized max node degree of the basic spanner (tree + cross edges).
  int xi() const { return xi_; }
  long long cross_edge_total() const;

  // Lockstep climb from (p,0) and (q,0) to the lowest level where the two
  // ancestors are cross-linked or coincide. Nodes are (level, point) pairs,
  // listed p-side first, top pair in the middle, then down to q.
  struct ClimbPath {
    std::vector<std::pair<int, int>> nodes;
    double weight = 0.0;
    int meet_level = -1;
  };
  ClimbPath base_spanner_path(const Metric& m, int p, int q) const;

 private:
  std::vector<std::vector<int>> levels_;
  std::vector<std::vector<int>> parent_;
  std::vector<std::vector<std::vector<int>>> children_;
  std::vector<std::vector<std::vector<int>>> desc_;
  std::vector<std::vector<int>> anc_;  // [level][point] -> idx in that level
  std::vector<double> pow5_;
  bool has_cross_ = false;
  double gamma_ = 0.0;
  std::vector<std::vector<std::pair<int, int>>> cross_;
  std::vector<std::vector<std::vector<int>>> cross_adj_;
  int xi_ = 0;
};

}  // namespace ftspan
