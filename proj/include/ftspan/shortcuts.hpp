#pragma once
#include <utility>
#include <vector>

#include "ftspan/spanner.hpp"

namespace ftspan {

// Skeleton of the net tree after dropping clean nodes and collapsing whole
// child groups that repeat the parent's replacement set. Since a dirty node's
// ancestors are all dirty, what survives is still a tree (possibly empty).
struct PrunedTree {
  std::vector<std::pair<int, int>> nodes;  // (level, net index), parents first
  std::vector<int> parent;                 // index into nodes, -1 at the root
  std::vector<std::vector<int>> children;  // indices into nodes
  int size() const { return int(nodes.size()); }
};

PrunedTree prune_tree(const NetTree& t, const SurrogateTable& tb);

// Maximal subtrees whose nodes all have radius strictly below delta / n.
// Radius shrinks down the tree, so each group is the full subtree under its
// first entry.
std::vector<std::vector<int>> light_subtrees(const PrunedTree& pt, const NetTree& t,
                                             double delta, int n);

struct ShortcutPair {
  int a = -1;  // node indices into the pruned tree; a is the ancestor
  int b = -1;
  double tree_dist = 0.0;  // summed point distance along the tree path a..b
};

// Hop-shrinking extra pairs for one subtree (as produced by light_subtrees):
// heavy-path decomposition, then one pair per canonical binary interval of
// each path. Any two subtree nodes are then reachable in O(log^2 size) hops
// through pairs and tree edges whose tree distances add up exactly, at the
// cost of under one extra pair per node and O(log size) pairs per node.
std::vector<ShortcutPair> tree_one_spanner(const PrunedTree& pt, const NetTree& t,
                                           const Metric& m, const std::vector<int>& sub);

// Materializes shortcut pairs as edges between the endpoint replacement sets.
// Pairs with equal sets are skipped; a clean endpoint means the pruning above
// went wrong and raises construction_error.
void add_shortcuts(FtSpanner& sp, const NetTree& t, const Metric& m, const SurrogateTable& tb,
                   const PrunedTree& pt, const std::vector<ShortcutPair>& pairs, Mode mode);

}  // namespace ftspan
