#pragma once
#include <memory>
#include <vector>

#include "ftspan/metric.hpp"
#include "ftspan/net_tree.hpp"
#include "ftspan/params.hpp"
#include "ftspan/shortcuts.hpp"
#include "ftspan/spanner.hpp"
#include "ftspan/surrogates.hpp"

namespace ftspan {

struct BuildOptions {
  int k = 0;
  double eps = 0.5;
  double gamma = 0.0;  // 0 picks the default for eps
  Mode mode = Mode::matching;
  bool shortcuts = true;
  int xi_override = -1;  // test hook: tightens the degree budget artificially
};

// Everything one construction produces. The metric and tree live on the heap
// because the surrogate table keeps a pointer to the tree; moving the result
// around must not invalidate it.
struct BuildResult {
  std::unique_ptr<Metric> metric;  // normalized working copy (min distance 1)
  double scale = 1.0;              // divisor applied; multiply to undo
  std::unique_ptr<NetTree> tree;
  DerivedParams params;
  SurrogateTable table;
  FtSpanner spanner{0};
  PrunedTree pruned;
  std::vector<std::vector<int>> light;
  long long shortcut_pairs = 0;
};

// Full construction: normalize, net tree, cross edges, replacement sets,
// edge assembly, then hop shortcuts over the pruned tree's light subtrees.
BuildResult build_spanner(const Metric& raw, const BuildOptions& opt);

}  // namespace ftspan
