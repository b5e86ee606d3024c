#include "ftspan/pipeline.hpp"

#include <utility>

#include "ftspan/log.hpp"

namespace ftspan {

BuildResult build_spanner(const Metric& raw, const BuildOptions& opt) {
  BuildResult r;
  double gamma = opt.gamma > 0.0 ? opt.gamma : DerivedParams::default_gamma(opt.eps);

  r.metric = std::make_unique<Metric>(raw.normalized());
  r.scale = r.metric->scale();
  const Metric& m = *r.metric;

  r.tree = std::make_unique<NetTree>(NetTree::build(m));
  r.tree->add_cross_edges(m, gamma);
  r.params = DerivedParams::derive(*r.tree, opt.k, opt.eps, gamma, opt.xi_override);
  r.table = compute_sets(*r.tree, m, r.params);
  r.spanner = assemble_spanner(*r.tree, m, r.table, opt.mode);

  r.pruned = prune_tree(*r.tree, r.table);
  r.light = light_subtrees(r.pruned, *r.tree, m.diameter(), m.size());
  if (opt.shortcuts) {
    for (const std::vector<int>& sub : r.light) {
      auto pairs = tree_one_spanner(r.pruned, *r.tree, m, sub);
      r.shortcut_pairs += (long long)pairs.size();
      add_shortcuts(r.spanner, *r.tree, m, r.table, r.pruned, pairs, opt.mode);
    }
  }
  if (log_enabled())
    log_line("build: n=" + std::to_string(m.size()) + " k=" + std::to_string(opt.k) +
             " edges=" + std::to_string(r.spanner.size()) +
             " shortcut_pairs=" + std::to_string(r.shortcut_pairs));
  return r;
}

}  // namespace ftspan
