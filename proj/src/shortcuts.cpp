#include "ftspan/shortcuts.hpp"

#include <algorithm>
#include <deque>

#include "ftspan/common.hpp"
#include "ftspan/log.hpp"
#include "ftspan/metric.hpp"
#include "ftspan/net_tree.hpp"

namespace ftspan {

PrunedTree prune_tree(const NetTree& t, const SurrogateTable& tb) {
  PrunedTree pt;
  int root_level = t.levels() - 1;
  if (!tb.dirty(root_level, 0)) return pt;  // no dirty node anywhere

  // BFS keeps parents ahead of children in the node list. Each queue entry
  // carries the already-collapsed child group of the node it came from.
  struct Item {
    int level, idx, parent;
  };
  std::deque<Item> q;
  q.push_back({root_level, 0, -1});
  while (!q.empty()) {
    Item it = q.front();
    q.pop_front();
    int me = pt.size();
    pt.nodes.emplace_back(it.level, it.idx);
    pt.parent.push_back(it.parent);
    pt.children.emplace_back();
    if (it.parent >= 0) pt.children[it.parent].push_back(me);

    std::vector<std::pair<int, int>> group;
    for (int c : t.children(it.level, it.idx))
      if (tb.dirty(it.level - 1, c)) group.emplace_back(it.level - 1, c);

    // A child group folds away only as a whole: every member must repeat this
    // node's replacement set. Grandchildren then move up and get re-tested.
    while (!group.empty()) {
      bool all_same = true;
      for (const auto& [gl, gi] : group)
        if (!tb.same_surrogates(it.level, it.idx, gl, gi)) {
          all_same = false;
          break;
        }
      if (!all_same) break;
      std::vector<std::pair<int, int>> next;
      for (const auto& [gl, gi] : group)
        for (int c : t.children(gl, gi))
          if (tb.dirty(gl - 1, c)) next.emplace_back(gl - 1, c);
      group = std::move(next);
    }
    for (const auto& [gl, gi] : group) q.push_back({gl, gi, me});
  }
  if (log_enabled())
    log_line("prune: " + std::to_string(pt.size()) + " nodes kept");
  return pt;
}

std::vector<std::vector<int>> light_subtrees(const PrunedTree& pt, const NetTree& t,
                                             double delta, int n) {
  std::vector<std::vector<int>> out;
  if (n <= 0) return out;
  double thr = delta / n;
  auto light = [&](int v) { return t.rad(pt.nodes[v].first) < thr; };
  for (int v = 0; v < pt.size(); ++v) {
    if (!light(v)) continue;
    int par = pt.parent[v];
    if (par >= 0 && light(par)) continue;  // not the top of its light run
    std::vector<int> grp;
    std::vector<int> stack{v};
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      grp.push_back(x);
      // reversed push keeps the DFS order equal to the children order
      const auto& ch = pt.children[x];
      for (auto rit = ch.rbegin(); rit != ch.rend(); ++rit) stack.push_back(*rit);
    }
    out.push_back(std::move(grp));
  }
  return out;
}

std::vector<ShortcutPair> tree_one_spanner(const PrunedTree& pt, const NetTree& t,
                                           const Metric& m, const std::vector<int>& sub) {
  std::vector<ShortcutPair> pairs;
  int s = int(sub.size());
  if (s < 3) return pairs;  // with two nodes, the tree edge is already optimal

  std::vector<int> pos(pt.size(), -1);
  for (int i = 0; i < s; ++i) pos[sub[i]] = i;

  // sub lists parents before children, so a reverse sweep accumulates sizes.
  std::vector<int> sz(s, 1);
  for (int i = s - 1; i > 0; --i) {
    int par = pos[pt.parent[sub[i]]];
    sz[par] += sz[i];
  }
  std::vector<int> heavy(s, -1);
  for (int i = 0; i < s; ++i) {
    int best = -1;
    for (int c : pt.children[sub[i]]) {
      int lc = pos[c];
      if (best < 0 || sz[lc] > sz[best]) best = lc;
    }
    heavy[i] = best;
  }

  auto pt_dist = [&](int a, int b) {
    auto [la, ia] = pt.nodes[a];
    auto [lb, ib] = pt.nodes[b];
    return m(t.point(la, ia), t.point(lb, ib));
  };

  for (int i = 0; i < s; ++i) {
    int par = pt.parent[sub[i]];
    bool head = (i == 0) || (pos[par] < 0) || (heavy[pos[par]] != i);
    if (!head) continue;
    std::vector<int> path{sub[i]};  // heavy chain, top to bottom
    for (int cur = i; heavy[cur] >= 0; cur = heavy[cur]) path.push_back(sub[heavy[cur]]);
    int mlen = int(path.size());
    if (mlen < 3) continue;

    std::vector<double> pref(mlen, 0.0);
    for (int j = 1; j < mlen; ++j) pref[j] = pref[j - 1] + pt_dist(path[j - 1], path[j]);

    // One pair per canonical interval longer than a single tree edge. Any
    // stretch of the path splits into O(log) such intervals end to end.
    std::vector<std::pair<int, int>> ivs{{0, mlen - 1}};
    while (!ivs.empty()) {
      auto [l, r] = ivs.back();
      ivs.pop_back();
      if (r - l < 2) continue;
      pairs.push_back({path[l], path[r], pref[r] - pref[l]});
      int mid = (l + r) / 2;
      ivs.emplace_back(l, mid);
      ivs.emplace_back(mid, r);
    }
  }
  return pairs;
}

void add_shortcuts(FtSpanner& sp, const NetTree& t, const Metric& m, const SurrogateTable& tb,
                   const PrunedTree& pt, const std::vector<ShortcutPair>& pairs, Mode mode) {
  int k = tb.params().k;
  for (const ShortcutPair& pr : pairs) {
    auto [la, ia] = pt.nodes[pr.a];
    auto [lb, ib] = pt.nodes[pr.b];
    if (!tb.dirty(la, ia) || !tb.dirty(lb, ib))
      throw construction_error("shortcut endpoint (" + std::to_string(t.point(la, ia)) + "," +
                               std::to_string(la) + ") is not dirty");
    if (tb.same_surrogates(la, ia, lb, ib)) continue;
    const std::vector<int>& sa = tb.surrogates(la, ia);
    const std::vector<int>& sb = tb.surrogates(lb, ib);
    double bound = pr.tree_dist + 34.0 * (t.rad(la) + t.rad(lb));
    int level = std::max(la, lb);
    if (mode == Mode::matching) {
      if (int(sa.size()) != k + 1 || int(sb.size()) != k + 1)
        throw construction_error("shortcut matching endpoint batch has size " +
                                 std::to_string(sa.size()) + "/" + std::to_string(sb.size()) +
                                 ", expected " + std::to_string(k + 1));
      for (int j = 0; j <= k; ++j) {
        int u = sa[j], v = sb[j];
        if (u == v) continue;
        double w = m(u, v);
        if (!le_tol(w, bound))
          throw construction_error("shortcut edge (" + std::to_string(u) + "," +
                                   std::to_string(v) + ") weight " + std::to_string(w) +
                                   " exceeds bound " + std::to_string(bound));
        sp.add(u, v, w, EdgeKind::shortcut_matching, level);
      }
    } else {
      for (int u : sa)
        for (int v : sb) {
          if (u == v) continue;
          double w = m(u, v);
          if (!le_tol(w, bound))
            throw construction_error("shortcut edge (" + std::to_string(u) + "," +
                                     std::to_string(v) + ") weight " + std::to_string(w) +
                                     " exceeds bound " + std::to_string(bound));
          sp.add(u, v, w, EdgeKind::shortcut_clique, level);
        }
    }
  }
}

}  // namespace ftspan
