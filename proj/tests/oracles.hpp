#pragma once
// Reference implementations the tests check the library against. Everything
// here is deliberately brute force — different algorithms, no shared code
// with src/ — so an agreement between the two is meaningful evidence.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "ftspan/common.hpp"
#include "ftspan/metric.hpp"
#include "ftspan/net_tree.hpp"
#include "ftspan/spanner.hpp"

namespace oracles {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// All-pairs shortest paths over the spanner with some points removed.
// Floyd-Warshall: cubic, immune to the usual Dijkstra pitfalls.
inline std::vector<std::vector<double>> apsp(const ftspan::FtSpanner& sp,
                                             const std::vector<int>& faults = {}) {
  int n = sp.points();
  std::vector<char> dead(n, 0);
  for (int f : faults) dead[f] = 1;
  std::vector<std::vector<double>> d(n, std::vector<double>(n, kInf));
  for (int i = 0; i < n; ++i)
    if (!dead[i]) d[i][i] = 0.0;
  for (const ftspan::SpannerEdge& e : sp.edges()) {
    if (dead[e.u] || dead[e.v]) continue;
    d[e.u][e.v] = std::min(d[e.u][e.v], e.w);
    d[e.v][e.u] = std::min(d[e.v][e.u], e.w);
  }
  for (int m = 0; m < n; ++m) {
    if (dead[m]) continue;
    for (int i = 0; i < n; ++i) {
      if (dead[i] || d[i][m] == kInf) continue;
      for (int j = 0; j < n; ++j)
        if (d[i][m] + d[m][j] < d[i][j]) d[i][j] = d[i][m] + d[m][j];
    }
  }
  return d;
}

// Worst distance blow-up over pairs that survive the fault set.
inline double worst_stretch(const ftspan::FtSpanner& sp, const ftspan::Metric& m,
                            const std::vector<int>& faults = {}) {
  auto d = apsp(sp, faults);
  std::vector<char> dead(m.size(), 0);
  for (int f : faults) dead[f] = 1;
  double worst = 1.0;
  for (int p = 0; p < m.size(); ++p) {
    if (dead[p]) continue;
    for (int q = p + 1; q < m.size(); ++q) {
      if (dead[q]) continue;
      worst = std::max(worst, d[p][q] == kInf ? kInf : d[p][q] / m(p, q));
    }
  }
  return worst;
}

// Exhaustive maximum of worst_stretch over every fault set of size <= k.
// Tiny instances only (the loop is O(n^k) fault sets times a cubic).
inline double exhaustive_worst_stretch(const ftspan::FtSpanner& sp, const ftspan::Metric& m,
                                       int k) {
  int n = m.size();
  double worst = worst_stretch(sp, m);
  std::vector<int> pick;
  auto rec = [&](auto&& self, int from) -> void {
    if (int(pick.size()) > 0) worst = std::max(worst, worst_stretch(sp, m, pick));
    if (int(pick.size()) == k) return;
    for (int v = from; v < n; ++v) {
      pick.push_back(v);
      self(self, v + 1);
      pick.pop_back();
    }
  };
  rec(rec, 0);
  return worst;
}

// Fewest edges of any path within the weight budget (1+eps)*d(p,q); layered
// relaxation with one matrix per hop count, n rounds at most. -1 if no path
// within n-1 hops makes the budget.
inline int hops_needed(const ftspan::FtSpanner& sp, const ftspan::Metric& m, double eps,
                       int p, int q) {
  int n = sp.points();
  double budget = (1.0 + eps) * m(p, q);
  std::vector<double> cur(n, kInf);
  cur[p] = 0.0;
  for (int h = 1; h < n; ++h) {
    std::vector<double> nxt = cur;
    for (const ftspan::SpannerEdge& e : sp.edges()) {
      if (cur[e.u] + e.w < nxt[e.v]) nxt[e.v] = cur[e.u] + e.w;
      if (cur[e.v] + e.w < nxt[e.u]) nxt[e.u] = cur[e.v] + e.w;
    }
    cur = std::move(nxt);
    if (ftspan::le_tol(cur[q], budget)) return h;
  }
  return -1;
}

inline int hop_diameter(const ftspan::FtSpanner& sp, const ftspan::Metric& m, double eps) {
  int worst = 0;
  for (int p = 0; p < m.size(); ++p)
    for (int q = p + 1; q < m.size(); ++q) {
      int h = hops_needed(sp, m, eps, p, q);
      if (h < 0) return -1;
      worst = std::max(worst, h);
    }
  return worst;
}

// Kruskal over the full distance matrix (the library uses Prim).
inline double kruskal_mst(const ftspan::Metric& m) {
  int n = m.size();
  if (n < 2) return 0.0;
  struct E {
    double w;
    int a, b;
  };
  std::vector<E> es;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) es.push_back({m(a, b), a, b});
  std::sort(es.begin(), es.end(), [](const E& x, const E& y) {
    if (x.w != y.w) return x.w < y.w;
    if (x.a != y.a) return x.a < y.a;
    return x.b < y.b;
  });
  std::vector<int> root(n);
  std::iota(root.begin(), root.end(), 0);
  auto find = [&](int v) {
    while (root[v] != v) v = root[v] = root[root[v]];
    return v;
  };
  double total = 0.0;
  int joined = 0;
  for (const E& e : es) {
    int ra = find(e.a), rb = find(e.b);
    if (ra == rb) continue;
    root[ra] = rb;
    total += e.w;
    if (++joined == n - 1) break;
  }
  return total;
}

inline double brute_min_distance(const ftspan::Metric& m) {
  double best = kInf;
  for (int a = 0; a < m.size(); ++a)
    for (int b = a + 1; b < m.size(); ++b) best = std::min(best, m(a, b));
  return best;
}

inline double brute_diameter(const ftspan::Metric& m) {
  double best = 0.0;
  for (int a = 0; a < m.size(); ++a)
    for (int b = a + 1; b < m.size(); ++b) best = std::max(best, m(a, b));
  return best;
}

inline bool triangle_ok(const ftspan::Metric& m) {
  for (int a = 0; a < m.size(); ++a)
    for (int b = 0; b < m.size(); ++b)
      for (int c = 0; c < m.size(); ++c)
        if (!ftspan::le_tol(m(a, b), m(a, c) + m(c, b))) return false;
  return true;
}

// Structural re-check of the net hierarchy: separation and coverage of each
// net, parent and descendant distance bounds, and that the bottom level is
// exactly the point set. Returns human-readable violations; empty is healthy.
inline std::vector<std::string> net_tree_findings(const ftspan::NetTree& t,
                                                  const ftspan::Metric& m) {
  std::vector<std::string> bad;
  auto say = [&](const std::string& s) { bad.push_back(s); };
  if (t.size(0) != m.size()) say("level 0 is not the whole point set");
  for (int i = 0; i < t.size(0); ++i)
    if (t.point(0, i) != i) say("level 0 ids out of order at " + std::to_string(i));
  if (t.size(t.ell()) != 1) say("top level is not a singleton");
  for (int l = 1; l < t.levels(); ++l) {
    double sep = 3.0 * t.rad(l);
    for (int a = 0; a < t.size(l); ++a)
      for (int b = a + 1; b < t.size(l); ++b)
        if (m(t.point(l, a), t.point(l, b)) <= sep)
          say("level " + std::to_string(l) + " points " + std::to_string(t.point(l, a)) +
              "," + std::to_string(t.point(l, b)) + " closer than the separation");
    for (int c = 0; c < t.size(l - 1); ++c) {
      double best = kInf;
      for (int a = 0; a < t.size(l); ++a)
        best = std::min(best, m(t.point(l - 1, c), t.point(l, a)));
      if (!ftspan::le_tol(best, sep))
        say("level " + std::to_string(l - 1) + " point " + std::to_string(t.point(l - 1, c)) +
            " not covered at level " + std::to_string(l));
    }
  }
  for (int l = 0; l + 1 < t.levels(); ++l)
    for (int idx = 0; idx < t.size(l); ++idx) {
      int par = t.parent(l, idx);
      if (par < 0) {
        say("missing parent at level " + std::to_string(l));
        continue;
      }
      if (!ftspan::le_tol(m(t.point(l, idx), t.point(l + 1, par)), 3.0 * t.rad(l + 1)))
        say("parent of " + std::to_string(t.point(l, idx)) + " at level " + std::to_string(l) +
            " is too far");
    }
  // Climbing the parent chain multiplies out to a short geometric sum, so
  // every descendant sits within 3.75 radii of its ancestor.
  for (int l = 0; l < t.levels(); ++l)
    for (int idx = 0; idx < t.size(l); ++idx)
      for (int pt : t.descendants(l, idx))
        if (!ftspan::le_tol(m(pt, t.point(l, idx)), 3.75 * t.rad(l)))
          say("descendant " + std::to_string(pt) + " strays from its level-" +
              std::to_string(l) + " ancestor");
  return bad;
}

// Classic greedy t-spanner, the k=0 baseline: scan pairs by ascending
// distance, keep an edge unless the graph so far already serves the pair
// within budget.
inline ftspan::FtSpanner classic_greedy(const ftspan::Metric& m, double t) {
  int n = m.size();
  ftspan::FtSpanner out(n);
  struct P {
    double w;
    int a, b;
  };
  std::vector<P> ps;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) ps.push_back({m(a, b), a, b});
  std::sort(ps.begin(), ps.end(), [](const P& x, const P& y) {
    if (x.w != y.w) return x.w < y.w;
    if (x.a != y.a) return x.a < y.a;
    return x.b < y.b;
  });
  std::vector<std::vector<double>> d(n, std::vector<double>(n, kInf));
  for (int i = 0; i < n; ++i) d[i][i] = 0.0;
  for (const P& p : ps) {
    if (ftspan::le_tol(d[p.a][p.b], t * p.w)) continue;
    out.add(p.a, p.b, p.w, ftspan::EdgeKind::cross_clique, 0);
    // One added edge: relax through its endpoints instead of a full rerun.
    for (int i = 0; i < n; ++i) {
      if (d[i][p.a] == kInf && d[i][p.b] == kInf) continue;
      for (int j = 0; j < n; ++j) {
        double via_ab = d[i][p.a] + p.w + d[p.b][j];
        double via_ba = d[i][p.b] + p.w + d[p.a][j];
        double best = std::min(via_ab, via_ba);
        if (best < d[i][j]) d[i][j] = d[j][i] = best;
      }
    }
  }
  return out;
}

}  // namespace oracles
