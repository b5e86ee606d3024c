#include "ftspan/spanner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <unordered_set>

#include "ftspan/common.hpp"
#include "ftspan/log.hpp"
#include "ftspan/metric.hpp"
#include "ftspan/net_tree.hpp"

namespace ftspan {
namespace {

inline std::uint64_t pair_key(int a, int b) {
  if (a > b) std::swap(a, b);
  return (std::uint64_t(std::uint32_t(a)) << 32) | std::uint64_t(std::uint32_t(b));
}

}  // namespace

const char* kind_name(EdgeKind k) {
  switch (k) {
    case EdgeKind::cross_clique: return "cross_clique";
    case EdgeKind::cross_matching: return "cross_matching";
    case EdgeKind::tree_clique: return "tree_clique";
    case EdgeKind::tree_matching: return "tree_matching";
    case EdgeKind::internal_clique: return "internal_clique";
    case EdgeKind::shortcut_matching: return "shortcut_matching";
    case EdgeKind::shortcut_clique: return "shortcut_clique";
  }
  return "unknown";
}

bool FtSpanner::add(int u, int v, double w, EdgeKind kind, int level) {
  if (u == v) return false;
  if (!seen_.insert(pair_key(u, v)).second) return false;
  edges_.push_back({u, v, w, kind, level});
  ++deg_[u];
  ++deg_[v];
  ++kind_count_[int(kind)];
  return true;
}

bool FtSpanner::has(int u, int v) const {
  if (u == v) return false;
  return seen_.count(pair_key(u, v)) != 0;
}

int FtSpanner::max_degree() const {
  int best = 0;
  for (int d : deg_) best = std::max(best, d);
  return best;
}

double FtSpanner::total_weight() const {
  double s = 0.0;
  for (const SpannerEdge& e : edges_) s += e.w;
  return s;
}

namespace {

// Bipartite clique between two replacement sets. Shared points produce
// self-pairs, which add() drops.
void emit_clique(FtSpanner& sp, const Metric& m, const std::vector<int>& a,
                 const std::vector<int>& b, double bound, EdgeKind kind, int level) {
  for (int u : a) {
    for (int v : b) {
      if (u == v) continue;
      double w = m(u, v);
      if (!le_tol(w, bound))
        throw construction_error("edge (" + std::to_string(u) + "," + std::to_string(v) +
                                 ") weight " + std::to_string(w) + " exceeds bound " +
                                 std::to_string(bound) + " at level " + std::to_string(level));
      sp.add(u, v, w, kind, level);
    }
  }
}

// Index-wise pairing of two id-sorted batches of equal size k+1.
void emit_matching(FtSpanner& sp, const Metric& m, const std::vector<int>& a,
                   const std::vector<int>& b, int k, double bound, EdgeKind kind, int level) {
  if ((int)a.size() != k + 1 || (int)b.size() != k + 1)
    throw construction_error("matching endpoint batch has size " + std::to_string(a.size()) +
                             "/" + std::to_string(b.size()) + ", expected " +
                             std::to_string(k + 1));
  for (int j = 0; j <= k; ++j) {
    int u = a[j], v = b[j];
    if (u == v) continue;
    double w = m(u, v);
    if (!le_tol(w, bound))
      throw construction_error("matching edge (" + std::to_string(u) + "," + std::to_string(v) +
                               ") weight " + std::to_string(w) + " exceeds bound " +
                               std::to_string(bound) + " at level " + std::to_string(level));
    sp.add(u, v, w, kind, level);
  }
}

constexpr double kInf = std::numeric_limits<double>::infinity();

// Pairs inside the level-0 cross radius are too close for set-to-set edges
// to serve: a hop through a replacement point costs a constant, and no
// gamma scaling amortizes that against a distance of order one. This range
// is covered directly instead. Sweep the pairs by increasing distance and
// keep a direct edge unless the edges kept so far already provide k+1
// interior-disjoint paths within the weight budget; a detour only counts
// once its exact weight has been checked, so a skipped pair is always a
// certified pair. Detours are also capped at O(log n) hops — otherwise
// dense instances certify long pairs through chains of short edges and the
// hop diameter creeps past logarithmic. A pair whose only detours are that
// long keeps its edge, which then shortens the chains around it.
void emit_close_range(FtSpanner& sp, const Metric& m, double reach, double eps, int k) {
  const int n = m.size();
  const int hop_cap =
      std::max(6, int(std::ceil(1.5 * std::log2(double(std::max(n, 2))))));
  struct ClosePair {
    double w;
    int a, b;
  };
  std::vector<ClosePair> pairs;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      double w = m(a, b);
      if (le_tol(w, reach)) pairs.push_back({w, a, b});
    }
  std::sort(pairs.begin(), pairs.end(), [](const ClosePair& x, const ClosePair& y) {
    if (x.w != y.w) return x.w < y.w;
    if (x.a != y.a) return x.a < y.a;
    return x.b < y.b;
  });

  std::vector<std::vector<int>> nbr(n);
  std::vector<std::unordered_set<int>> nbrset(n);
  std::vector<int> loc(n, -1);
  std::vector<double> dist;  // layered: dist[h * s + v], reused across pairs
  std::vector<int> par;      // predecessor per layer; -2 marks a carried value
  long long kept = 0, certified = 0;

  for (const ClosePair& pr : pairs) {
    const double budget = (1.0 + eps) * pr.w;

    // Fast path: detours with a single relay have exact weight, no flow
    // needed. Distinct relays give interior-disjoint paths for free.
    int relays = 0;
    const bool a_smaller = nbr[pr.a].size() <= nbr[pr.b].size();
    const std::vector<int>& side = a_smaller ? nbr[pr.a] : nbr[pr.b];
    const std::unordered_set<int>& other = a_smaller ? nbrset[pr.b] : nbrset[pr.a];
    for (int r : side)
      if (other.count(r) && le_tol(m(pr.a, r) + m(r, pr.b), budget) && ++relays > k) break;
    if (relays > k) {
      ++certified;
      continue;
    }

    bool need_edge = true;
    // Slow path: peel off interior-disjoint detours, fewest hops first. A
    // layered relaxation finds, per hop count, the lightest path using that
    // many edges; the first layer that meets the budget yields the detour,
    // and its interior is retired before the next peel. Every vertex of a
    // within-budget path sits inside the pair's budget ellipse, so the
    // search stays on the ellipse-local graph. Greedy peeling can miss
    // routings a flow would find, which only errs towards keeping an edge.
    std::vector<int> ell;
    for (int w = 0; w < n; ++w) {
      if (w == pr.a || w == pr.b) continue;
      if (le_tol(m(pr.a, w) + m(w, pr.b), budget)) ell.push_back(w);
    }
    if (int(ell.size()) > k) {
      // Local ids: 0 = a, 1 = b, then the candidate interiors.
      loc[pr.a] = 0;
      loc[pr.b] = 1;
      for (int i = 0; i < int(ell.size()); ++i) loc[ell[i]] = 2 + i;
      const int s = 2 + int(ell.size());
      std::vector<int> pts(s);
      pts[0] = pr.a;
      pts[1] = pr.b;
      for (int i = 0; i < int(ell.size()); ++i) pts[2 + i] = ell[i];
      std::vector<std::vector<std::pair<int, double>>> g(s);
      for (int u = 0; u < s; ++u)
        for (int v : nbr[pts[u]])
          if (loc[v] >= 0) g[u].push_back({loc[v], m(pts[u], v)});

      std::vector<char> alive(s, 1);
      dist.assign(std::size_t(hop_cap + 1) * s, kInf);
      par.assign(std::size_t(hop_cap + 1) * s, -2);
      int found = 0;
      for (int path = 0; path <= k; ++path) {
        std::fill(dist.begin(), dist.end(), kInf);
        std::fill(par.begin(), par.end(), -2);
        dist[0] = 0.0;  // layer 0, vertex 0 = a
        int hb = -1;
        for (int h = 1; h <= hop_cap && hb < 0; ++h) {
          const double* cur = &dist[std::size_t(h - 1) * s];
          double* nxt = &dist[std::size_t(h) * s];
          int* pn = &par[std::size_t(h) * s];
          std::copy(cur, cur + s, nxt);  // carrying a value costs no hop
          for (int u = 0; u < s; ++u) {
            if (cur[u] == kInf || (u >= 2 && !alive[u])) continue;
            for (auto [v, w] : g[u]) {
              if (v >= 2 && !alive[v]) continue;
              double nd = cur[u] + w;
              if (nd < nxt[v]) {
                nxt[v] = nd;
                pn[v] = u;
              }
            }
          }
          if (le_tol(nxt[1], budget)) hb = h;
        }
        if (hb < 0) break;
        for (int v = 1, h = hb; v != 0; --h) {
          int u = par[std::size_t(h) * s + v];
          if (u == -2) continue;  // value carried down a layer, same vertex
          if (u >= 2) alive[u] = 0;
          v = u;
        }
        ++found;
      }
      if (found > k) need_edge = false;
    }
    if (need_edge) {
      sp.add(pr.a, pr.b, pr.w, EdgeKind::cross_clique, 0);
      nbr[pr.a].push_back(pr.b);
      nbr[pr.b].push_back(pr.a);
      nbrset[pr.a].insert(pr.b);
      nbrset[pr.b].insert(pr.a);
      ++kept;
    } else {
      ++certified;
    }
    loc[pr.a] = -1;
    loc[pr.b] = -1;
    for (int w : ell) loc[w] = -1;
  }

  if (log_enabled())
    log_line("close range: " + std::to_string(pairs.size()) + " pairs, kept " +
             std::to_string(kept) + ", certified " + std::to_string(certified));
}

}  // namespace

FtSpanner assemble_spanner(const NetTree& t, const Metric& m, const SurrogateTable& tb,
                           Mode mode) {
  const DerivedParams& p = tb.params();
  FtSpanner sp(m.size());

  // A level whose in-band cross pairs are as numerous as the point pairs
  // they serve adds nothing the close-range sweep cannot do better — the
  // translation keeps every pair, the sweep keeps only uncertified ones.
  // Uniform point sets never thin out relative to the cross radius (the
  // serving level's net spacing sits two orders below the band), so their
  // low bands always trip this; well-separated clusters collapse to single
  // net points and translate sparsely. Hand every band up to the last
  // oversubscribed level to the sweep and translate only above it.
  int hand_off = 0;
  const std::int64_t pair_budget = std::int64_t(p.k + 1) * m.size();
  for (int i = 1; i < t.levels(); ++i) {
    const double floor_i = p.gamma * t.rad(i - 1) - 9.0 * t.rad(i);
    std::int64_t in_band = 0;
    for (const auto& [a, b] : t.cross(i))
      if (m(t.point(i, a), t.point(i, b)) > floor_i) ++in_band;
    if (in_band > pair_budget) hand_off = i;
  }
  double reach = p.gamma * t.rad(hand_off);

  // The climb apparatus is all-or-nothing: serving even one pair through a
  // level needs tree translations on every level below it. A handful of
  // stragglers past the reach cannot amortize that, and the sweep serves
  // them better anyway — it certifies long pairs against the short edges it
  // already keeps instead of adding fresh long ones. Absorb them unless
  // there are enough to pay for the climb.
  {
    std::int64_t beyond = 0;
    for (int a = 0; a < m.size() && beyond <= pair_budget; ++a)
      for (int b = a + 1; b < m.size() && beyond <= pair_budget; ++b)
        if (m(a, b) > reach) ++beyond;
    if (beyond > 0 && beyond <= pair_budget) reach = m.diameter();
  }

  // Close pairs first so their direct edges win the first-kind-wins dedup.
  emit_close_range(sp, m, reach, p.eps, p.k);

  // The set translation serves pairs beyond the close-range reach, climbing
  // from the leaves to the level whose cross edges span the pair. When the
  // whole instance fits inside the close-range reach there is no such pair,
  // and emitting the translation anyway would only pile distance-independent
  // degree onto the batch points.
  const bool spread = m.diameter() > reach;

  if (spread) {
    // Dirty leaves: the leaf point may be absent from every replacement
    // set, so tie it into its own batch directly. Emitted as a clique in
    // both modes; a matching over a set that excludes the point would not
    // help it.
    for (int idx = 0; idx < t.size(0); ++idx) {
      if (!tb.dirty(0, idx)) continue;
      std::vector<int> grp = tb.surrogates(0, idx);
      int pt = t.point(0, idx);
      if (std::find(grp.begin(), grp.end(), pt) == grp.end()) grp.push_back(pt);
      std::sort(grp.begin(), grp.end());
      emit_clique(sp, m, grp, grp, 68.0 * t.rad(0), EdgeKind::internal_clique, 0);
    }
  }

  for (int i = 0; spread && i < t.levels(); ++i) {
    double bound = (p.gamma + 68.0) * t.rad(i);

    // Cross pairs at or below the hand-off level belong to the close-range
    // sweep; a level above that serves pairs just beyond the reach of the
    // level below it, so once the previous level's reach already covers the
    // diameter there is nothing left for this level's cross edges to do.
    if (i > hand_off && p.gamma * t.rad(i - 1) < m.diameter()) {
      // A cross pair can only serve point pairs within two ancestor climbs
      // (under 9·rad(i) combined) of its own span. Spans that cannot reach
      // past the level below's coverage duplicate edges the lower level
      // (or the close-range sweep) already provides — and they are the
      // bulk of the blowup when the diameter barely crosses the reach,
      // where every pair of net points is a cross pair.
      const double floor_i = p.gamma * t.rad(i - 1) - 9.0 * t.rad(i);
      for (const auto& [a, b] : t.cross(i)) {
        if (m(t.point(i, a), t.point(i, b)) <= floor_i) continue;
        if (tb.same_surrogates(i, a, i, b)) continue;
        bool both_dirty = tb.dirty(i, a) && tb.dirty(i, b);
        const std::vector<int>& sa = tb.surrogates(i, a);
        const std::vector<int>& sb = tb.surrogates(i, b);
        if (mode == Mode::matching && both_dirty)
          emit_matching(sp, m, sa, sb, p.k, bound, EdgeKind::cross_matching, i);
        else
          emit_clique(sp, m, sa, sb, bound, EdgeKind::cross_clique, i);
      }
    }

    if (i + 1 < t.levels()) {
      for (int idx = 0; idx < t.size(i); ++idx) {
        int par = t.parent(i, idx);
        if (par < 0) continue;
        if (tb.same_surrogates(i, idx, i + 1, par)) continue;
        bool both_dirty = tb.dirty(i, idx) && tb.dirty(i + 1, par);
        const std::vector<int>& sa = tb.surrogates(i, idx);
        const std::vector<int>& sb = tb.surrogates(i + 1, par);
        if (mode == Mode::matching && both_dirty)
          emit_matching(sp, m, sa, sb, p.k, bound, EdgeKind::tree_matching, i);
        else
          emit_clique(sp, m, sa, sb, bound, EdgeKind::tree_clique, i);
      }
    }
  }

  if (log_enabled())
    log_line("assemble: " + std::to_string(sp.size()) + " edges, max degree " +
             std::to_string(sp.max_degree()));
  return sp;
}

}  // namespace ftspan
