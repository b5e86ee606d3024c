#include "ftspan/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <queue>
#include <set>
#include <unordered_set>

#include "ftspan/common.hpp"
#include "ftspan/metric.hpp"
#include "ftspan/net_tree.hpp"

namespace ftspan {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Graph {
  int n = 0;
  std::vector<std::vector<std::pair<int, double>>> adj;

  explicit Graph(const FtSpanner& sp) : n(sp.points()), adj(sp.points()) {
    for (const SpannerEdge& e : sp.edges()) {
      adj[e.u].emplace_back(e.v, e.w);
      adj[e.v].emplace_back(e.u, e.w);
    }
  }
};

void dijkstra(const Graph& g, int src, const std::vector<char>& alive,
              std::vector<double>& dist) {
  dist.assign(g.n, kInf);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
  dist[src] = 0.0;
  pq.emplace(0.0, src);
  while (!pq.empty()) {
    auto [d, v] = pq.top();
    pq.pop();
    if (d > dist[v]) continue;
    for (auto [to, w] : g.adj[v]) {
      if (!alive[to]) continue;
      double nd = d + w;
      if (nd < dist[to]) {
        dist[to] = nd;
        pq.emplace(nd, to);
      }
    }
  }
}

// Worst distance blow-up over pairs that survive the fault set. Sources are
// scanned in ascending id and only pairs p < q are rated, so the returned
// witness is deterministic. An unreachable pair short-circuits with infinity.
StretchWitness worst_for(const Graph& g, const Metric& m, const FaultSet& f) {
  std::vector<char> alive(g.n, 1);
  for (int x : f.points) alive[x] = 0;
  StretchWitness w;
  w.faults = f;
  std::vector<double> dist;
  for (int p = 0; p < g.n; ++p) {
    if (!alive[p]) continue;
    dijkstra(g, p, alive, dist);
    for (int q = p + 1; q < g.n; ++q) {
      if (!alive[q]) continue;
      if (dist[q] == kInf) {
        w.p = p;
        w.q = q;
        w.stretch = kInf;
        return w;
      }
      double s = dist[q] / m(p, q);
      if (s > w.stretch) {
        w.p = p;
        w.q = q;
        w.stretch = s;
      }
    }
  }
  return w;
}

void take_worse(StretchWitness& acc, const StretchWitness& cand) {
  if (cand.stretch > acc.stretch) acc = cand;
}

// Rating thousands of fault sets against one graph repeats almost all work:
// a pair's distance only changes when its fault-free shortest path actually
// lost a vertex. One parent-tracking Dijkstra per source records each pair's
// witness interior as an n-bit mask; a fault set then re-runs Dijkstra only
// for sources with invalidated pairs and reads every other distance from the
// base run. Exact, not heuristic — a surviving shortest path cannot get
// shorter by deleting vertices, so its distance stands.
class SuiteEval {
 public:
  SuiteEval(const Graph& g, const Metric& m) : g_(g), m_(m), n_(g.n) {
    words_ = (n_ + 63) / 64;
    long long pairs = (long long)n_ * (n_ - 1) / 2;
    d0_.assign(pairs, kInf);
    masks_.assign(pairs * words_, 0);
    std::vector<double> dist;
    std::vector<int> par;
    std::vector<char> alive(n_, 1);
    for (int p = 0; p < n_; ++p) {
      dijkstra_par(p, alive, dist, par);
      for (int q = p + 1; q < n_; ++q) {
        long long id = pair_id(p, q);
        d0_[id] = dist[q];
        if (dist[q] == kInf) continue;  // mask stays empty; d0 already damns it
        for (int v = par[q]; v != p && v != -1; v = par[v])
          masks_[id * words_ + v / 64] |= 1ULL << (v % 64);
      }
    }
  }

  StretchWitness eval(const FaultSet& f) {
    std::vector<std::uint64_t> fm(words_, 0);
    std::vector<char> alive(n_, 1);
    for (int x : f.points) {
      alive[x] = 0;
      fm[x / 64] |= 1ULL << (x % 64);
    }
    StretchWitness w;
    w.faults = f;
    std::vector<std::vector<int>> dirty(n_);
    for (int p = 0; p < n_; ++p) {
      if (!alive[p]) continue;
      for (int q = p + 1; q < n_; ++q) {
        if (!alive[q]) continue;
        long long id = pair_id(p, q);
        const std::uint64_t* mk = &masks_[id * words_];
        bool hit = false;
        for (int t = 0; t < words_ && !hit; ++t) hit = (mk[t] & fm[t]) != 0;
        if (hit) dirty[p].push_back(q);
        else rate(w, p, q, d0_[id]);
      }
    }
    std::vector<double> dist;
    for (int p = 0; p < n_; ++p) {
      if (dirty[p].empty()) continue;
      dijkstra(g_, p, alive, dist);
      for (int q : dirty[p]) rate(w, p, q, dist[q]);
    }
    return w;
  }

 private:
  long long pair_id(int p, int q) const {
    return (long long)p * n_ - (long long)p * (p + 1) / 2 + (q - p - 1);
  }

  void rate(StretchWitness& w, int p, int q, double d) const {
    double s = d == kInf ? kInf : d / m_(p, q);
    if (s > w.stretch) {
      w.p = p;
      w.q = q;
      w.stretch = s;
    }
  }

  void dijkstra_par(int src, const std::vector<char>& alive, std::vector<double>& dist,
                    std::vector<int>& par) {
    dist.assign(n_, kInf);
    par.assign(n_, -1);
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
    dist[src] = 0.0;
    pq.emplace(0.0, src);
    while (!pq.empty()) {
      auto [d, v] = pq.top();
      pq.pop();
      if (d > dist[v]) continue;
      for (auto [to, w] : g_.adj[v]) {
        if (!alive[to]) continue;
        double nd = d + w;
        if (nd < dist[to]) {
          dist[to] = nd;
          par[to] = v;
          pq.emplace(nd, to);
        }
      }
    }
  }

  const Graph& g_;
  const Metric& m_;
  int n_;
  int words_;
  std::vector<double> d0_;
  std::vector<std::uint64_t> masks_;
};

}  // namespace

StretchWitness check_stretch(const FtSpanner& sp, const Metric& m, double eps,
                             const FaultSet& f) {
  (void)eps;  // the caller compares; kept so all probes share one signature
  Graph g(sp);
  return worst_for(g, m, f);
}

FaultStrategy FaultStrategy::parse(const std::string& text) {
  FaultStrategy s;
  if (text == "exhaustive") {
    s.kind = Kind::exhaustive;
    return s;
  }
  if (text == "targeted") {
    s.kind = Kind::targeted;
    return s;
  }
  if (text.rfind("random:", 0) == 0) {
    s.kind = Kind::random_trials;
    try {
      s.trials = std::stoll(text.substr(7));
    } catch (...) {
      throw config_error("bad fault strategy '" + text + "'");
    }
    if (s.trials <= 0) throw config_error("fault strategy needs a positive trial count");
    return s;
  }
  throw config_error("unknown fault strategy '" + text +
                     "' (want exhaustive, random:N or targeted)");
}

SuiteResult fault_suite(const FtSpanner& sp, const Metric& m, double eps, int k,
                        const FaultStrategy& strategy, const SurrogateTable* tb) {
  Graph g(sp);
  int n = m.size();
  SuiteResult res;

  // Witness masks cost pairs*words*8 bytes; past ~600 points that outgrows
  // the win, so big instances fall back to the plain per-set sweep.
  std::optional<SuiteEval> cache;
  if (n >= 2 && n <= 600) cache.emplace(g, m);

  auto probe = [&](const FaultSet& f) {
    ++res.fault_sets;
    StretchWitness w = cache ? cache->eval(f) : worst_for(g, m, f);
    take_worse(res.worst, w);
    return w;
  };
  auto run = [&](const FaultSet& f) { probe(f); };
  run(FaultSet{});  // every strategy covers the no-fault case

  if (k > 0 && strategy.kind == FaultStrategy::Kind::exhaustive) {
    double total = 1.0;
    double c = 1.0;
    for (int j = 1; j <= k; ++j) {
      c = c * (n - j + 1) / j;
      total += c;
    }
    if (total > 2e6)
      throw config_error("exhaustive fault enumeration would need " + std::to_string(total) +
                         " sets; use random:N");
    std::vector<int> pick;
    // lexicographic j-subsets for each size
    for (int j = 1; j <= std::min(k, n); ++j) {
      pick.assign(j, 0);
      for (int i = 0; i < j; ++i) pick[i] = i;
      while (true) {
        run(FaultSet{pick});
        int i = j - 1;
        while (i >= 0 && pick[i] == n - j + i) --i;
        if (i < 0) break;
        ++pick[i];
        for (int q = i + 1; q < j; ++q) pick[q] = pick[q - 1] + 1;
      }
    }
  } else if (k > 0 && strategy.kind == FaultStrategy::Kind::random_trials) {
    Rng rng(strategy.seed);
    for (long long trial = 0; trial < strategy.trials; ++trial) {
      int sz = int(rng.below(std::uint64_t(k) + 1));
      std::set<int> s;
      while (int(s.size()) < sz) s.insert(int(rng.below(std::uint64_t(n))));
      FaultSet f{std::vector<int>(s.begin(), s.end())};
      run(f);
    }
  } else if (k > 0 && strategy.kind == FaultStrategy::Kind::targeted) {
    std::vector<int> by_degree(n);
    for (int i = 0; i < n; ++i) by_degree[i] = i;
    std::sort(by_degree.begin(), by_degree.end(), [&](int a, int b) {
      if (sp.degree(a) != sp.degree(b)) return sp.degree(a) > sp.degree(b);
      return a < b;
    });

    FaultSet top_deg;
    for (int i = 0; i < std::min(k, n); ++i) top_deg.points.push_back(by_degree[i]);
    std::sort(top_deg.points.begin(), top_deg.points.end());
    run(top_deg);

    if (tb != nullptr) {
      std::vector<long long> freq(n, 0);
      for (const SurrogateSet& s : tb->sets())
        for (int pt : s.points) ++freq[pt];
      std::vector<int> by_freq(n);
      for (int i = 0; i < n; ++i) by_freq[i] = i;
      std::sort(by_freq.begin(), by_freq.end(), [&](int a, int b) {
        if (freq[a] != freq[b]) return freq[a] > freq[b];
        return a < b;
      });
      FaultSet top_freq;
      for (int i = 0; i < std::min(k, n); ++i) top_freq.points.push_back(by_freq[i]);
      std::sort(top_freq.points.begin(), top_freq.points.end());
      run(top_freq);
    }

    // Greedy escalation: grow one fault set a point at a time, always taking
    // the candidate that hurts the stretch most. Candidates come from the
    // high-degree pool; every probe counts as a tested fault set.
    int pool = std::min(n, 2 * k + 10);
    std::vector<int> chosen;
    for (int step = 0; step < k && int(chosen.size()) < n; ++step) {
      int best = -1;
      double best_val = -1.0;
      for (int ci = 0; ci < pool; ++ci) {
        int c = by_degree[ci];
        if (std::find(chosen.begin(), chosen.end(), c) != chosen.end()) continue;
        FaultSet f{chosen};
        f.points.push_back(c);
        std::sort(f.points.begin(), f.points.end());
        StretchWitness w = probe(f);
        if (w.stretch > best_val) {
          best_val = w.stretch;
          best = c;
        }
      }
      if (best < 0) break;
      chosen.push_back(best);
    }
  }

  res.ok = le_tol(res.worst.stretch, 1.0 + eps);
  return res;
}

HopReport measure_hop_diameter(const FtSpanner& sp, const Metric& m, double eps) {
  int n = m.size();
  HopReport rep;
  if (n < 2) return rep;
  rep.h_max = 4 * int(std::ceil(std::log2(double(n)))) + 8;

  const auto& edges = sp.edges();
  std::vector<double> prev(n), cur(n);
  std::vector<int> firsth(n);
  for (int s = 0; s < n; ++s) {
    int unresolved = n - 1 - s;
    if (unresolved <= 0) break;
    std::fill(prev.begin(), prev.end(), kInf);
    prev[s] = 0.0;
    std::fill(firsth.begin(), firsth.end(), -1);
    for (int h = 1; h <= rep.h_max && unresolved > 0; ++h) {
      cur = prev;
      for (const SpannerEdge& e : edges) {
        if (prev[e.u] + e.w < cur[e.v]) cur[e.v] = prev[e.u] + e.w;
        if (prev[e.v] + e.w < cur[e.u]) cur[e.u] = prev[e.v] + e.w;
      }
      for (int q = s + 1; q < n; ++q) {
        if (firsth[q] >= 0) continue;
        if (le_tol(cur[q], (1.0 + eps) * m(s, q))) {
          firsth[q] = h;
          rep.hops = std::max(rep.hops, h);
          --unresolved;
        }
      }
      prev.swap(cur);
    }
    rep.over += unresolved;
  }
  return rep;
}

namespace {

std::string tag(const NetTree& t, int level, int idx) {
  return "(point " + std::to_string(t.point(level, idx)) + ", level " + std::to_string(level) +
         ")";
}

bool sorted_disjoint_or_equal(const std::vector<int>& a, const std::vector<int>& b,
                              bool& equal) {
  equal = (a == b);
  if (equal) return true;
  if (a.empty() || b.empty()) return true;
  if (a.back() < b.front() || b.back() < a.front()) return true;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) return false;  // shares a point without being equal
    if (a[i] < b[j]) ++i;
    else ++j;
  }
  return true;
}

}  // namespace

std::vector<std::string> structural_audit(const SurrogateTable& tb, const DerivedParams& p,
                                          const NetTree& t, const Metric& m) {
  std::vector<std::string> out;
  auto flag = [&](int inv, const std::string& detail) {
    out.push_back("invariant " + std::to_string(inv) + ": " + detail);
  };
  int L = tb.levels() - 1;
  int n = tb.points();

  // 1: dirty batches have exactly k+1 points; dirtiness is upward-closed
  for (int l = 0; l <= L; ++l)
    for (int idx = 0; idx < t.size(l); ++idx) {
      if (!tb.dirty(l, idx)) continue;
      if (int(tb.surrogates(l, idx).size()) != p.k + 1)
        flag(1, "dirty node " + tag(t, l, idx) + " holds " +
                    std::to_string(tb.surrogates(l, idx).size()) + " surrogates, want " +
                    std::to_string(p.k + 1));
      if (l < L && !tb.dirty(l + 1, t.parent(l, idx)))
        flag(1, "dirty node " + tag(t, l, idx) + " has a clean parent");
    }

  // 2: clean node keeps all descendants among its friends, short of 2k+2
  for (int l = 0; l <= L; ++l)
    for (int idx = 0; idx < t.size(l); ++idx) {
      if (tb.dirty(l, idx)) continue;
      const std::vector<int>& d = t.descendants(l, idx);
      const std::vector<int>& f = tb.state(l, idx).friends;
      std::unordered_set<int> fs(f.begin(), f.end());
      std::size_t extra = 0;
      for (int pt : d)
        if (!fs.count(pt)) {
          flag(2, "clean node " + tag(t, l, idx) + " misses descendant " + std::to_string(pt) +
                      " in its friend list");
          ++extra;
        }
      if (fs.size() + extra >= std::size_t(2 * p.k + 2))
        flag(2, "clean node " + tag(t, l, idx) + " has friend∪surrogate size " +
                    std::to_string(fs.size() + extra) + " ≥ " + std::to_string(2 * p.k + 2));
    }

  // 3: descendant points of a clean node are not yet appointed at its level
  for (int l = 0; l <= L; ++l)
    for (int idx = 0; idx < t.size(l); ++idx) {
      if (tb.dirty(l, idx)) continue;
      for (int pt : t.descendants(l, idx)) {
        int a = tb.appointed_at(pt);
        if (a >= 0 && a <= l)
          flag(3, "clean node " + tag(t, l, idx) + " has descendant " + std::to_string(pt) +
                      " appointed at level " + std::to_string(a));
      }
    }

  // 4: same-level dirty non-leeches have disjoint batches and disjoint
  // appointing-node friend lists
  for (int l = 0; l <= L; ++l) {
    std::vector<int> nodes;
    for (int idx = 0; idx < t.size(l); ++idx)
      if (tb.dirty(l, idx) && !tb.is_leech(l, idx)) nodes.push_back(idx);
    for (std::size_t a = 0; a < nodes.size(); ++a)
      for (std::size_t b = a + 1; b < nodes.size(); ++b) {
        const auto& sa = tb.surrogates(l, nodes[a]);
        const auto& sb = tb.surrogates(l, nodes[b]);
        bool equal = false;
        if (!sorted_disjoint_or_equal(sa, sb, equal) || equal)
          flag(4, "dirty nodes " + tag(t, l, nodes[a]) + " and " + tag(t, l, nodes[b]) +
                      " share surrogates");
        const Term& ta = tb.term_of(l, nodes[a]);
        const Term& tc = tb.term_of(l, nodes[b]);
        int ia = t.idx_of(ta.appoint_level, ta.appoint_point);
        int ib = t.idx_of(tc.appoint_level, tc.appoint_point);
        std::vector<int> fa = tb.state(ta.appoint_level, ia).friends;
        std::vector<int> fb = tb.state(tc.appoint_level, ib).friends;
        std::sort(fa.begin(), fa.end());
        std::sort(fb.begin(), fb.end());
        std::vector<int> common;
        std::set_intersection(fa.begin(), fa.end(), fb.begin(), fb.end(),
                              std::back_inserter(common));
        if (!common.empty())
          flag(4, "appointing nodes of " + tag(t, l, nodes[a]) + " and " +
                      tag(t, l, nodes[b]) + " share friend " + std::to_string(common[0]));
      }
  }

  // 5: a dirty batch is equal to or disjoint from any set at the same level
  // or above
  for (int l = 0; l <= L; ++l)
    for (int idx = 0; idx < t.size(l); ++idx) {
      if (!tb.dirty(l, idx)) continue;
      const auto& sx = tb.surrogates(l, idx);
      for (int l2 = l; l2 <= L; ++l2)
        for (int idx2 = 0; idx2 < t.size(l2); ++idx2) {
          if (l2 == l && idx2 == idx) continue;
          bool equal = false;
          if (!sorted_disjoint_or_equal(sx, tb.surrogates(l2, idx2), equal))
            flag(5, "sets of " + tag(t, l, idx) + " and " + tag(t, l2, idx2) +
                        " overlap without being equal");
        }
    }

  // 6: surrogates stay within 34 radii of their node
  for (int l = 0; l <= L; ++l)
    for (int idx = 0; idx < t.size(l); ++idx) {
      int pt = t.point(l, idx);
      for (int s : tb.surrogates(l, idx))
        if (!le_tol(m(pt, s), 34.0 * t.rad(l)))
          flag(6, "surrogate " + std::to_string(s) + " of " + tag(t, l, idx) +
                      " lies at distance " + std::to_string(m(pt, s)) + " > 34*5^" +
                      std::to_string(l));
    }

  // 7: degree budget — D for surrogates of clean nodes at their level, 2D for
  // everyone at the end
  for (int l = 0; l <= L; ++l)
    for (int idx = 0; idx < t.size(l); ++idx) {
      if (tb.dirty(l, idx)) continue;
      for (int s : tb.surrogates(l, idx))
        if (!le_tol(double(tb.deg_after(l, s)), p.degree_threshold))
          flag(7, "clean-node surrogate " + std::to_string(s) + " of " + tag(t, l, idx) +
                      " has degree " + std::to_string(tb.deg_after(l, s)) +
                      " above the threshold");
    }
  for (int pt = 0; pt < n; ++pt)
    if (!le_tol(double(tb.deg_final(pt)), 2.0 * p.degree_threshold))
      flag(7, "point " + std::to_string(pt) + " ends with degree " +
                  std::to_string(tb.deg_final(pt)) + " above twice the threshold");

  // 8: an appointing node has no appointing ancestor within tau+2 levels
  {
    std::set<std::pair<int, int>> sites;  // (level, point)
    for (const Term& tm : tb.terms()) sites.emplace(tm.appoint_level, tm.appoint_point);
    for (const Term& tm : tb.terms()) {
      int cur = t.idx_of(tm.appoint_level, tm.appoint_point);
      for (int l2 = tm.appoint_level + 1; l2 <= std::min(tm.appoint_level + p.tau + 2, L);
           ++l2) {
        cur = t.parent(l2 - 1, cur);
        if (cur < 0) break;
        if (sites.count({l2, t.point(l2, cur)}))
          flag(8, "node " + tag(t, l2, cur) + " appoints too soon above the appointment at (" +
                      std::to_string(tm.appoint_point) + ", " +
                      std::to_string(tm.appoint_level) + ")");
      }
    }
  }

  // 9: leeches sit next to dirty non-leech hosts, and so do their parents
  for (int l = 0; l <= L; ++l)
    for (int idx = 0; idx < t.size(l); ++idx) {
      if (!tb.is_leech(l, idx)) continue;
      int h = tb.state(l, idx).host;
      if (h < 0 || !tb.dirty(l, h) || tb.is_leech(l, h)) {
        flag(9, "leech " + tag(t, l, idx) + " has no dirty non-leech host");
        continue;
      }
      if (!le_tol(m(t.point(l, idx), t.point(l, h)), 24.0 * t.rad(l)))
        flag(9, "leech " + tag(t, l, idx) + " is too far from its host " + tag(t, l, h));
      if (l < L) {
        int pi = t.parent(l, idx), ph = t.parent(l, h);
        if (!le_tol(m(t.point(l + 1, pi), t.point(l + 1, ph)), 24.0 * t.rad(l + 1)))
          flag(9, "parents of leech " + tag(t, l, idx) + " and host " + tag(t, l, h) +
                      " are not 24-friends");
      }
    }

  // 10: batches never share points, and batch membership matches the
  // recorded appointment level
  {
    std::vector<int> cnt(n, 0);
    for (const SurrogateSet& s : tb.sets())
      for (int pt : s.points) ++cnt[pt];
    for (int pt = 0; pt < n; ++pt)
      if (cnt[pt] > 1)
        flag(10, "point " + std::to_string(pt) + " appears in " + std::to_string(cnt[pt]) +
                     " batches");
    for (const SurrogateSet& s : tb.sets()) {
      const Term& tm = tb.terms()[s.term];
      for (int pt : s.points)
        if (tb.appointed_at(pt) != tm.start_level)
          flag(10, "point " + std::to_string(pt) + " records appointment level " +
                       std::to_string(tb.appointed_at(pt)) + " but its term started at " +
                       std::to_string(tm.start_level));
    }
  }

  return out;
}

namespace {

// Unit-capacity max flow, small graphs only.
struct Dinic {
  struct Arc {
    int to, cap, rev;
  };
  std::vector<std::vector<Arc>> g;
  std::vector<int> lvl, it;

  explicit Dinic(int n) : g(n), lvl(n), it(n) {}
  void add(int a, int b, int cap) {
    g[a].push_back({b, cap, int(g[b].size())});
    g[b].push_back({a, 0, int(g[a].size()) - 1});
  }
  bool bfs(int s, int t) {
    std::fill(lvl.begin(), lvl.end(), -1);
    std::queue<int> q;
    lvl[s] = 0;
    q.push(s);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (const Arc& a : g[v])
        if (a.cap > 0 && lvl[a.to] < 0) {
          lvl[a.to] = lvl[v] + 1;
          q.push(a.to);
        }
    }
    return lvl[t] >= 0;
  }
  int dfs(int v, int t, int f) {
    if (v == t) return f;
    for (int& i = it[v]; i < int(g[v].size()); ++i) {
      Arc& a = g[v][i];
      if (a.cap > 0 && lvl[a.to] == lvl[v] + 1) {
        int d = dfs(a.to, t, std::min(f, a.cap));
        if (d > 0) {
          a.cap -= d;
          g[a.to][a.rev].cap += d;
          return d;
        }
      }
    }
    return 0;
  }
  int maxflow(int s, int t, int limit) {
    int flow = 0;
    while (flow < limit && bfs(s, t)) {
      std::fill(it.begin(), it.end(), 0);
      int f;
      while (flow < limit && (f = dfs(s, t, limit - flow)) > 0) flow += f;
    }
    return flow;
  }
};

}  // namespace

FtSpanner greedy_ft_oracle(const Metric& m, double t, int k) {
  int n = m.size();
  if (n > 150) throw config_error("greedy oracle is limited to 150 points");
  if (t < 1.0) throw config_error("greedy oracle needs a stretch factor >= 1");
  if (k < 0) throw config_error("negative fault budget");

  struct P {
    double w;
    int a, b;
  };
  std::vector<P> pairs;
  pairs.reserve(std::size_t(n) * (n - 1) / 2);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) pairs.push_back({m(a, b), a, b});
  std::sort(pairs.begin(), pairs.end(), [](const P& x, const P& y) {
    if (x.w != y.w) return x.w < y.w;
    if (x.a != y.a) return x.a < y.a;
    return x.b < y.b;
  });

  FtSpanner out(n);
  struct E {
    int u, v;
    double w;
  };
  std::vector<E> added;

  for (const P& pr : pairs) {
    double bound = t * pr.w;
    // Vertices that can sit on a within-budget detour at all.
    std::vector<char> in_ell(n, 0);
    for (int v = 0; v < n; ++v)
      if (le_tol(m(pr.a, v) + m(v, pr.b), bound)) in_ell[v] = 1;

    Dinic flow(2 * n);
    for (int v = 0; v < n; ++v)
      if (in_ell[v]) flow.add(2 * v, 2 * v + 1, (v == pr.a || v == pr.b) ? k + 2 : 1);
    for (const E& e : added) {
      if (!in_ell[e.u] || !in_ell[e.v]) continue;
      if (le_tol(m(pr.a, e.u) + e.w + m(e.v, pr.b), bound)) flow.add(2 * e.u + 1, 2 * e.v, 1);
      if (le_tol(m(pr.a, e.v) + e.w + m(e.u, pr.b), bound)) flow.add(2 * e.v + 1, 2 * e.u, 1);
    }
    if (flow.maxflow(2 * pr.a + 1, 2 * pr.b, k + 1) < k + 1) {
      added.push_back({pr.a, pr.b, pr.w});
      out.add(pr.a, pr.b, pr.w, EdgeKind::cross_clique, 0);
    }
  }
  return out;
}

FtSpanner basic_as_point_graph(const NetTree& t, const Metric& m) {
  FtSpanner sp(m.size());
  for (int l = 0; l < t.levels(); ++l) {
    for (const auto& [a, b] : t.cross(l)) {
      int pa = t.point(l, a), pb = t.point(l, b);
      sp.add(pa, pb, m(pa, pb), EdgeKind::cross_clique, l);
    }
    if (l + 1 < t.levels())
      for (int idx = 0; idx < t.size(l); ++idx) {
        int pc = t.point(l, idx), pp = t.point(l + 1, t.parent(l, idx));
        if (pc != pp) sp.add(pc, pp, m(pc, pp), EdgeKind::tree_clique, l);
      }
  }
  return sp;
}

}  // namespace ftspan
