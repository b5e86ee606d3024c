#include "ftspan/surrogates.hpp"

#include <algorithm>
#include <climits>
#include <string>

#include "ftspan/common.hpp"
#include "ftspan/log.hpp"

namespace ftspan {
namespace {

std::uint64_t pair_key(int a, int b) {
  if (a > b) std::swap(a, b);
  return (std::uint64_t(std::uint32_t(a)) << 32) | std::uint64_t(std::uint32_t(b));
}

// Friend sets are built in insertion order under the 3k+3 cap; which points
// make the cut depends on that order, so the vector is only sorted afterwards.
// Linear membership scan is fine at this size.
void add_friend(std::vector<int>& f, int x, int cap) {
  if (int(f.size()) >= cap) return;
  for (int y : f) {
    if (y == x) return;
  }
  f.push_back(x);
}

std::string node_tag(int level, int point) {
  return "(" + std::to_string(point) + "," + std::to_string(level) + ")";
}

bool reserve_point_order(const ReserveEntry& a, const ReserveEntry& b) {
  return a.point < b.point;
}

}  // namespace

const std::vector<int>& SurrogateTable::surrogates(int level, int idx) const {
  const NodeState& ns = states_[level][idx];
  if (ns.status == NodeState::Status::dirty) return sets_[ns.set_id].points;
  if (ns.status == NodeState::Status::clean) return tree_->descendants(level, idx);
  throw construction_error("surrogates queried before the node was decided");
}

bool SurrogateTable::same_surrogates(int la, int ia, int lb, int ib) const {
  const NodeState& a = states_[la][ia];
  const NodeState& b = states_[lb][ib];
  const bool da = a.status == NodeState::Status::dirty;
  const bool db = b.status == NodeState::Status::dirty;
  // Appointed batches never repeat content (a point is appointed once, ever),
  // so two dirty nodes agree exactly when they share the batch index.
  if (da && db) return a.set_id == b.set_id;
  return surrogates(la, ia) == surrogates(lb, ib);
}

const Term& SurrogateTable::term_of(int level, int idx) const {
  const NodeState& ns = states_[level][idx];
  if (ns.status != NodeState::Status::dirty)
    throw construction_error("term_of on a node without a batch");
  return terms_[sets_[ns.set_id].term];
}

bool SurrogateTable::cross_pair(int a, int b) const {
  return cross_pairs_.count(pair_key(a, b)) > 0;
}

int find_host(const NetTree& t, const Metric& m, int level, int idx,
              const std::vector<char>& eligible) {
  const auto& net = t.net(level);
  const int p = net[idx];
  const double reach = 24.0 * t.rad(level);
  int best = -1;
  double best_d = 0.0;
  auto consider = [&](int c) {
    if (c == idx || !eligible[c]) return;
    const double d = m(p, net[c]);
    if (!le_tol(d, reach)) return;
    if (best < 0 || d < best_d || (d == best_d && net[c] < net[best])) {
      best = c;
      best_d = d;
    }
  };
  // Hosts sit within 24*5^i while cross edges reach gamma*5^i, so for any
  // sane gamma the cross adjacency already contains every candidate. The full
  // scan only exists for tiny experimental gamma values.
  if (t.gamma() >= 25.0) {
    for (int c : t.cross_neighbors(level, idx)) consider(c);
  } else {
    for (int c = 0; c < int(net.size()); ++c) consider(c);
  }
  return best;
}

SurrogateTable compute_sets(const NetTree& t, const Metric& m, const DerivedParams& p,
                            bool unbounded_reserve) {
  if (!t.has_cross_edges())
    throw construction_error("compute_sets needs cross edges in place");
  if (t.gamma() != p.gamma)
    throw construction_error("gamma mismatch between tree and derived parameters");
  const int n = m.size();
  if (p.k > std::max(0, n - 2)) throw config_error("k must be at most n-2");

  const int k = p.k;
  const int fcap = 3 * k + 3;
  const long long rcap = (long long)(p.tau + 4) * fcap * p.xi;
  const int L = t.ell();

  SurrogateTable tb;
  tb.tree_ = &t;
  tb.n_ = n;
  tb.params_ = p;
  tb.states_.resize(L + 1);
  tb.appointed_at_.assign(n, -1);
  tb.deg_after_.assign(L + 1, {});

  std::vector<int> deg(n, 0);             // cross-clique degree so far
  std::vector<int> deg_at_appoint(n, 0);  // snapshot taken when appointed

  auto clean_pt = [&](int x) { return tb.appointed_at_[x] < 0; };

  for (int i = 0; i <= L; ++i) {
    const auto& net = t.net(i);
    const int sz = int(net.size());
    auto& st = tb.states_[i];
    st.resize(sz);
    const double r10 = 10.0 * t.rad(i);

    // ---- part 1: friend and reserve sets ----
    // Reserves as they stand before the same-level exchange; neighbors read
    // this snapshot, never the final reserves, so the outcome does not depend
    // on node order.
    std::vector<std::vector<ReserveEntry>> stage(sz);
    if (i == 0) {
      for (int idx = 0; idx < sz; ++idx) {
        const int pt = net[idx];
        std::vector<int> f{pt};
        auto& rv = stage[idx];
        rv.push_back({pt, 0});
        for (int c : t.cross_neighbors(0, idx)) {
          const int q = net[c];
          rv.push_back({q, 0});
          if (le_tol(m(pt, q), r10)) add_friend(f, q, fcap);
        }
        std::sort(f.begin(), f.end());
        st[idx].friends = std::move(f);
        std::sort(rv.begin(), rv.end(), reserve_point_order);
      }
    } else {
      for (int idx = 0; idx < sz; ++idx) {
        const int pt = net[idx];
        // Children hand up their clean friends...
        std::vector<int> f;
        for (int c : t.children(i, idx)) {
          for (int x : tb.states_[i - 1][c].friends) {
            if (clean_pt(x)) add_friend(f, x, fcap);
          }
        }
        // ...and their clean reserves. A point reported by two children keeps
        // its most recent insertion level.
        std::vector<ReserveEntry> rv;
        for (int c : t.children(i, idx)) {
          for (const ReserveEntry& e : tb.states_[i - 1][c].reserve) {
            if (clean_pt(e.point)) rv.push_back(e);
          }
        }
        std::sort(rv.begin(), rv.end(), [](const ReserveEntry& a, const ReserveEntry& b) {
          return a.point != b.point ? a.point < b.point : a.level > b.level;
        });
        rv.erase(std::unique(rv.begin(), rv.end(),
                             [](const ReserveEntry& a, const ReserveEntry& b) {
                               return a.point == b.point;
                             }),
                 rv.end());
        // Reserve points that moved into 10-friend range at this scale are
        // promoted into the friend set.
        for (const ReserveEntry& e : rv) {
          if (le_tol(m(pt, e.point), r10)) add_friend(f, e.point, fcap);
        }
        std::sort(f.begin(), f.end());
        st[idx].friends = std::move(f);
        stage[idx] = std::move(rv);
      }
    }

    // Same-level exchange: each cross edge hands over the neighbor's clean
    // friends plus the neighbor's own clean 10-friends out of its snapshot
    // reserve. Points already present keep their original insertion level.
    // The leaves skip this — their reserves take whole neighbor points
    // directly in the loop above.
    if (i == 0) {
      for (int idx = 0; idx < sz; ++idx) st[idx].reserve = std::move(stage[idx]);
    } else {
      for (int idx = 0; idx < sz; ++idx) {
        std::vector<ReserveEntry> add;
        for (int c : t.cross_neighbors(i, idx)) {
          const int q = net[c];
          for (int x : st[c].friends) {
            if (clean_pt(x)) add.push_back({x, i});
          }
          for (const ReserveEntry& e : stage[c]) {
            if (clean_pt(e.point) && le_tol(m(q, e.point), r10)) add.push_back({e.point, i});
          }
        }
        std::sort(add.begin(), add.end(), reserve_point_order);
        add.erase(std::unique(add.begin(), add.end(),
                              [](const ReserveEntry& a, const ReserveEntry& b) {
                                return a.point == b.point;
                              }),
                  add.end());
        // Union preferring the existing entry, both sides sorted by point.
        const std::vector<ReserveEntry>& base = stage[idx];
        std::vector<ReserveEntry> merged;
        merged.reserve(base.size() + add.size());
        std::size_t ai = 0, bi = 0;
        while (ai < base.size() || bi < add.size()) {
          if (bi == add.size() || (ai < base.size() && base[ai].point <= add[bi].point)) {
            if (bi < add.size() && base[ai].point == add[bi].point) ++bi;
            merged.push_back(base[ai++]);
          } else {
            merged.push_back(add[bi++]);
          }
        }
        st[idx].reserve = std::move(merged);
      }
    }

    // Size cap: stale levels are evicted first, but up to 3k+3 current
    // 10-friends are exempt — they are exactly the material the next level's
    // friend set may still want.
    if (!unbounded_reserve) {
      for (int idx = 0; idx < sz; ++idx) {
        auto& rv = st[idx].reserve;
        if ((long long)rv.size() <= rcap) continue;
        const int pt = net[idx];
        std::vector<int> ten;
        for (int j = 0; j < int(rv.size()); ++j) {
          if (le_tol(m(pt, rv[j].point), r10)) ten.push_back(j);
        }
        std::sort(ten.begin(), ten.end(), [&](int a, int b) {
          return rv[a].level != rv[b].level ? rv[a].level > rv[b].level
                                            : rv[a].point < rv[b].point;
        });
        std::vector<char> keep(rv.size(), 0);
        for (int j = 0; j < int(ten.size()) && j < fcap; ++j) keep[ten[j]] = 1;
        std::vector<int> evictable;
        for (int j = 0; j < int(rv.size()); ++j) {
          if (!keep[j]) evictable.push_back(j);
        }
        std::sort(evictable.begin(), evictable.end(), [&](int a, int b) {
          return rv[a].level != rv[b].level ? rv[a].level < rv[b].level
                                            : rv[a].point < rv[b].point;
        });
        long long need = (long long)rv.size() - rcap;
        std::vector<char> drop(rv.size(), 0);
        for (int j : evictable) {
          if (need <= 0) break;
          drop[j] = 1;
          --need;
          ++tb.reserve_evictions_;
        }
        std::vector<ReserveEntry> out;
        out.reserve(rcap);
        for (int j = 0; j < int(rv.size()); ++j) {
          if (!drop[j]) out.push_back(rv[j]);
        }
        rv = std::move(out);
      }
    }

    // ---- part 2: statuses ----
    // Re-use of a child batch depends only on the levels below, so those
    // nodes are decided first and become visible as hosts right away. A
    // node that appoints before a nearby batch carrier has decided would
    // start a second batch whose friend set overlaps the carried one; the
    // host search radius is sized so that every such carrier is in reach,
    // but only once it is marked. After the carriers, nodes with a wide
    // friend set (the only possible appointers) go before the rest,
    // ascending point id within each group.
    std::vector<int> copy_from(sz, -1);
    std::vector<char> has_dirty_child(sz, 0);
    if (i > 0) {
      for (int idx = 0; idx < sz; ++idx) {
        // A dirty child forecloses the clean outcome. Re-use the child batch
        // whose term started last, if that term is still running.
        int best = -1, best_start = -1;
        for (int c : t.children(i, idx)) {
          const NodeState& cs = tb.states_[i - 1][c];
          if (cs.status != NodeState::Status::dirty) continue;
          has_dirty_child[idx] = 1;
          if (cs.leech) continue;
          const int start = tb.terms_[tb.sets_[cs.set_id].term].start_level;
          if (best < 0 || start > best_start) {
            best = c;
            best_start = start;
          }
        }
        if (best >= 0) {
          const int best_set = tb.states_[i - 1][best].set_id;
          if (!tb.terms_[tb.sets_[best_set].term].over_at(i - 1, p.tau)) copy_from[idx] = best;
        }
      }
    }
    std::vector<int> order;
    order.reserve(sz);
    for (int group = 0; group < 3; ++group) {
      for (int idx = 0; idx < sz; ++idx) {
        const bool wide = int(st[idx].friends.size()) >= 2 * k + 2;
        const int g = copy_from[idx] >= 0 ? 0 : (wide ? 1 : 2);
        if (g == group) order.push_back(idx);
      }
    }

    auto appoint = [&](int idx, NodeState& ns) {
      const int pt = net[idx];
      const std::vector<int>& f = ns.friends;
      if (int(f.size()) < 2 * k + 2)
        throw construction_error("appointment at " + node_tag(i, pt) +
                                 " with a narrow friend set: |F|=" +
                                 std::to_string(f.size()) + " < " + std::to_string(2 * k + 2));
      std::vector<int> cand;
      for (int x : f) {
        if (clean_pt(x)) cand.push_back(x);
      }
      if (int(cand.size()) < k + 1)
        throw construction_error("appointment at " + node_tag(i, pt) + " found only " +
                                 std::to_string(cand.size()) + " clean candidates, needs " +
                                 std::to_string(k + 1));
      std::sort(cand.begin(), cand.end(),
                [&](int a, int b) { return deg[a] != deg[b] ? deg[a] < deg[b] : a < b; });
      cand.resize(k + 1);
      std::sort(cand.begin(), cand.end());
      const int set_id = int(tb.sets_.size());
      const int term_id = int(tb.terms_.size());
      Term tm;
      tm.start_level = i;
      tm.appoint_point = pt;
      tm.appoint_level = i;
      tm.set = set_id;
      tb.terms_.push_back(tm);
      tb.sets_.push_back({cand, term_id});
      for (int x : cand) {
        tb.appointed_at_[x] = i;
        deg_at_appoint[x] = deg[x];
      }
      ns.status = NodeState::Status::dirty;
      ns.leech = false;
      ns.set_id = set_id;
    };

    std::vector<char> can_host(sz, 0);
    for (int idx : order) {
      NodeState& ns = st[idx];
      if (ns.status != NodeState::Status::unset)
        throw construction_error("node decided twice: " + node_tag(i, net[idx]));
      bool decided = false;
      const bool dirty_child = has_dirty_child[idx] != 0;
      if (copy_from[idx] >= 0) {
        const int best = copy_from[idx];
        ns.status = NodeState::Status::dirty;
        ns.leech = false;
        ns.set_id = tb.states_[i - 1][best].set_id;
        ++tb.copy_count_;
        decided = true;
        // The batches this node passed over die here: the chosen batch
        // covers the whole subtree from now on.
        for (int c : t.children(i, idx)) {
          if (c == best) continue;
          const NodeState& cs = tb.states_[i - 1][c];
          if (cs.status != NodeState::Status::dirty || cs.leech) continue;
          Term& tm = tb.terms_[tb.sets_[cs.set_id].term];
          if (tm.forced_at < 0 || tm.forced_at > i - 1) {
            tm.forced_at = i - 1;
            ++tb.forced_terms_;
          }
        }
      }
      if (!decided) {
        const int h = find_host(t, m, i, idx, can_host);
        if (h >= 0) {
          ns.status = NodeState::Status::dirty;
          ns.leech = true;
          ns.host = h;
          ns.set_id = st[h].set_id;
          ++tb.leech_count_;
          decided = true;
        }
      }
      if (!decided) {
        if (!dirty_child && int(ns.friends.size()) < 2 * k + 2) {
          ns.status = NodeState::Status::clean;
          ++tb.clean_count_;
        } else {
          appoint(idx, ns);
        }
      }
      if (ns.status == NodeState::Status::dirty && !ns.leech) can_host[idx] = true;
    }

    // ---- the level's cross cliques drive degrees and term phases ----
    for (const auto& [a, b] : t.cross(i)) {
      if (tb.same_surrogates(i, a, i, b)) continue;  // redundant edge
      const auto& sa = tb.surrogates(i, a);
      const auto& sb = tb.surrogates(i, b);
      for (int x : sa) {
        for (int y : sb) {
          if (x == y) continue;
          if (tb.cross_pairs_.insert(pair_key(x, y)).second) {
            ++deg[x];
            ++deg[y];
          }
        }
      }
    }
    for (Term& tm : tb.terms_) {
      if (tm.phase1_end >= 0 || tm.forced_at >= 0) continue;
      int mn = INT_MAX;
      for (int x : tb.sets_[tm.set].points) mn = std::min(mn, deg[x] - deg_at_appoint[x]);
      if (mn >= k + 1) tm.phase1_end = i;
    }
    tb.deg_after_[i] = deg;

    log_line("level " + std::to_string(i) + ": nodes=" + std::to_string(sz) +
             " batches=" + std::to_string(tb.sets_.size()) +
             " leeches=" + std::to_string(tb.leech_count_) +
             " copies=" + std::to_string(tb.copy_count_) +
             " pairs=" + std::to_string(tb.cross_pairs_.size()));
  }

  // The degree cap is what the whole term machinery exists to enforce;
  // check it on every build rather than trusting the bookkeeping.
  for (int x = 0; x < n; ++x) {
    if (!le_tol(double(deg[x]), 2.0 * p.degree_threshold))
      throw construction_error("point " + std::to_string(x) + " reached cross degree " +
                               std::to_string(deg[x]) + ", above twice the threshold " +
                               std::to_string(p.degree_threshold));
  }
  return tb;
}

}  // namespace ftspan
