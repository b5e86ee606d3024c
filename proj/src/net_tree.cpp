#include "ftspan/net_tree.hpp"

#include <algorithm>
#include <cmath>

namespace ftspan {

NetTree NetTree::build(const Metric& m) {
  const int n = m.size();
  if (n < 1) throw config_error("empty point set");

  NetTree t;
  t.pow5_.push_back(1.0);
  t.levels_.push_back(std::vector<int>(n));
  for (int i = 0; i < n; ++i) t.levels_[0][i] = i;

  // Greedy nested nets, ascending point-id scan. A point joins N_i unless a
  // previously chosen one sits within 3*5^i; what survives is a 3*5^i-packing
  // and automatically a 3*5^i-cover of N_{i-1}. We stop at the first
  // singleton level, which exists because the exclusion radius eventually
  // swallows the diameter.
  while (int(t.levels_.back().size()) > 1) {
    int i = int(t.levels_.size());
    double r = t.pow5_.back() * 5.0;
    if (!std::isfinite(r)) throw construction_error("net scale overflow at level " + std::to_string(i));
    t.pow5_.push_back(r);
    const auto& prev = t.levels_[i - 1];
    std::vector<int> cur;
    for (int p : prev) {
      bool covered = false;
      for (int q : cur) {
        if (le_tol(m(p, q), 3.0 * r)) {
          covered = true;
          break;
        }
      }
      if (!covered) cur.push_back(p);
    }
    t.levels_.push_back(std::move(cur));
  }

  const int L = t.ell();
  t.parent_.assign(L + 1, {});
  t.children_.assign(L + 1, {});
  t.desc_.assign(L + 1, {});
  t.anc_.assign(L + 1, std::vector<int>(n, -1));
  for (int i = 0; i <= L; ++i) {
    t.parent_[i].assign(t.levels_[i].size(), -1);
    t.children_[i].assign(t.levels_[i].size(), {});
    t.desc_[i].assign(t.levels_[i].size(), {});
  }
  for (int i = 0; i < n; ++i) t.anc_[0][i] = i;

  for (int i = 0; i < L; ++i) {
    const auto& cur = t.levels_[i];
    const auto& up = t.levels_[i + 1];
    double r = t.pow5_[i + 1];
    for (int a = 0; a < int(cur.size()); ++a) {
      int p = cur[a];
      // Self-parent when p survives into N_{i+1}; otherwise the lowest-id
      // covering net point.
      int pa = -1;
      auto self = std::lower_bound(up.begin(), up.end(), p);
      if (self != up.end() && *self == p) {
        pa = int(self - up.begin());
      } else {
        for (int b = 0; b < int(up.size()); ++b) {
          if (le_tol(m(p, up[b]), 3.0 * r)) {
            pa = b;
            break;
          }
        }
      }
      if (pa < 0)
        throw construction_error("uncovered net point " + std::to_string(p) + " at level " +
                                 std::to_string(i));
      t.parent_[i][a] = pa;
      t.children_[i + 1][pa].push_back(a);
    }
    // children are pushed in ascending idx order == ascending point id
  }

  // Descendant leaf lists and per-level ancestors.
  for (int a = 0; a < int(t.levels_[0].size()); ++a) t.desc_[0][a] = {t.levels_[0][a]};
  for (int i = 1; i <= L; ++i) {
    for (int a = 0; a < int(t.levels_[i].size()); ++a) {
      auto& d = t.desc_[i][a];
      for (int c : t.children_[i][a])
        d.insert(d.end(), t.desc_[i - 1][c].begin(), t.desc_[i - 1][c].end());
      std::sort(d.begin(), d.end());
      for (int p : d) t.anc_[i][p] = a;
    }
  }
  return t;
}

int NetTree::idx_of(int level, int point) const {
  const auto& v = levels_[level];
  auto it = std::lower_bound(v.begin(), v.end(), point);
  if (it == v.end() || *it != point) return -1;
  return int(it - v.begin());
}

void NetTree::add_cross_edges(const Metric& m, double gamma) {
  if (gamma <= 0) throw config_error("gamma must be positive");
  gamma_ = gamma;
  has_cross_ = true;
  const int L = ell();
  cross_.assign(L + 1, {});
  cross_adj_.assign(L + 1, {});
  for (int i = 0; i <= L; ++i) cross_adj_[i].assign(levels_[i].size(), {});
  // Top level is a singleton; it keeps an empty edge list.
  for (int i = 0; i < L; ++i) {
    const auto& net = levels_[i];
    double r = gamma * pow5_[i];
    for (int a = 0; a < int(net.size()); ++a) {
      for (int b = a + 1; b < int(net.size()); ++b) {
        if (le_tol(m(net[a], net[b]), r)) {
          cross_[i].push_back({a, b});
          cross_adj_[i][a].push_back(b);
          cross_adj_[i][b].push_back(a);
        }
      }
    }
  }
  // Realized max node degree of the basic spanner: cross neighbors plus
  // children plus the parent edge.
  xi_ = 0;
  for (int i = 0; i <= L; ++i) {
    for (int a = 0; a < int(levels_[i].size()); ++a) {
      int deg = int(cross_adj_[i][a].size()) + int(children_[i][a].size()) +
                (parent_[i][a] >= 0 ? 1 : 0);
      xi_ = std::max(xi_, deg);
    }
  }
  if (xi_ == 0) xi_ = 1;  // single-point instance: keep derived bounds positive
}

bool NetTree::cross_linked(int level, int a, int b) const {
  const auto& adj = cross_adj_[level][a];
  return std::binary_search(adj.begin(), adj.end(), b);
}

long long NetTree::cross_edge_total() const {
  long long s = 0;
  for (const auto& v : cross_) s += (long long)v.size();
  return s;
}

NetTree::ClimbPath NetTree::base_spanner_path(const Metric& m, int p, int q) const {
  if (!has_cross_) throw construction_error("base_spanner_path before add_cross_edges");
  ClimbPath out;
  if (p == q) {
    out.nodes = {{0, p}};
    out.meet_level = 0;
    return out;
  }
  std::vector<int> ups, downs;  // point ids along the two climbs
  for (int i = 0; i <= ell(); ++i) {
    int ia = anc_[i][p], ib = anc_[i][q];
    int pa = levels_[i][ia], pb = levels_[i][ib];
    ups.push_back(pa);
    downs.push_back(pb);
    if (pa == pb || cross_linked(i, ia, ib)) {
      out.meet_level = i;
      break;
    }
  }
  if (out.meet_level < 0)
    throw construction_error("climb did not meet: points " + std::to_string(p) + "," +
                             std::to_string(q));
  for (int i = 0; i <= out.meet_level; ++i) out.nodes.push_back({i, ups[i]});
  int top = out.meet_level;
  if (ups[top] != downs[top]) out.nodes.push_back({top, downs[top]});
  for (int i = top - 1; i >= 0; --i) out.nodes.push_back({i, downs[i]});
  for (size_t i = 0; i + 1 < out.nodes.size(); ++i)
    out.weight += m(out.nodes[i].second, out.nodes[i + 1].second);
  return out;
}

}  // namespace ftspan
