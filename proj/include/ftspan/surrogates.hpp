#pragma once
#include <cstdint>
#include <unordered_set>
#include <vector>

#include "ftspan/metric.hpp"
#include "ftspan/net_tree.hpp"
#include "ftspan/params.hpp"

namespace ftspan {

// Lifetime of one appointment. A fresh batch of k+1 replacement points is
// appointed by some node and then re-used up the tree while its term lasts.
// The term has two phases: the first runs until every appointed point has
// gathered k+1 new cross-clique neighbors since the appointment, the second
// lasts exactly tau+2 further levels. A parent that re-uses one child's batch
// declares the batches of its other dirty non-leech children dead on the spot
// (forced_at); that early cut is what guarantees no ancestor of an appointing
// node appoints again too soon.
struct Term {
  int start_level = -1;
  int appoint_point = -1;  // node that made the appointment
  int appoint_level = -1;
  int set = -1;            // the batch this term governs (SurrogateTable::sets)
  int phase1_end = -1;     // level at whose close every point reached k+1 new pairs
  int forced_at = -1;      // level from which the term counts as over, if forced

  bool over_at(int level, int tau) const {
    if (forced_at >= 0 && level >= forced_at) return true;
    return phase1_end >= 0 && level > phase1_end + tau + 2;
  }
};

// One appointed batch: exactly k+1 point ids, sorted. Shared by every node
// that copies it upward or leeches onto its owner, so batches are compared by
// index, never by content.
struct SurrogateSet {
  std::vector<int> points;
  int term = -1;
};

// Reserve entries remember when a point first reached this branch's reserve;
// eviction under the size cap drops the stalest levels first.
struct ReserveEntry {
  int point = -1;
  int level = -1;
};

struct NodeState {
  enum class Status : std::uint8_t { unset, clean, dirty };
  Status status = Status::unset;
  bool leech = false;
  int host = -1;    // net idx of the host at the same level (leeches only)
  int set_id = -1;  // batch index (dirty nodes only)
  std::vector<int> friends;           // sorted point ids, at most 3k+3
  std::vector<ReserveEntry> reserve;  // sorted by point id
};

// Everything compute_sets produces: per-node states, the appointed batches
// with their terms, and the per-point degree bookkeeping that the term phases
// and the audits are based on. Holds a pointer to the net tree it was built
// from (a clean node's replacement set is just its descendant list, which the
// tree already stores).
class SurrogateTable {
 public:
  int levels() const { return int(states_.size()); }
  int points() const { return n_; }
  const NodeState& state(int level, int idx) const { return states_[level][idx]; }
  bool dirty(int level, int idx) const {
    return states_[level][idx].status == NodeState::Status::dirty;
  }
  bool is_leech(int level, int idx) const { return states_[level][idx].leech; }

  // S(x): the appointed batch for dirty nodes, the descendant points for
  // clean ones. Sorted by point id either way.
  const std::vector<int>& surrogates(int level, int idx) const;
  bool same_surrogates(int la, int ia, int lb, int ib) const;
  const Term& term_of(int level, int idx) const;  // dirty nodes only

  const std::vector<SurrogateSet>& sets() const { return sets_; }
  const std::vector<Term>& terms() const { return terms_; }
  const NetTree& tree() const { return *tree_; }
  const DerivedParams& params() const { return params_; }

  // Level at which a point was appointed, -1 if it stayed clean.
  int appointed_at(int point) const { return appointed_at_[point]; }
  bool point_dirty(int point) const { return appointed_at_[point] >= 0; }
  // Cross-clique degree of a point once the given level finished.
  int deg_after(int level, int point) const { return deg_after_[level][point]; }
  int deg_final(int point) const { return deg_after_.back()[point]; }

  long long appointments() const { return (long long)sets_.size(); }
  long long leech_count() const { return leech_count_; }
  long long copy_count() const { return copy_count_; }
  long long clean_count() const { return clean_count_; }
  long long forced_terms() const { return forced_terms_; }
  long long reserve_evictions() const { return reserve_evictions_; }
  long long cross_pair_count() const { return (long long)cross_pairs_.size(); }
  bool cross_pair(int a, int b) const;

  // Mutable back-door so tests can seed structural defects and confirm the
  // audit spots them. Construction code never touches this.
  struct RawView {
    std::vector<std::vector<NodeState>>& states;
    std::vector<SurrogateSet>& sets;
    std::vector<Term>& terms;
    std::vector<int>& appointed_at;
    std::vector<std::vector<int>>& deg_after;
  };
  RawView raw() { return {states_, sets_, terms_, appointed_at_, deg_after_}; }

 private:
  friend SurrogateTable compute_sets(const NetTree&, const Metric&, const DerivedParams&,
                                     bool);
  const NetTree* tree_ = nullptr;
  int n_ = 0;
  DerivedParams params_;
  std::vector<std::vector<NodeState>> states_;  // [level][net idx]
  std::vector<SurrogateSet> sets_;
  std::vector<Term> terms_;
  std::vector<int> appointed_at_;          // [point] -> level or -1
  std::vector<std::vector<int>> deg_after_;  // [level][point]
  std::unordered_set<std::uint64_t> cross_pairs_;
  long long leech_count_ = 0;
  long long copy_count_ = 0;
  long long clean_count_ = 0;
  long long forced_terms_ = 0;
  long long reserve_evictions_ = 0;
};

// Nearest already-decided dirty non-leech node within 24*5^level of (level,
// idx), ties by lowest point id; -1 if none. `eligible` flags candidate net
// idxs at the same level — the caller is responsible for only flagging nodes
// whose status is final.
int find_host(const NetTree& t, const Metric& m, int level, int idx,
              const std::vector<char>& eligible);

// The bottom-up pass that decides every node's status and replacement set.
// With unbounded_reserve the reserve size cap is ignored; tests use that to
// confirm eviction never changes the friend sets.
SurrogateTable compute_sets(const NetTree& t, const Metric& m, const DerivedParams& p,
                            bool unbounded_reserve = false);

}  // namespace ftspan
