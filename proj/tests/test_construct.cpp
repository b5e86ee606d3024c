#include <doctest.h>

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "ftspan/common.hpp"
#include "ftspan/gen.hpp"
#include "ftspan/metric.hpp"
#include "ftspan/net_tree.hpp"
#include "ftspan/params.hpp"
#include "ftspan/surrogates.hpp"
#include "ftspan/verify.hpp"
#include "helpers.hpp"

using namespace ftspan;

namespace {

// The table keeps a pointer into the tree, so both live together on the heap;
// moving the pair around by value would leave that pointer dangling.
struct Built {
  explicit Built(Metric mm) : m(std::move(mm)) {}
  Metric m;
  NetTree t;
  DerivedParams p;
  SurrogateTable tb;
};

std::unique_ptr<Built> build_table(Metric m, int k, double gamma, double eps = 0.5,
                                   int xi_override = -1, bool unbounded = false) {
  auto b = std::make_unique<Built>(std::move(m));
  b->t = NetTree::build(b->m);
  b->t.add_cross_edges(b->m, gamma);
  b->p = DerivedParams::derive(b->t, k, eps, gamma, xi_override);
  b->tb = compute_sets(b->t, b->m, b->p, unbounded);
  return b;
}

long long node_total(const NetTree& t) {
  long long s = 0;
  for (int l = 0; l < t.levels(); ++l) s += t.size(l);
  return s;
}

}  // namespace

TEST_CASE("term lifetime windows") {
  // A term without a finished first phase never runs out on its own.
  Term fresh;
  CHECK_FALSE(fresh.over_at(1000, 5));

  // Phase two covers tau+2 further levels past the phase-one end, inclusive.
  Term tm;
  tm.phase1_end = 3;
  CHECK_FALSE(tm.over_at(10, 5));  // 10 == 3 + 5 + 2 is still inside
  CHECK(tm.over_at(11, 5));

  // Forcing cuts the term off from the forced level onward, phases aside.
  Term forced;
  forced.phase1_end = 3;
  forced.forced_at = 4;
  CHECK_FALSE(forced.over_at(3, 5));
  CHECK(forced.over_at(4, 5));
}

TEST_CASE("derived parameters from the four-point line") {
  Metric m = helpers::line_metric({0.0, 1.0, 7.0, 30.0});
  NetTree t = NetTree::build(m);
  t.add_cross_edges(m, 400.0);

  SUBCASE("k=1 at gamma 400") {
    DerivedParams p = DerivedParams::derive(t, 1, 0.5, 400.0);
    CHECK(p.k == 1);
    CHECK(p.gamma == 400.0);
    CHECK(p.tau == 5);  // 5^4 = 625 is the first power of five at or above 400
    CHECK(p.xi == 5);   // node (0,1): three children, one parent, one cross neighbor
    CHECK(p.degree_threshold == 675.0);  // (5+4) * 5^2 * (2*1+1)
  }

  SUBCASE("default gamma scales with one over eps down to a floor") {
    CHECK(DerivedParams::default_gamma(0.5) == 1200.0);
    CHECK(DerivedParams::default_gamma(1.0) == 600.0);
    CHECK(DerivedParams::default_gamma(2.0) == 395.0);
    DerivedParams p = DerivedParams::derive(t, 0, 0.5);
    CHECK(p.gamma == 1200.0);
    CHECK(p.tau == 6);  // 5^5 = 3125 is the first power at or above 1200
    CHECK(p.degree_threshold == 250.0);  // (6+4) * 25 * 1
  }

  SUBCASE("xi comes from the tree unless overridden") {
    NetTree bare = NetTree::build(m);  // no cross edges yet
    CHECK_THROWS_AS(DerivedParams::derive(bare, 1, 0.5, 400.0), construction_error);
    DerivedParams p = DerivedParams::derive(bare, 1, 0.5, 400.0, 3);
    CHECK(p.xi == 3);
    CHECK(p.degree_threshold == 243.0);  // (5+4) * 9 * 3
  }

  SUBCASE("bad inputs are rejected") {
    CHECK_THROWS_AS(DerivedParams::derive(t, -1, 0.5, 400.0), config_error);
    CHECK_THROWS_AS(DerivedParams::derive(t, 1, 0.5, 4.0), config_error);
  }
}

TEST_CASE("four-point line, k=1: every node, set and counter") {
  auto b = build_table(helpers::line_metric({0.0, 1.0, 7.0, 30.0}), 1, 400.0);
  const SurrogateTable& tb = b->tb;
  REQUIRE(tb.levels() == 3);
  REQUIRE(tb.points() == 4);

  // All four leaves stay clean: nobody has four 10-friends at radius 10.
  for (int i = 0; i < 4; ++i) {
    CHECK(tb.state(0, i).status == NodeState::Status::clean);
    CHECK_FALSE(tb.is_leech(0, i));
    CHECK(tb.surrogates(0, i) == std::vector<int>{i});
  }
  CHECK(tb.state(0, 0).friends == std::vector<int>{0, 1, 2});
  CHECK(tb.state(0, 1).friends == std::vector<int>{0, 1, 2});
  CHECK(tb.state(0, 2).friends == std::vector<int>{0, 1, 2});
  CHECK(tb.state(0, 3).friends == std::vector<int>{3});

  // At level 1 the radius grows to 50, both nodes see all four points, and
  // the point-0 node appoints; the point-30 node leeches onto it (30 <= 120).
  CHECK(tb.state(1, 0).friends == std::vector<int>{0, 1, 2, 3});
  CHECK(tb.state(1, 1).friends == std::vector<int>{0, 1, 2, 3});
  CHECK(tb.dirty(1, 0));
  CHECK_FALSE(tb.is_leech(1, 0));
  CHECK(tb.dirty(1, 1));
  CHECK(tb.is_leech(1, 1));
  CHECK(tb.state(1, 1).host == 0);
  CHECK(tb.state(1, 0).set_id == tb.state(1, 1).set_id);
  CHECK(tb.same_surrogates(1, 0, 1, 1));

  // The root re-uses the running batch.
  CHECK(tb.dirty(2, 0));
  CHECK_FALSE(tb.is_leech(2, 0));
  CHECK(tb.same_surrogates(2, 0, 1, 0));

  // One batch: the two lowest-degree points, ties broken by id.
  REQUIRE(tb.appointments() == 1);
  CHECK(tb.sets()[0].points == std::vector<int>{0, 1});
  CHECK(tb.surrogates(1, 0) == std::vector<int>{0, 1});
  CHECK(tb.appointed_at(0) == 1);
  CHECK(tb.appointed_at(1) == 1);
  CHECK(tb.appointed_at(2) == -1);
  CHECK(tb.appointed_at(3) == -1);
  CHECK(tb.point_dirty(0));
  CHECK_FALSE(tb.point_dirty(2));

  const Term& tm = tb.term_of(1, 0);
  CHECK(tm.start_level == 1);
  CHECK(tm.appoint_point == 0);
  CHECK(tm.appoint_level == 1);
  // The level-1 cross edge joins two nodes sharing the batch, so it is
  // redundant and the batch never collects the k+1 new pairs phase one needs.
  CHECK(tm.phase1_end == -1);
  CHECK(tm.forced_at == -1);
  CHECK_THROWS_AS(tb.term_of(0, 0), construction_error);

  CHECK(tb.leech_count() == 1);
  CHECK(tb.copy_count() == 1);
  CHECK(tb.clean_count() == 4);
  CHECK(tb.forced_terms() == 0);
  CHECK(tb.reserve_evictions() == 0);

  // Level 0 pairs every point with its three cross neighbors; nothing new
  // arrives later because the level-1 edge is redundant.
  for (int x = 0; x < 4; ++x) {
    CHECK(tb.deg_after(0, x) == 3);
    CHECK(tb.deg_after(1, x) == 3);
    CHECK(tb.deg_final(x) == 3);
  }
  CHECK(tb.cross_pair_count() == 6);
  CHECK(tb.cross_pair(0, 3));
  CHECK(tb.cross_pair(1, 2));

  CHECK(structural_audit(tb, b->p, b->t, b->m).empty());
}

TEST_CASE("four-point line, k=0: one replacement point carries the tree") {
  auto b = build_table(helpers::line_metric({0.0, 1.0, 7.0, 30.0}), 0, 400.0);
  const SurrogateTable& tb = b->tb;

  // With k=0 a friend set of two already appoints, so the point-0 leaf goes
  // first and its two in-reach neighbors leech onto it; point 30 stays clean.
  REQUIRE(tb.appointments() == 1);
  CHECK(tb.sets()[0].points == std::vector<int>{0});
  CHECK(tb.appointed_at(0) == 0);
  CHECK(tb.dirty(0, 0));
  CHECK_FALSE(tb.is_leech(0, 0));
  CHECK(tb.is_leech(0, 1));
  CHECK(tb.state(0, 1).host == 0);
  CHECK(tb.is_leech(0, 2));
  CHECK(tb.state(0, 2).host == 0);
  CHECK(tb.state(0, 3).status == NodeState::Status::clean);

  // Upward: copies at (0,1) and (0,2); the point-30 level-1 node leeches.
  CHECK(tb.dirty(1, 0));
  CHECK_FALSE(tb.is_leech(1, 0));
  CHECK(tb.dirty(1, 1));
  CHECK(tb.is_leech(1, 1));
  CHECK(tb.state(1, 1).host == 0);
  CHECK(tb.dirty(2, 0));
  CHECK(tb.surrogates(2, 0) == std::vector<int>{0});

  CHECK(tb.leech_count() == 3);
  CHECK(tb.copy_count() == 2);
  CHECK(tb.clean_count() == 1);
  CHECK(tb.forced_terms() == 0);

  // Three level-0 edges leave the shared batch, but they all present the same
  // point pair (0,30): it counts once.
  CHECK(tb.cross_pair_count() == 1);
  CHECK(tb.cross_pair(0, 3));
  CHECK_FALSE(tb.cross_pair(0, 1));
  CHECK(tb.deg_after(0, 0) == 1);
  CHECK(tb.deg_after(0, 3) == 1);
  CHECK(tb.deg_after(0, 1) == 0);
  CHECK(tb.deg_after(0, 2) == 0);
  CHECK(tb.deg_final(0) == 1);

  // That single pair is exactly the k+1 = 1 new neighbor phase one wants.
  CHECK(tb.term_of(0, 0).phase1_end == 0);

  CHECK(structural_audit(tb, b->p, b->t, b->m).empty());
}

TEST_CASE("a single point builds a clean one-node table") {
  auto b = build_table(helpers::line_metric({0.0}), 0, 400.0, 0.5, 1);
  CHECK(b->tb.levels() == 1);
  CHECK(b->tb.points() == 1);
  CHECK(b->tb.state(0, 0).status == NodeState::Status::clean);
  CHECK(b->tb.surrogates(0, 0) == std::vector<int>{0});
  CHECK(b->tb.appointments() == 0);
  CHECK(b->tb.clean_count() == 1);
  CHECK(structural_audit(b->tb, b->p, b->t, b->m).empty());
}

TEST_CASE("host search: nearest first, ids break ties, reach is 24 radii") {
  SUBCASE("equal distances go to the lower point id") {
    Metric m = helpers::line_metric({0.0, 10.0, 20.0});
    NetTree t = NetTree::build(m);
    t.add_cross_edges(m, 400.0);
    std::vector<char> elig = {1, 0, 1};
    CHECK(find_host(t, m, 0, 1, elig) == 0);
    elig = {0, 0, 1};
    CHECK(find_host(t, m, 0, 1, elig) == 2);
    elig = {0, 0, 0};
    CHECK(find_host(t, m, 0, 1, elig) == -1);
  }
  SUBCASE("candidates past 24 times the level radius are invisible") {
    Metric m = helpers::line_metric({0.0, 24.0, 48.0});
    NetTree t = NetTree::build(m);
    t.add_cross_edges(m, 400.0);
    std::vector<char> elig = {0, 1, 1};
    CHECK(find_host(t, m, 0, 0, elig) == 1);  // 24 is exactly in reach
    elig = {0, 0, 1};
    CHECK(find_host(t, m, 0, 0, elig) == -1);  // 48 is not
    elig = {1, 1, 0};
    CHECK(find_host(t, m, 0, 2, elig) == 1);  // nearer beats lower id
  }
}

TEST_CASE("two far clusters: appointment, leeching, copies and term forcing") {
  // Twelve unit-spaced points at the origin and twelve more 500 away. Each
  // cluster is too crowded to stay clean, too far from the other to interact
  // below level 1, and collapses to a single net point from level 1 up.
  std::vector<double> xs;
  for (int i = 0; i < 12; ++i) xs.push_back(double(i));
  for (int i = 0; i < 12; ++i) xs.push_back(500.0 + double(i));
  auto b = build_table(helpers::line_metric(xs), 2, 400.0);
  const SurrogateTable& tb = b->tb;

  REQUIRE(tb.levels() == 5);
  CHECK(b->t.net(1) == std::vector<int>{0, 12});
  CHECK(b->t.net(3) == std::vector<int>{0, 12});
  CHECK(b->t.net(4) == std::vector<int>{0});

  // Friend sets fill to the 3k+3 = 9 cap from the nearest ids up.
  CHECK(tb.state(0, 0).friends == std::vector<int>{0, 1, 2, 3, 4, 5, 6, 7, 8});
  CHECK(tb.state(0, 12).friends ==
        std::vector<int>{12, 13, 14, 15, 16, 17, 18, 19, 20});

  // One appointment per cluster, lowest ids win the degree tie; everyone else
  // in the cluster leeches onto the appointing leaf.
  REQUIRE(tb.appointments() == 2);
  CHECK(tb.sets()[0].points == std::vector<int>{0, 1, 2});
  CHECK(tb.sets()[1].points == std::vector<int>{12, 13, 14});
  CHECK(tb.dirty(0, 0));
  CHECK_FALSE(tb.is_leech(0, 0));
  CHECK(tb.dirty(0, 12));
  CHECK_FALSE(tb.is_leech(0, 12));
  for (int i = 1; i < 12; ++i) {
    CHECK(tb.is_leech(0, i));
    CHECK(tb.state(0, i).host == 0);
    CHECK(tb.is_leech(0, 12 + i));
    CHECK(tb.state(0, 12 + i).host == 12);
  }
  for (int x : {0, 1, 2, 12, 13, 14}) CHECK(tb.appointed_at(x) == 0);
  CHECK(tb.appointed_at(3) == -1);
  CHECK(tb.appointed_at(15) == -1);

  // The towers copy their own batch upward and never merge below the root.
  CHECK(tb.leech_count() == 22);
  CHECK(tb.copy_count() == 7);
  CHECK(tb.clean_count() == 0);
  for (int l = 1; l <= 3; ++l) {
    CHECK(tb.state(l, 0).set_id == 0);
    CHECK_FALSE(tb.is_leech(l, 0));
    CHECK(tb.state(l, 1).set_id == 1);
    CHECK_FALSE(tb.is_leech(l, 1));
  }
  CHECK_FALSE(tb.same_surrogates(1, 0, 1, 1));

  // The root picks one child batch (the id tie goes to the lower tower) and
  // declares the passed-over batch dead at the children's level.
  CHECK(tb.state(4, 0).set_id == 0);
  CHECK(tb.forced_terms() == 1);
  CHECK(tb.terms()[0].forced_at == -1);
  CHECK(tb.terms()[1].forced_at == 3);

  // Degrees: level 0 is all same-batch edges (nothing counts), the level-1
  // exchange pairs the two batches point-for-point, and the repeats of that
  // same exchange at levels 2 and 3 add nothing new.
  for (int x : {0, 1, 2, 12, 13, 14}) {
    CHECK(tb.deg_after(0, x) == 0);
    CHECK(tb.deg_after(1, x) == 3);
    CHECK(tb.deg_final(x) == 3);
  }
  CHECK(tb.deg_final(5) == 0);
  CHECK(tb.cross_pair_count() == 9);
  CHECK(tb.cross_pair(0, 12));
  CHECK(tb.cross_pair(2, 14));
  CHECK_FALSE(tb.cross_pair(0, 1));

  // Both batches finished phase one on the level-1 exchange.
  CHECK(tb.terms()[0].phase1_end == 1);
  CHECK(tb.terms()[1].phase1_end == 1);

  CHECK(tb.reserve_evictions() == 0);
  CHECK(structural_audit(tb, b->p, b->t, b->m).empty());
}

TEST_CASE("degree counters only grow and stay under twice the threshold") {
  auto b = build_table(gen_clustered_2d(60, 13).normalized(), 2, 400.0);
  const SurrogateTable& tb = b->tb;
  const int L = tb.levels();
  for (int x = 0; x < tb.points(); ++x) {
    for (int l = 1; l < L; ++l) CHECK(tb.deg_after(l, x) >= tb.deg_after(l - 1, x));
    CHECK(tb.deg_final(x) == tb.deg_after(L - 1, x));
    CHECK(double(tb.deg_final(x)) <= 2.0 * b->p.degree_threshold);
  }
}

TEST_CASE("reserve truncation never changes a friend set") {
  // The eviction policy may only drop points the next levels would not have
  // promoted anyway. Run the same build with and without the size cap and
  // compare every friend set; the capped run must actually evict for the
  // comparison to mean anything.
  auto check_pair = [](Metric raw, int k, int xi_override, bool expect_evictions) {
    Metric m = raw.normalized();
    auto capped = build_table(m, k, 400.0, 0.5, xi_override, false);
    auto shadow = build_table(m, k, 400.0, 0.5, xi_override, true);
    if (expect_evictions) CHECK(capped->tb.reserve_evictions() > 0);
    CHECK(shadow->tb.reserve_evictions() == 0);
    REQUIRE(capped->tb.levels() == shadow->tb.levels());
    for (int l = 0; l < capped->tb.levels(); ++l) {
      for (int i = 0; i < capped->t.size(l); ++i) {
        CHECK(capped->tb.state(l, i).friends == shadow->tb.state(l, i).friends);
        CHECK(capped->tb.state(l, i).status == shadow->tb.state(l, i).status);
      }
    }
  };
  // Squeezed caps that overflow the reserves: the capped runs evict
  // (96 and 4947 entries respectively) yet land on identical tables.
  check_pair(gen_clustered_2d(100, 7), 0, 3, true);
  check_pair(gen_line(100), 0, 2, true);
  // Ordinary instances sit under the cap; the shadow must still agree.
  check_pair(gen_uniform_square(30, 4), 1, -1, false);
  check_pair(gen_clustered_2d(40, 6), 2, -1, false);
}

TEST_CASE("tables come out healthy across the families") {
  auto expect_clean = [](Metric raw, int k, double gamma) {
    auto b = build_table(raw.normalized(), k, gamma);
    auto findings = structural_audit(b->tb, b->p, b->t, b->m);
    CHECK_MESSAGE(findings.empty(),
                  (findings.empty() ? std::string("ok") : findings.front()));
    // Every node got exactly one of the four outcomes.
    const long long decided = b->tb.appointments() + b->tb.leech_count() +
                              b->tb.copy_count() + b->tb.clean_count();
    CHECK(decided == node_total(b->t));
  };
  expect_clean(gen_uniform_square(40, 3), 0, 400.0);
  expect_clean(gen_uniform_square(40, 3), 1, 400.0);
  expect_clean(gen_uniform_square(40, 3), 2, 400.0);
  expect_clean(gen_clustered_2d(35, 5), 1, 400.0);
  expect_clean(gen_matrix_band(30, 9), 2, 400.0);
  expect_clean(gen_exp_line(8), 1, 400.0);
  expect_clean(gen_line(40), 2, 400.0);
  expect_clean(gen_uniform_square(30, 11), 1, 1200.0);
}

TEST_CASE("construction rejects inconsistent setups") {
  Metric m = helpers::line_metric({0.0, 1.0, 7.0, 30.0});
  SUBCASE("cross edges must be in place") {
    NetTree t = NetTree::build(m);
    DerivedParams p = DerivedParams::derive(t, 1, 0.5, 400.0, 5);
    CHECK_THROWS_AS(compute_sets(t, m, p), construction_error);
  }
  SUBCASE("the tree and the parameters must agree on gamma") {
    NetTree t = NetTree::build(m);
    t.add_cross_edges(m, 400.0);
    DerivedParams p = DerivedParams::derive(t, 1, 0.5, 1200.0);
    CHECK_THROWS_AS(compute_sets(t, m, p), construction_error);
  }
  SUBCASE("k beyond n-2 is refused") {
    NetTree t = NetTree::build(m);
    t.add_cross_edges(m, 400.0);
    DerivedParams p = DerivedParams::derive(t, 3, 0.5, 400.0);
    CHECK_THROWS_AS(compute_sets(t, m, p), config_error);
  }
}
