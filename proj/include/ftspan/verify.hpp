#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "ftspan/params.hpp"
#include "ftspan/spanner.hpp"

namespace ftspan {

struct FaultSet {
  std::vector<int> points;  // ≤ k ids, kept sorted and unique
};

struct StretchWitness {
  int p = -1;
  int q = -1;
  double stretch = 1.0;  // worst surviving pair; +inf when one is disconnected
  FaultSet faults;
};

struct FaultStrategy {
  enum class Kind { exhaustive, random_trials, targeted };
  Kind kind = Kind::exhaustive;
  long long trials = 0;
  std::uint64_t seed = 0;
  // "exhaustive" | "random:N" | "targeted"; anything else is a config_error.
  static FaultStrategy parse(const std::string& text);
};

struct SuiteResult {
  bool ok = true;
  long long fault_sets = 0;
  StretchWitness worst;
};

struct HopReport {
  int hops = 0;        // max over pairs of the fewest edges any good-enough path needs
  int h_max = 0;       // relaxation budget: 4*ceil(log2 n) + 8
  long long over = 0;  // pairs that found no good-enough path within the budget
};

// Summary a verification run hands back to callers; assembled by the CLI.
struct Report {
  int max_degree = 0;
  long long edge_count = 0;
  double lightness = 0.0;  // spanner weight over MST weight
  int hop_diameter = 0;
  StretchWitness worst;
  std::vector<std::string> audit_findings;
  double millis = 0.0;
};

// Removes the fault points and all incident edges, then measures the worst
// distance blow-up over surviving pairs with exact shortest paths.
StretchWitness check_stretch(const FtSpanner& sp, const Metric& m, double eps,
                             const FaultSet& f);

// Drives check_stretch over a family of fault sets. The table, when given,
// lets the targeted strategy aim at frequently-used replacement points.
SuiteResult fault_suite(const FtSpanner& sp, const Metric& m, double eps, int k,
                        const FaultStrategy& strategy, const SurrogateTable* tb = nullptr);

HopReport measure_hop_diameter(const FtSpanner& sp, const Metric& m, double eps);

// Re-checks the construction's structural guarantees from scratch. Returns
// human-readable findings, each prefixed "invariant N:"; empty means healthy.
std::vector<std::string> structural_audit(const SurrogateTable& tb, const DerivedParams& p,
                                          const NetTree& t, const Metric& m);

// Baseline: scan pairs by ascending weight, adding one whenever the graph so
// far cannot offer k+1 vertex-disjoint within-budget detours (unit-capacity
// flow over the detour-feasible subgraph). Small n only.
FtSpanner greedy_ft_oracle(const Metric& m, double t, int k);

// The k=0 skeleton: one edge per tree and cross edge between net points.
// Its stretch validates the cross-edge reach parameter choice.
FtSpanner basic_as_point_graph(const NetTree& t, const Metric& m);

}  // namespace ftspan
