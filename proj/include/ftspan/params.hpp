#pragma once
#include "ftspan/net_tree.hpp"

namespace ftspan {

// Run-wide constants derived from the instance. tau is the level span a
// surrogate term survives past its phase-one end; degree_threshold is the cap
// D that clean-node surrogates must respect (their realized degree is audited
// against it, and everything against 2D).
struct DerivedParams {
  int k = 0;
  double eps = 0.5;
  double gamma = 0.0;
  int tau = 0;
  int xi = 0;
  double degree_threshold = 0.0;  // D = (tau + 4) * xi^2 * (2k + 1)

  static double default_gamma(double eps);
  // xi_override < 0 takes the tree's realized value. Tests use the override
  // to shrink D until the threshold actually binds.
  static DerivedParams derive(const NetTree& t, int k, double eps, double gamma = 0.0,
                              int xi_override = -1);
};

}  // namespace ftspan
