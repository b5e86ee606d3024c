#include "ftspan/params.hpp"

#include <cmath>

#include "ftspan/common.hpp"

namespace ftspan {

double DerivedParams::default_gamma(double eps) {
  if (!(eps > 0.0)) throw config_error("eps must be positive");
  double g = std::ceil(600.0 / eps);
  return g < 395.0 ? 395.0 : g;
}

DerivedParams DerivedParams::derive(const NetTree& t, int k, double eps, double gamma,
                                    int xi_override) {
  if (k < 0) throw config_error("k must be nonnegative");
  DerivedParams p;
  p.k = k;
  p.eps = eps;
  p.gamma = gamma > 0.0 ? gamma : default_gamma(eps);
  if (p.gamma < 5.0) throw config_error("gamma too small to be useful");
  // Smallest tau with 5^(tau-1) >= gamma; integer arithmetic, no log rounding.
  int tau = 1;
  for (double pw = 1.0; pw < p.gamma; pw *= 5.0) ++tau;
  p.tau = tau;
  p.xi = xi_override >= 0 ? xi_override : t.xi();
  if (p.xi <= 0) throw construction_error("xi unavailable: cross edges not built");
  p.degree_threshold =
      double(p.tau + 4) * double(p.xi) * double(p.xi) * double(2 * k + 1);
  return p;
}

}  // namespace ftspan
