#include "ftspan/gen.hpp"

#include <cmath>
#include <vector>

namespace ftspan {

Metric gen_uniform_square(int n, std::uint64_t seed) {
  if (n < 1) throw config_error("instance needs at least one point");
  Rng rng(seed);
  Eigen::MatrixXd c(n, 2);
  for (int i = 0; i < n; ++i) {
    c(i, 0) = rng.real();
    c(i, 1) = rng.real();
  }
  return Metric::from_coords(c);
}

namespace {

// Splits count points into patches of at most 49, laid out recursively: the
// four quadrant directions at the current scale, shrinking by `step` per
// depth. Bottom patches are 7-wide unit grids with a little jitter.
void place(int count, double scale, double cx, double cy, double step, Rng& rng,
           std::vector<std::pair<double, double>>& out) {
  if (count <= 49) {
    for (int i = 0; i < count; ++i) {
      double jx = 0.2 * rng.real(), jy = 0.2 * rng.real();
      out.emplace_back(cx + double(i % 7) + jx, cy + double(i / 7) + jy);
    }
    return;
  }
  static const double dir[4][2] = {{1, 1}, {-1, 1}, {-1, -1}, {1, -1}};
  int parts = std::min(4, (count + 48) / 49);
  int base = count / parts, extra = count % parts;
  for (int j = 0; j < parts; ++j) {
    int cnt = base + (j < extra ? 1 : 0);
    if (cnt == 0) continue;
    place(cnt, scale / step, cx + dir[j][0] * scale, cy + dir[j][1] * scale, step, rng, out);
  }
}

}  // namespace

Metric gen_clustered_2d(int n, std::uint64_t seed, double step) {
  if (n < 1) throw config_error("instance needs at least one point");
  if (step < 100.0) throw config_error("cluster separation step must be at least 100");
  Rng rng(seed);
  // depth of the recursion decides the top scale: patches of 49, fanout 4
  int levels = 0;
  for (int cap = 49; cap < n; cap *= 4) ++levels;
  double top = std::pow(step, std::max(1, levels));
  std::vector<std::pair<double, double>> pts;
  pts.reserve(n);
  place(n, top, 0.0, 0.0, step, rng, pts);
  Eigen::MatrixXd c(n, 2);
  for (int i = 0; i < n; ++i) {
    c(i, 0) = pts[i].first;
    c(i, 1) = pts[i].second;
  }
  return Metric::from_coords(c);
}

Metric gen_line(int n) {
  if (n < 1) throw config_error("instance needs at least one point");
  Eigen::MatrixXd c(n, 1);
  for (int i = 0; i < n; ++i) c(i, 0) = double(i);
  return Metric::from_coords(c);
}

Metric gen_exp_line(int n, double base) {
  if (n < 1) throw config_error("instance needs at least one point");
  if (base < 2.0) throw config_error("exponential line needs base >= 2");
  if (double(n - 1) * std::log10(base) > 250.0)
    throw config_error("exponential line of " + std::to_string(n) +
                       " points overflows the double range");
  Eigen::MatrixXd c(n, 1);
  double x = 1.0;
  for (int i = 0; i < n; ++i, x *= base) c(i, 0) = x;
  return Metric::from_coords(c);
}

Metric gen_matrix_band(int n, std::uint64_t seed) {
  if (n < 1) throw config_error("instance needs at least one point");
  Rng rng(seed);
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) d(i, j) = d(j, i) = 1.0 + rng.real();
  return Metric::from_matrix(d);
}

}  // namespace ftspan
