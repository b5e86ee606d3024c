#include "ftspan/metric.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <vector>

namespace ftspan {

namespace {

std::vector<std::vector<double>> read_rows(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open input file: " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    for (char& c : line)
      if (c == ',') c = ' ';
    std::istringstream ss(line);
    std::vector<double> row;
    double v;
    while (ss >> v) row.push_back(v);
    if (!ss.eof()) {
      std::string tok;
      ss.clear();
      ss >> tok;
      throw config_error(path + ":" + std::to_string(lineno) + ": bad token '" + tok + "'");
    }
    if (!row.empty()) rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

Metric Metric::from_points_file(const std::string& path) {
  auto rows = read_rows(path);
  if (rows.empty()) throw config_error(path + ": no points");
  size_t dim = rows[0].size();
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != dim)
      throw config_error(path + ": point " + std::to_string(i) + " has dimension " +
                         std::to_string(rows[i].size()) + ", expected " + std::to_string(dim));
    for (double v : rows[i])
      if (!std::isfinite(v))
        throw config_error(path + ": point " + std::to_string(i) + " has a non-finite coordinate");
  }
  Eigen::MatrixXd c(rows.size(), dim);
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < dim; ++j) c(i, j) = rows[i][j];
  return from_coords(c);
}

Metric Metric::from_matrix_file(const std::string& path) {
  auto rows = read_rows(path);
  if (rows.empty()) throw config_error(path + ": empty matrix file");
  if (rows[0].size() != 1 || rows[0][0] < 1 || rows[0][0] != std::floor(rows[0][0]))
    throw config_error(path + ": first line must be the point count");
  int n = int(rows[0][0]);
  if (int(rows.size()) != n + 1)
    throw config_error(path + ": expected " + std::to_string(n) + " matrix rows, got " +
                       std::to_string(rows.size() - 1));
  Eigen::MatrixXd d(n, n);
  for (int i = 0; i < n; ++i) {
    if (int(rows[i + 1].size()) != n)
      throw config_error(path + ": row " + std::to_string(i) + " has " +
                         std::to_string(rows[i + 1].size()) + " entries, expected " +
                         std::to_string(n));
    for (int j = 0; j < n; ++j) d(i, j) = rows[i + 1][j];
  }
  return from_matrix(d);
}

Metric Metric::from_coords(const Eigen::MatrixXd& coords) {
  Metric m;
  m.n_ = int(coords.rows());
  m.coords_ = coords;
  m.dist_.resize(m.n_, m.n_);
  for (int i = 0; i < m.n_; ++i) {
    m.dist_(i, i) = 0.0;
    for (int j = i + 1; j < m.n_; ++j) {
      double d = (coords.row(i) - coords.row(j)).norm();
      m.dist_(i, j) = d;
      m.dist_(j, i) = d;
    }
  }
  return m;
}

Metric Metric::from_matrix(const Eigen::MatrixXd& dist) {
  if (dist.rows() != dist.cols()) throw config_error("distance matrix is not square");
  Metric m;
  m.n_ = int(dist.rows());
  m.dist_ = dist;
  m.validate();
  return m;
}

void Metric::validate() const {
  // Symmetry / diagonal / entry sanity. Reported pairs use point ids.
  double worst_asym = 0.0;
  int wa = -1, wb = -1;
  for (int i = 0; i < n_; ++i) {
    if (dist_(i, i) != 0.0)
      throw config_error("matrix diagonal entry " + std::to_string(i) + " is nonzero");
    for (int j = i + 1; j < n_; ++j) {
      double a = dist_(i, j), b = dist_(j, i);
      if (!std::isfinite(a) || !std::isfinite(b))
        throw config_error("matrix entry (" + std::to_string(i) + "," + std::to_string(j) +
                           ") is not finite");
      if (a < 0 || b < 0)
        throw config_error("matrix entry (" + std::to_string(i) + "," + std::to_string(j) +
                           ") is negative");
      double gap = std::abs(a - b);
      double tol = kRelTol * std::max(1.0, std::max(std::abs(a), std::abs(b)));
      if (gap > tol && gap > worst_asym) {
        worst_asym = gap;
        wa = i;
        wb = j;
      }
    }
  }
  if (wa >= 0)
    throw config_error("matrix is asymmetric, worst pair (" + std::to_string(wa) + "," +
                       std::to_string(wb) + ") differs by " + std::to_string(worst_asym));

  // Triangle inequality: exhaustive up to n=64, otherwise at least 10n
  // deterministic random triples.
  auto check = [&](int a, int b, int c) {
    double lhs = dist_(a, c);
    double rhs = dist_(a, b) + dist_(b, c);
    if (lhs > rhs + kRelTol * std::max(1.0, rhs))
      throw config_error("triangle inequality violated on (" + std::to_string(a) + "," +
                         std::to_string(b) + "," + std::to_string(c) + ")");
  };
  if (n_ <= 64) {
    for (int a = 0; a < n_; ++a)
      for (int b = 0; b < n_; ++b)
        for (int c = 0; c < n_; ++c) check(a, b, c);
  } else {
    Rng rng(0x7a51);
    for (int t = 0; t < 10 * n_; ++t)
      check(int(rng.below(n_)), int(rng.below(n_)), int(rng.below(n_)));
  }
}

double Metric::min_distance() const {
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j) best = std::min(best, dist_(i, j));
  return best;
}

Metric Metric::normalized() const {
  if (n_ < 2) {
    Metric m = *this;
    m.scale_ = 1.0;
    return m;
  }
  double mind = min_distance();
  if (mind <= 0.0) throw config_error("duplicate points: minimum inter-point distance is 0");
  Metric m = *this;
  m.dist_ /= mind;
  if (m.coords_.size() > 0) m.coords_ /= mind;
  m.scale_ = mind;
  double check = m.min_distance();
  if (std::abs(check - 1.0) > 1e-12)
    throw construction_error("normalization failed: min distance " + std::to_string(check));
  return m;
}

double Metric::diameter() const {
  double best = 0.0;
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j) best = std::max(best, dist_(i, j));
  return best;
}

double Metric::mst_weight() const {
  if (n_ < 2) return 0.0;
  // Prim over the dense matrix.
  std::vector<double> key(n_, std::numeric_limits<double>::infinity());
  std::vector<char> in(n_, 0);
  key[0] = 0.0;
  double total = 0.0;
  for (int it = 0; it < n_; ++it) {
    int u = -1;
    for (int v = 0; v < n_; ++v)
      if (!in[v] && (u < 0 || key[v] < key[u])) u = v;
    in[u] = 1;
    total += key[u];
    for (int v = 0; v < n_; ++v)
      if (!in[v]) key[v] = std::min(key[v], dist_(u, v));
  }
  return total;
}

}  // namespace ftspan
