#pragma once
#include <Eigen/Dense>
#include <string>

#include "ftspan/common.hpp"

namespace ftspan {

// Finite metric over point ids 0..n-1. Euclidean instances keep their
// coordinates (n x d); matrix instances are the distances themselves. In both
// cases the full distance matrix is materialized once, so all construction
// code works off O(1) lookups. Instances at this scale stay well under a few
// thousand points, which keeps the matrix cheap.
class Metric {
 public:
  // One point per line, whitespace- or comma-separated reals; blank lines and
  // '#' comments ignored. All rows must share a dimension.
  static Metric from_points_file(const std::string& path);
  // First line n, then n rows of n reals. Symmetry, zero diagonal and the
  // triangle inequality (sampled for large n) are validated here.
  static Metric from_matrix_file(const std::string& path);
  static Metric from_coords(const Eigen::MatrixXd& coords);
  static Metric from_matrix(const Eigen::MatrixXd& dist);

  int size() const { return n_; }
  double operator()(int a, int b) const { return dist_(a, b); }

  bool has_coords() const { return coords_.size() > 0; }
  const Eigen::MatrixXd& coords() const { return coords_; }
  const Eigen::MatrixXd& matrix() const { return dist_; }

  // Rescales so the minimum inter-point distance equals 1 (within 1e-12).
  // scale() on the result reports the divisor used, so downstream output can
  // be mapped back to input units. Duplicate points are an error; n < 2 is
  // returned unchanged with scale 1.
  Metric normalized() const;
  double scale() const { return scale_; }

  double min_distance() const;  // +inf for n < 2
  double diameter() const;      // 0 for n < 2
  double mst_weight() const;    // dense Prim; 0 for n < 2

 private:
  Metric() = default;
  void validate() const;

  int n_ = 0;
  double scale_ = 1.0;
  Eigen::MatrixXd coords_;  // empty for matrix instances
  Eigen::MatrixXd dist_;
};

}  // namespace ftspan
