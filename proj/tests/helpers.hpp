#pragma once
// Small conveniences shared by the test files.

#include <Eigen/Dense>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "ftspan/metric.hpp"

namespace helpers {

inline ftspan::Metric line_metric(const std::vector<double>& xs) {
  Eigen::MatrixXd c(int(xs.size()), 1);
  for (int i = 0; i < int(xs.size()); ++i) c(i, 0) = xs[i];
  return ftspan::Metric::from_coords(c);
}

inline std::string tmp_path(const std::string& name) {
  std::filesystem::create_directories(FTSPAN_TEST_TMP);
  return std::string(FTSPAN_TEST_TMP) + "/" + name;
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace helpers
