#pragma once
#include <cstdint>

#include "ftspan/metric.hpp"

namespace ftspan {

// Deterministic instance families used by tests, benchmarks and the CLI.
// All of them return raw metrics; construction normalizes on its own.

Metric gen_uniform_square(int n, std::uint64_t seed);

// Widely separated cluster hierarchy: tight jittered patches at unit spacing,
// patch groups `step` apart, groups-of-groups step^2 apart, and so on. Gives
// instances with many distinct distance scales.
Metric gen_clustered_2d(int n, std::uint64_t seed, double step = 15625.0);

Metric gen_line(int n);  // 0,1,2,...,n-1 on a line — the densest 1-D pattern

// x_i = base^i. Every gap lives on its own scale, so the hierarchy gets one
// busy level per point. Throws config_error once coordinates would leave the
// comfortable double range (~1e250).
Metric gen_exp_line(int n, double base = 5.0);

// Pairwise distances drawn uniformly from [1,2]: a legal metric (triangle
// slack is built in) with no geometry behind it.
Metric gen_matrix_band(int n, std::uint64_t seed);

}  // namespace ftspan
